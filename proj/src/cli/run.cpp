#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "eisl/acceptance.hpp"
#include "eisl/cli.hpp"
#include "eisl/congruence_lattice.hpp"
#include "eisl/count_cache.hpp"
#include "eisl/csv.hpp"
#include "eisl/eisenstein_gl2.hpp"
#include "eisl/error.hpp"
#include "eisl/haar_rank1.hpp"
#include "eisl/json_schema.hpp"
#include "eisl/optimal_lifting.hpp"
#include "eisl/profile_io.hpp"

namespace eisl::cli {

extern const char* const kVerifyReportSchema;

namespace {

using io::CsvWriter;
using io::format_double;
using nlohmann::json;

struct Session {
    ExperimentConfig cfg;
    std::ostream& out;
    std::unique_ptr<lattice::CountCache> cache;

    lattice::EnumerationOptions enumeration() const {
        lattice::EnumerationOptions eo;
        eo.workers = cfg.workers;
        return eo;
    }
    lattice::CountCache* cache_ptr() { return cache.get(); }
};

std::string one_line(std::string s) {
    for (char& ch : s)
        if (ch == '\n' || ch == '\r') ch = ' ';
    return s;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::parse:
        case ErrorKind::domain:
        case ErrorKind::ill_conditioned: return 2;
        case ErrorKind::budget_exceeded:
        case ErrorKind::memory_cap: return 3;
        case ErrorKind::tolerance:
        case ErrorKind::round_trip:
        case ErrorKind::calibration:
        case ErrorKind::non_convergence: return 4;
        default: return 1;
    }
}

void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::parse, what);
}

std::vector<lattice::CongruenceLevel> levels(const std::vector<std::int64_t>& qs) {
    std::vector<lattice::CongruenceLevel> out;
    for (const auto q : qs) out.push_back(lattice::CongruenceLevel::of(q));
    return out;
}

std::vector<double> default_drs_window(int n) {
    return n == 2 ? std::vector<double>{50, 75, 100, 150, 200, 300} : std::vector<double>{4, 5, 6, 8, 10, 12};
}

double fitted_cn(Session& s) {
    if (s.cfg.cn > 0.0) return s.cfg.cn;
    return lattice::drs_fit(s.cfg.n, default_drs_window(s.cfg.n), s.enumeration(), s.cache_ptr()).c_n;
}

// Writes `csv` to cfg.out (when set) and a manifest next to it.
void emit(Session& s, const std::string& csv) {
    if (s.cfg.out.empty()) return;
    {
        std::ofstream f(s.cfg.out, std::ios::binary | std::ios::trunc);
        f << csv;
        if (!f) fail(ErrorKind::io, "cannot write " + s.cfg.out);
    }
    if (s.cache && s.cache->dirty()) s.cache->save(s.cfg.cache);
    json manifest;
    manifest["tool"] = "eisl";
    manifest["config"] = to_json(s.cfg);
    manifest["output"] = {{"path", s.cfg.out}, {"git_sha1", git_blob_sha1(csv)}};
    if (!s.cfg.cache.empty() && std::ifstream(s.cfg.cache).good())
        manifest["cache"] = {{"path", s.cfg.cache}, {"git_sha1", git_blob_sha1_file(s.cfg.cache)}};
    else
        manifest["cache"] = nullptr;
    std::ofstream m(s.cfg.out + ".manifest.json", std::ios::binary | std::ios::trunc);
    m << manifest.dump(2) << '\n';
    if (!m) fail(ErrorKind::io, "cannot write manifest for " + s.cfg.out);
}

int cmd_gl2_norm(Session& s) {
    const auto& c = s.cfg;
    require(!c.t.empty() && !c.T.empty(), "gl2-norm needs --t and --T");
    std::ostringstream csv;
    CsvWriter w(csv, {"t", "T", "closed_form", "oracle", "ratio", "oracle_coarse", "relative_difference"});
    for (const double t : c.t)
        for (const double T : c.T) {
            const double closed = gl2::maass_selberg_norm({t}, {T});
            double oracle = std::nan(""), coarse = std::nan("");
            if (!c.closed_only) {
                gl2::QuadratureSpec spec;
                spec.nx = c.nx;
                spec.ny = c.ny;
                spec.workers = c.workers;
                const auto o = gl2::l2_norm_oracle({t}, {T}, spec);
                oracle = o.value;
                coarse = o.coarse_value;
            }
            const double rel = std::abs(closed - oracle) / std::abs(closed);
            s.out << "t " << format_double(t) << " T " << format_double(T) << " closed_form " << format_double(closed);
            if (!c.closed_only) s.out << " oracle " << format_double(oracle) << " relative_difference " << format_double(rel);
            s.out << '\n';
            const double ratio = closed / (T * std::log(2.0 + t));
            w.cell(t).cell(T).cell(closed).cell(oracle).cell(ratio).cell(coarse).cell(rel).end_row();
        }
    emit(s, csv.str());
    return 0;
}

int cmd_gl2_scan(Session& s) {
    const auto& c = s.cfg;
    require(c.T.size() == 1, "gl2-scan needs a single --T");
    require(c.steps >= 1, "gl2-scan needs --steps >= 1");
    const auto scan = gl2::growth_scan(c.t_min, c.t_max, c.steps, {c.T[0]}, c.workers);
    std::ostringstream csv;
    CsvWriter w(csv, {"t", "T", "closed_form", "oracle", "ratio"});
    for (const auto& row : scan.rows)
        w.cell(row.t).cell(c.T[0]).cell(row.norm).cell(std::nan("")).cell(row.ratio).end_row();
    s.out << "rows " << scan.rows.size() << " sup_ratio " << format_double(scan.sup_ratio) << '\n';
    emit(s, csv.str());
    return 0;
}

void count_rows(Session& s, const std::vector<lattice::CountRecord>& rows, double max_ratio, bool show_max) {
    std::ostringstream csv;
    CsvWriter w(csv, {"n", "q", "R", "count", "main_term", "sx_bound", "ratio_sx"});
    for (const auto& r : rows) {
        w.cell(r.n).cell(r.q).cell(r.R).cell(r.count).cell(r.main_term).cell(r.sx_bound).cell(r.ratio_sx).end_row();
        s.out << "n " << r.n << " q " << r.q << " R " << format_double(r.R) << " count " << r.count << " ratio_sx "
              << format_double(r.ratio_sx) << '\n';
    }
    if (show_max) s.out << "max_ratio_sx " << format_double(max_ratio) << '\n';
    emit(s, csv.str());
}

int cmd_count(Session& s) {
    const auto& c = s.cfg;
    require(!c.R.empty(), "count needs --R");
    const std::vector<std::int64_t> qs = c.q.empty() ? std::vector<std::int64_t>{1} : c.q;
    const double cn = fitted_cn(s);
    const auto scan = lattice::sarnak_xue_scan(c.n, levels(qs), c.R, cn, s.enumeration(), s.cache_ptr());
    count_rows(s, scan.rows, scan.max_ratio, false);
    return 0;
}

int cmd_sx_scan(Session& s) {
    const auto& c = s.cfg;
    const std::vector<std::int64_t> qs = c.q.empty() ? std::vector<std::int64_t>{2, 3, 5, 7} : c.q;
    const std::vector<double> Rs = c.R.empty() ? std::vector<double>{10, 30, 100} : c.R;
    const double cn = fitted_cn(s);
    const auto scan = lattice::sarnak_xue_scan(c.n, levels(qs), Rs, cn, s.enumeration(), s.cache_ptr());
    count_rows(s, scan.rows, scan.max_ratio, true);
    return 0;
}

int cmd_drs_fit(Session& s) {
    const auto& c = s.cfg;
    const std::vector<double> Rs = c.R.empty() ? default_drs_window(c.n) : c.R;
    const auto fit = lattice::drs_fit(c.n, Rs, s.enumeration(), s.cache_ptr());
    std::ostringstream csv;
    CsvWriter w(csv, {"n", "R", "count", "residual"});
    for (std::size_t i = 0; i < Rs.size(); ++i)
        w.cell(c.n).cell(fit.radii[i]).cell(fit.counts[i]).cell(fit.residuals[i]).end_row();
    s.out << "c_n " << format_double(fit.c_n) << " exponent " << format_double(fit.exponent) << " free_constant "
          << format_double(fit.free_constant) << '\n';
    emit(s, csv.str());
    return 0;
}

lifting::LiftingOptions lifting_options(const Session& s) {
    lifting::LiftingOptions lo;
    lo.enumeration = s.enumeration();
    return lo;
}

void coverage_rows(Session& s, const std::vector<lifting::CoverageRecord>& rows) {
    std::ostringstream csv;
    CsvWriter w(csv, {"n", "q", "R", "covered", "total", "uncovered_fraction"});
    for (const auto& r : rows) {
        w.cell(r.n).cell(r.q).cell(r.R).cell(r.covered).cell(r.total).cell(r.uncovered_fraction).end_row();
        s.out << "n " << r.n << " q " << r.q << " R " << format_double(r.R) << " covered " << r.covered << " / "
              << r.total << " uncovered_fraction " << format_double(r.uncovered_fraction) << '\n';
    }
    emit(s, csv.str());
}

int cmd_lift(Session& s) {
    const auto& c = s.cfg;
    require(!c.q.empty() && !c.R.empty(), "lift needs --q and --R");
    std::vector<lifting::CoverageRecord> rows;
    for (const auto& q : levels(c.q))
        for (const double R : c.R) rows.push_back(lifting::coverage(c.n, q, R, lifting_options(s)));
    coverage_rows(s, rows);
    return 0;
}

int cmd_lift_scan(Session& s) {
    const auto& c = s.cfg;
    const std::vector<std::int64_t> qs = c.q.empty() ? std::vector<std::int64_t>{5, 7, 11, 13} : c.q;
    const auto scan = lifting::lifting_exponent_scan(c.n, levels(qs), c.epsilon, lifting_options(s));
    s.out << "decay_exponent " << format_double(scan.decay_exponent) << " fitted_points " << scan.fitted_points << '\n';
    coverage_rows(s, scan.rows);
    return 0;
}

std::string entries_text(const lattice::IntegerMatrix& g) {
    std::string text;
    for (const auto e : g.values()) text += (text.empty() ? "" : " ") + std::to_string(e);
    return text;
}

int cmd_minlift(Session& s) {
    const auto& c = s.cfg;
    require(c.q.size() == 1 && c.R.size() == 1, "minlift needs one --q and one --R");
    const auto q = lattice::CongruenceLevel::of(c.q[0]);
    std::ostringstream csv;
    if (c.all_residues) {
        const auto table = lifting::minimal_lift_table(c.n, q, c.R[0], lifting_options(s));
        const double bound = std::pow(static_cast<double>(q.q), 1.0 + 1.0 / c.n + c.epsilon);
        std::int64_t within = 0;
        CsvWriter w(csv, {"n", "q", "norm_sq", "entries"});
        for (const auto& g : table.lifts) {
            if (g.norm() <= bound) ++within;
            w.cell(c.n).cell(q.q).cell(g.norm_sq).cell(entries_text(g)).end_row();
        }
        s.out << "residues " << table.total << " lifted " << table.lifts.size() << " within_bound " << within
              << " bound " << format_double(bound) << " fraction_within "
              << format_double(static_cast<double>(within) / static_cast<double>(table.total)) << '\n';
        emit(s, csv.str());
        return 0;
    }
    require(c.residue.size() == static_cast<std::size_t>(c.n * c.n), "minlift needs --residue with n^2 entries");
    const auto r = lifting::ResidueClass::of(lattice::IntegerMatrix::from_entries(c.n, c.residue), q.q);
    const auto lift = lifting::minimal_lift(c.n, q, r, c.R[0], lifting_options(s));
    CsvWriter w(csv, {"n", "q", "R_max", "found", "norm_sq", "entries"});
    if (lift) {
        s.out << "lift " << entries_text(*lift) << " norm " << format_double(lift->norm()) << '\n';
        w.cell(c.n).cell(q.q).cell(c.R[0]).cell("true").cell(lift->norm_sq).cell(entries_text(*lift)).end_row();
    } else {
        s.out << "not-found\n";
        w.cell(c.n).cell(q.q).cell(c.R[0]).cell("false").cell(std::int64_t{-1}).cell("").end_row();
    }
    emit(s, csv.str());
    return 0;
}

haar::MonteCarloOptions mc_options(const Session& s, std::uint64_t offset) {
    return {s.cfg.samples, s.cfg.seed + offset, s.cfg.workers};
}

int cmd_haar_vol(Session& s) {
    const auto& c = s.cfg;
    const std::vector<double> Rs = c.R.empty() ? std::vector<double>{10, 20, 40, 80} : c.R;
    std::ostringstream csv;
    CsvWriter w(csv, {"R", "volume", "stderr", "quadrature", "exact"});
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < Rs.size(); ++i) {
        const auto mc = haar::haar_ball_volume(Rs[i], mc_options(s, i));
        const double quad = haar::ball_volume_quadrature(Rs[i]);
        w.cell(Rs[i]).cell(mc.value).cell(mc.stderr_).cell(quad).cell(haar::ball_volume_exact(Rs[i])).end_row();
        s.out << "R " << format_double(Rs[i]) << " volume " << format_double(mc.value) << " stderr "
              << format_double(mc.stderr_) << " quadrature " << format_double(quad) << '\n';
        if (mc.value > 0) {
            xs.push_back(std::log(Rs[i]));
            ys.push_back(std::log(mc.value));
        }
    }
    if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i] / static_cast<double>(xs.size());
            my += ys[i] / static_cast<double>(xs.size());
        }
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        s.out << "slope " << format_double(sxy / sxx) << '\n';
    }
    emit(s, csv.str());
    return 0;
}

int cmd_conv_lower(Session& s) {
    const auto& c = s.cfg;
    const std::vector<double> Rs = c.R.empty() ? std::vector<double>{10, 20, 40} : c.R;
    double cc = c.c;
    if (cc <= 0.0 && c.norms.empty()) {
        cc = haar::calibrate_conv_constant(Rs, {0.1, 0.05, 0.02, 0.01}).c;
        s.out << "calibrated_c " << format_double(cc) << '\n';
    }
    std::ostringstream csv;
    CsvWriter w(csv, {"R", "norm", "r", "overlap", "stderr", "radial"});
    std::uint64_t offset = 0;
    for (const double R : Rs) {
        std::vector<haar::CartanCoordinate> points;
        if (c.norms.empty())
            points = haar::conv_test_points(cc, R, 10);
        else
            for (const double nrm : c.norms) points.push_back(haar::CartanCoordinate::from_norm(nrm));
        double kappa = INFINITY;
        for (const auto& g : points) {
            const auto mc = haar::ball_conv_lower(g, R, mc_options(s, offset++));
            const double radial = haar::ball_overlap_radial(g, R);
            kappa = std::min(kappa, mc.value);
            w.cell(R).cell(g.norm()).cell(g.r).cell(mc.value).cell(mc.stderr_).cell(radial).end_row();
        }
        s.out << "R " << format_double(R) << " kappa " << format_double(kappa) << '\n';
    }
    emit(s, csv.str());
    return 0;
}

haar::EuclideanProfile shape_profile(const ExperimentConfig& c) {
    if (!c.load_profile.empty()) return io::read_profile(c.load_profile);
    const double b = c.support;
    if (c.shape == "gauss-cos") {
        // Gaussian window with sigma = b/8, so the profile is below 1e-13 beyond b.
        const double sigma = b / 8.0;
        return haar::sample_profile([=](double a) { return std::exp(-a * a / (2 * sigma * sigma)) * std::cos(2.0 * a); },
                                    c.step, 1.25 * b, b);
    }
    if (c.shape == "bump")
        return haar::sample_profile(
            [=](double a) {
                const double u = a / b;
                return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
            },
            c.step, 1.25 * b, b);
    if (c.shape == "radial-bump") return haar::abel_transform(haar::radial_bump(b, 0), {c.step, 1.25}).profile;
    fail(ErrorKind::parse, "unknown --shape '" + c.shape + "' (gauss-cos, bump, radial-bump)");
}

int cmd_abel_roundtrip(Session& s) {
    const auto& c = s.cfg;
    require(c.step > 0 && c.support > 0, "abel-roundtrip needs positive --step and --support");
    const haar::EuclideanProfile f = shape_profile(c);
    if (!c.save_profile.empty()) io::write_profile(c.save_profile, f);
    haar::AbelInverseOptions opts;
    opts.verify_round_trip = false;
    const auto inv = haar::abel_inverse(f, opts);
    haar::AbelGrid grid;
    grid.step = f.step;
    grid.grid_factor = f.half_width() / std::max(f.support, f.step);
    const auto back = haar::abel_transform(inv.radial.profile(), grid);
    std::ostringstream csv;
    CsvWriter w(csv, {"alpha", "profile", "round_trip", "inverse"});
    double err = 0.0;
    const std::size_t m = f.half();
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double rt = back.profile.samples[i];
        err = std::max(err, std::abs(rt - f.samples[i]));
        const std::size_t j = i >= m ? i - m : m - i;
        w.cell(f.alpha(i)).cell(f.samples[i]).cell(rt).cell(inv.radial.samples[j]).end_row();
    }
    s.out << "samples " << f.samples.size() << " support " << format_double(f.support) << " sup_error "
          << format_double(err) << " outside_mass " << format_double(back.outside_mass) << '\n';
    emit(s, csv.str());
    if (err > 1e-4) fail(ErrorKind::round_trip, "Abel round-trip error " + format_double(err) + " exceeds 1e-4");
    return 0;
}

int cmd_testfn(Session& s) {
    const auto& c = s.cfg;
    const auto tf = haar::test_function_build({c.delta, c.mu0, c.C0});
    const auto nn = haar::nonnegativity_check(tf, 200, 50.0);
    const auto loc = haar::localization_check(tf);
    const auto pw = haar::paley_wiener_decay(tf, tf.spec().C0);
    const auto pw_full = haar::paley_wiener_decay(tf, 0.0);
    const auto gr = haar::paley_wiener_growth(tf);
    s.out << "delta " << format_double(tf.spec().delta) << " mu0 " << format_double(c.mu0) << " C0 "
          << format_double(c.C0) << '\n'
          << "nonnegativity_min " << format_double(nn.min_value) << '\n'
          << "localization_min " << format_double(loc.min_value) << '\n'
          << "decay_N " << format_double(pw.exponent) << " decay_N_full_ray " << format_double(pw_full.exponent) << '\n'
          << "growth_b " << format_double(gr.exponent) << " two_delta " << format_double(2 * tf.spec().delta) << '\n';
    std::ostringstream csv;
    CsvWriter w(csv, {"mu_re", "mu_im", "h_re", "h_im"});
    for (int i = 0; i < 201; ++i) {
        const haar::Complex mu(0.0, c.mu0 - 50.0 + 0.5 * i);
        const haar::Complex v = tf(mu);
        w.cell(mu.real()).cell(mu.imag()).cell(v.real()).cell(v.imag()).end_row();
    }
    emit(s, csv.str());
    return 0;
}

int cmd_verify(Session& s, std::ostream& err) {
    const auto& c = s.cfg;
    require(c.profile == "quick" || c.profile == "full", "--profile must be quick or full");
    acceptance::Options opts;
    opts.profile = c.profile == "full" ? acceptance::Profile::full : acceptance::Profile::quick;
    opts.workers = c.workers;
    opts.seed = c.seed;
    opts.cache = s.cache_ptr();
    opts.progress = [&](const acceptance::CriterionResult& r) { s.out << acceptance::format_line(r) << std::endl; };
    const auto results = acceptance::run(opts);
    json report;
    report["profile"] = c.profile;
    report["criteria"] = json::array();
    const acceptance::CriterionResult* first = nullptr;
    for (const auto& r : results) {
        json j;
        j["id"] = r.id;
        j["name"] = r.name;
        j["passed"] = r.passed;
        j["measured"] = std::isfinite(r.measured) ? json(r.measured) : json(nullptr);
        j["threshold"] = r.threshold;
        j["detail"] = r.detail;
        j["seconds"] = r.seconds;
        report["criteria"].push_back(j);
        if (!r.passed && !first) first = &r;
    }
    report["passed"] = first == nullptr;
    report["first_failure"] = first ? json(first->id) : json(nullptr);
    const auto problems = validate_schema(json::parse(kVerifyReportSchema), report);
    if (!problems.empty()) fail(ErrorKind::io, "verify report does not match its schema: " + problems.front());
    if (!c.out.empty()) {
        std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
        f << report.dump(2) << '\n';
        if (!f) fail(ErrorKind::io, "cannot write " + c.out);
    }
    if (s.cache && s.cache->dirty()) s.cache->save(c.cache);
    if (first) {
        err << "error: tolerance: criterion " << first->id << " (" << first->name << ") failed: "
            << one_line(first->detail) << '\n';
        return 4;
    }
    return 0;
}

struct Parsed {
    ExperimentConfig cfg;
    bool dump_config = false;
    bool help = false;
    std::string help_text;
};

Parsed parse(const std::vector<std::string>& args) {
    Parsed p;
    ExperimentConfig& cfg = p.cfg;
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") config_path = args[i + 1];
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) fail(ErrorKind::parse, "cannot open config " + config_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            fail(ErrorKind::parse, std::string("config is not valid JSON: ") + e.what());
        }
        cfg = config_from_json(j);
    }
    const std::string from_file = cfg.subcommand;

    CLI::App app{"Numerical experiments for truncated Eisenstein series, lattice counting and rank-one harmonic analysis",
                 "eisl"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--out", cfg.out, "Output path (CSV, or JSON for verify)");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
    app.add_option("--cache", cfg.cache, "Ball-count cache file");
    app.add_option("--config", config_path, "JSON config with the same keys as --dump-config");
    app.add_flag("--dump-config", p.dump_config, "Print the effective config as JSON and exit");

    auto list = [](CLI::App* sub, const std::string& name, auto& target, const std::string& help) {
        sub->add_option(name, target, help)->delimiter(',')->expected(1, -1);
    };

    auto* gl2_norm = app.add_subcommand("gl2-norm", "Maass-Selberg closed form and quadrature oracle of ||Lambda^T E||^2");
    list(gl2_norm, "--t", cfg.t, "Spectral parameters t");
    list(gl2_norm, "--T", cfg.T, "Truncation parameters T (height e^T)");
    gl2_norm->add_option("--nx", cfg.nx, "Oracle nodes in x (>= 200)");
    gl2_norm->add_option("--ny", cfg.ny, "Oracle nodes in log y (>= 200)");
    gl2_norm->add_flag("--closed-only", cfg.closed_only, "Skip the quadrature oracle");

    auto* gl2_scan = app.add_subcommand("gl2-scan", "Growth ratio ||Lambda^T E||^2 / (T log(2+t)) over a t grid");
    gl2_scan->add_option("--t-min", cfg.t_min);
    gl2_scan->add_option("--t-max", cfg.t_max);
    gl2_scan->add_option("--steps", cfg.steps, "Number of grid points");
    list(gl2_scan, "--T", cfg.T, "Truncation parameter");

    auto* count = app.add_subcommand("count", "Count Gamma(q) elements in norm balls");
    auto* sx = app.add_subcommand("sx-scan", "Counts against the Sarnak-Xue bound");
    for (auto* sub : {count, sx}) {
        sub->add_option("--n", cfg.n, "Dimension (2 or 3)");
        list(sub, "--q", cfg.q, "Square-free levels");
        list(sub, "--R", cfg.R, "Radii");
        sub->add_option("--cn", cfg.cn, "Ball constant for main_term (default: fitted)");
    }
    auto* drs = app.add_subcommand("drs-fit", "Fit the q = 1 ball counts to c R^{n(n-1)}");
    drs->add_option("--n", cfg.n);
    list(drs, "--R", cfg.R, "Radii (at least 4)");

    auto* lift = app.add_subcommand("lift", "Residues mod q reached by the norm ball");
    lift->add_option("--n", cfg.n);
    list(lift, "--q", cfg.q, "Square-free levels");
    list(lift, "--R", cfg.R, "Radii");
    auto* lift_scan = app.add_subcommand("lift-scan", "Coverage at R = q^{1+1/n+epsilon}");
    lift_scan->add_option("--n", cfg.n);
    list(lift_scan, "--q", cfg.q, "Square-free levels");
    lift_scan->add_option("--epsilon", cfg.epsilon);
    auto* minlift = app.add_subcommand("minlift", "Minimal-norm lift of a residue class");
    minlift->add_option("--n", cfg.n);
    list(minlift, "--q", cfg.q, "Level");
    list(minlift, "--R", cfg.R, "Search radius");
    list(minlift, "--residue", cfg.residue, "Residue entries, row-major");
    minlift->add_flag("--all", cfg.all_residues, "Minimal lifts of every residue in one pass");
    minlift->add_option("--epsilon", cfg.epsilon, "Exponent slack for the --all bound");

    auto* haar_vol = app.add_subcommand("haar-vol", "Haar volume of norm balls in SL_2(R)");
    list(haar_vol, "--R", cfg.R, "Radii");
    haar_vol->add_option("--samples", cfg.samples);
    auto* conv = app.add_subcommand("conv-lower", "vol(B_R cap g B_R^{-1}) lower bound");
    list(conv, "--R", cfg.R, "Radii");
    list(conv, "--norm", cfg.norms, "Test norms ||g|| (default: 10 points up to c R^2)");
    conv->add_option("--c", cfg.c, "Constant c (default: calibrated)");
    conv->add_option("--samples", cfg.samples);
    auto* abel = app.add_subcommand("abel-roundtrip", "Abel transform inversion round trip");
    abel->add_option("--shape", cfg.shape, "gauss-cos, bump or radial-bump");
    abel->add_option("--step", cfg.step);
    abel->add_option("--support", cfg.support);
    abel->add_option("--save-profile", cfg.save_profile, "Write the input profile (binary)");
    abel->add_option("--load-profile", cfg.load_profile, "Read the input profile (binary)");
    auto* testfn = app.add_subcommand("testfn", "Build and check the localized test function");
    testfn->add_option("--mu0", cfg.mu0, "Imaginary part of mu0");
    testfn->add_option("--delta", cfg.delta, "Starting delta");
    testfn->add_option("--C0", cfg.C0);
    auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
    verify->add_option("--profile", cfg.profile, "quick or full");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        p.help = true;
        p.help_text = app.help();
        return p;
    } catch (const CLI::ParseError& e) {
        fail(ErrorKind::parse, e.what());
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!from_file.empty() && from_file != cfg.subcommand)
        fail(ErrorKind::parse, "config is for '" + from_file + "', command line asks for '" + cfg.subcommand + "'");
    return p;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        Parsed p = parse(args);
        if (p.help) {
            out << p.help_text;
            return 0;
        }
        if (p.dump_config) {
            out << to_json(p.cfg).dump(2) << '\n';
            return 0;
        }
        Session s{p.cfg, out, nullptr};
        if (!s.cfg.cache.empty()) s.cache = std::make_unique<lattice::CountCache>(lattice::CountCache::load(s.cfg.cache));
        const std::string& sub = s.cfg.subcommand;
        int code = 0;
        if (sub == "gl2-norm") code = cmd_gl2_norm(s);
        else if (sub == "gl2-scan") code = cmd_gl2_scan(s);
        else if (sub == "count") code = cmd_count(s);
        else if (sub == "sx-scan") code = cmd_sx_scan(s);
        else if (sub == "drs-fit") code = cmd_drs_fit(s);
        else if (sub == "lift") code = cmd_lift(s);
        else if (sub == "lift-scan") code = cmd_lift_scan(s);
        else if (sub == "minlift") code = cmd_minlift(s);
        else if (sub == "haar-vol") code = cmd_haar_vol(s);
        else if (sub == "conv-lower") code = cmd_conv_lower(s);
        else if (sub == "abel-roundtrip") code = cmd_abel_roundtrip(s);
        else if (sub == "testfn") code = cmd_testfn(s);
        else if (sub == "verify") code = cmd_verify(s, err);
        if (code == 0 && s.cache && s.cache->dirty()) s.cache->save(s.cfg.cache);
        return code;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << one_line(e.what()) << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: internal: " << one_line(e.what()) << '\n';
        return 1;
    }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace eisl::cli

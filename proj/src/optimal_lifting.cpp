#include "eisl/optimal_lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "eisl/error.hpp"
#include "eisl/parallel.hpp"

namespace eisl::lifting {

namespace {

using Key = unsigned __int128;

struct KeyHash {
    std::size_t operator()(Key k) const noexcept {
        const auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x7F4A7C159E3779B9ull + (lo << 6) + (lo >> 2));
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
    }
};

Key residue_key(const IntegerMatrix& g, std::int64_t q) {
    Key key = 0;
    for (int k = 0; k < g.n * g.n; ++k) {
        std::int64_t v = g.entries[static_cast<std::size_t>(k)] % q;
        if (v < 0) v += q;
        key = key * static_cast<Key>(q) + static_cast<Key>(v);
    }
    return key;
}

// Lifts later in the lexicographic stream win ties.
bool better(const IntegerMatrix& cand, const std::optional<IntegerMatrix>& best) {
    if (!best) return true;
    if (cand.norm_sq != best->norm_sq) return cand.norm_sq < best->norm_sq;
    return best->entries < cand.entries;
}

}  // namespace

ResidueClass ResidueClass::of(const IntegerMatrix& m, std::int64_t q) {
    if (q < 1) fail(ErrorKind::domain, "level must be positive");
    ResidueClass r;
    r.n = m.n;
    r.q = q;
    r.entries = lattice::reduce_mod(m, q);
    std::int64_t det = r.entries.determinant() % q;
    if (det < 0) det += q;
    if (det != 1 % q) fail(ErrorKind::domain, "residue class has det != 1 mod " + std::to_string(q));
    return r;
}

CoverageRecord coverage(int n, const CongruenceLevel& q, double R, const LiftingOptions& opts) {
    const std::int64_t total = lattice::sl_count_mod(n, q);
    if (total > opts.memory_cap)
        fail(ErrorKind::memory_cap, "|SL_" + std::to_string(n) + "(Z/" + std::to_string(q.q) + ")| = " +
                                        std::to_string(total) + " exceeds the memory cap");
    const unsigned workers = opts.enumeration.workers == 0 ? default_workers() : opts.enumeration.workers;
    std::vector<std::unordered_set<Key, KeyHash>> sets(workers);
    lattice::EnumerationOptions eopts = opts.enumeration;
    eopts.workers = workers;
    lattice::ball_enumerate_parallel(
        n, R, [&](unsigned w, const IntegerMatrix& g) { sets[w].insert(residue_key(g, q.q)); }, eopts);
    for (std::size_t w = 1; w < sets.size(); ++w) sets[0].merge(sets[w]);
    CoverageRecord rec;
    rec.n = n;
    rec.q = q.q;
    rec.R = R;
    rec.covered = static_cast<std::int64_t>(sets[0].size());
    rec.total = total;
    rec.uncovered_fraction = 1.0 - static_cast<double>(rec.covered) / static_cast<double>(total);
    return rec;
}

LiftingScan lifting_exponent_scan(int n, const std::vector<CongruenceLevel>& qs, double epsilon,
                                  const LiftingOptions& opts) {
    LiftingScan scan;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& q : qs) {
        const double R = std::pow(static_cast<double>(q.q), 1.0 + 1.0 / n + epsilon);
        scan.rows.push_back(coverage(n, q, R, opts));
        const double f = scan.rows.back().uncovered_fraction;
        if (f > 0.0 && q.q > 1) {
            const double lx = std::log(static_cast<double>(q.q)), ly = std::log(f);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++scan.fitted_points;
        }
    }
    const double m = static_cast<double>(scan.fitted_points);
    scan.decay_exponent = scan.fitted_points >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
                                                  : std::numeric_limits<double>::quiet_NaN();
    return scan;
}

std::optional<IntegerMatrix> minimal_lift(int n, const CongruenceLevel& q, const ResidueClass& r, double R_max,
                                          const LiftingOptions& opts) {
    if (r.n != n || r.q != q.q) fail(ErrorKind::domain, "residue class does not match (n, q)");
    std::optional<IntegerMatrix> best;
    lattice::enumerate_congruent(
        n, R_max, q.q, r.entries,
        [&](const IntegerMatrix& g) {
            if (better(g, best)) best = g;
        },
        opts.enumeration);
    return best;
}

MinimalLiftTable minimal_lift_table(int n, const CongruenceLevel& q, double R_max, const LiftingOptions& opts) {
    MinimalLiftTable table;
    table.n = n;
    table.q = q.q;
    table.R_max = R_max;
    table.total = lattice::sl_count_mod(n, q);
    if (table.total > opts.memory_cap) fail(ErrorKind::memory_cap, "residue table exceeds the memory cap");
    const unsigned workers = opts.enumeration.workers == 0 ? default_workers() : opts.enumeration.workers;
    std::vector<std::unordered_map<Key, IntegerMatrix, KeyHash>> best(workers);
    lattice::EnumerationOptions eopts = opts.enumeration;
    eopts.workers = workers;
    lattice::ball_enumerate_parallel(
        n, R_max,
        [&](unsigned w, const IntegerMatrix& g) {
            auto [it, inserted] = best[w].try_emplace(residue_key(g, q.q), g);
            if (!inserted && better(g, it->second)) it->second = g;
        },
        eopts);
    for (std::size_t w = 1; w < best.size(); ++w)
        for (auto& [key, g] : best[w]) {
            auto [it, inserted] = best[0].try_emplace(key, g);
            if (!inserted && better(g, it->second)) it->second = g;
        }
    std::vector<std::pair<Key, IntegerMatrix>> sorted(best[0].begin(), best[0].end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, g] : sorted) table.lifts.push_back(g);
    return table;
}

double full_coverage_radius(int n, const CongruenceLevel& q, double lo, double hi, double tolerance,
                            const LiftingOptions& opts) {
    auto full = [&](double R) { return coverage(n, q, R, opts).uncovered_fraction == 0.0; };
    if (!full(hi)) fail(ErrorKind::domain, "coverage is not full at the upper radius");
    if (full(lo)) return lo;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (full(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace eisl::lifting

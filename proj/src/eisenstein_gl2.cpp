#include "eisl/eisenstein_gl2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "eisl/error.hpp"
#include "eisl/parallel.hpp"
#include "eisl/simd/kernels.hpp"
#include "eisl/special_functions.hpp"

namespace eisl::gl2 {
namespace {

using std::numbers::pi;

// Lattice terms with pi Q(v) above this are below e^{-46} ~ 1e-20.
constexpr double kThetaCut = 46.0;

double bound_scaled_gamma(double sigma, double x) {
    // |G(a, x)| <= int_1^inf e^{-xu} u^{sigma-1} du <= e^{-x} / (x - max(sigma-1, 0))
    return std::exp(-x) / (x - std::max(sigma - 1.0, 0.0));
}

}  // namespace

double TruncationHeight::height() const { return std::exp(T); }

UpperHalfPlanePoint apply(const Sl2Element& g, UpperHalfPlanePoint z) {
    const Complex w{z.x, z.y};
    const Complex r = (static_cast<double>(g.a) * w + static_cast<double>(g.b)) /
                      (static_cast<double>(g.c) * w + static_cast<double>(g.d));
    return {r.real(), r.imag()};
}

Reduction reduce_to_fundamental_domain(UpperHalfPlanePoint z) {
    if (!(z.y > 0.0)) fail(ErrorKind::domain, "point is not in the upper half plane");
    Sl2Element g;  // accumulated: g * original = z
    for (int iter = 0; iter < 10000; ++iter) {
        const double shift = std::round(z.x);
        if (shift != 0.0) {
            z.x -= shift;
            const auto k = static_cast<std::int64_t>(shift);
            // [[1,-k],[0,1]] * g
            g = {g.a - k * g.c, g.b - k * g.d, g.c, g.d};
        }
        const double r2 = z.x * z.x + z.y * z.y;
        if (r2 >= 1.0) return {z, g};
        z = {-z.x / r2, z.y / r2};
        // [[0,-1],[1,0]] * g
        g = {-g.c, -g.d, g.a, g.b};
    }
    fail(ErrorKind::non_convergence, "fundamental-domain reduction did not terminate");
}

bool in_fundamental_domain(UpperHalfPlanePoint z, double tol) {
    return z.y > 0.0 && std::abs(z.x) <= 0.5 + tol && z.x * z.x + z.y * z.y >= 1.0 - tol;
}

EisensteinEvaluator::EisensteinEvaluator(Complex s)
    : s_(s),
      log_gamma_s_(special::log_gamma(s)),
      log_gamma_1ms_(special::log_gamma(1.0 - s)),
      two_xi_2s_(2.0 * special::completed_zeta(2.0 * s)),
      phi_(special::completed_zeta(2.0 * s - 1.0) / special::completed_zeta(2.0 * s)),
      critical_line_(s.real() == 0.5) {}

Complex EisensteinEvaluator::constant_term(double y) const {
    return std::exp(s_ * std::log(y)) + phi_ * std::exp((1.0 - s_) * std::log(y));
}

Complex EisensteinEvaluator::term(double q) const {
    const double arg = pi * q;
    const Complex g = special::scaled_upper_gamma(s_, arg, log_gamma_s_);
    if (critical_line_) return 2.0 * g.real();
    return g + special::scaled_upper_gamma(1.0 - s_, arg, log_gamma_1ms_);
}

Complex EisensteinEvaluator::zero_row(double y, int cutoff) const {
    Complex sum = 0.0;
    for (int n = 1; n <= cutoff; ++n) {
        const double q = static_cast<double>(n) * n / y;
        if (pi * q > kThetaCut) break;
        sum += term(q);
    }
    return sum;
}

Complex EisensteinEvaluator::lattice_sum(UpperHalfPlanePoint z, int cutoff, double* tail, const Complex* row) const {
    const double x = z.x;
    const double y = z.y;
    const double c = static_cast<double>(cutoff);
    // Half lattice: (0, n) with n >= 1, and (m, n) with m >= 1.
    Complex half_sum = row ? *row : zero_row(y, cutoff);
    bool clipped = pi * (c + 1.0) * (c + 1.0) / y <= kThetaCut;

    const double radius2 = kThetaCut * y / pi;  // (mx+n)^2 + m^2 y^2 <= radius2
    for (int m = 1;; ++m) {
        const double my = m * y;
        const double rem = radius2 - my * my;
        if (rem < 0.0) break;
        if (m > cutoff) {
            clipped = true;
            break;
        }
        const double center = -m * x;
        const double r = std::sqrt(rem);
        auto lo = static_cast<long>(std::ceil(center - r));
        auto hi = static_cast<long>(std::floor(center + r));
        if (lo < -cutoff) { lo = -cutoff; clipped = true; }
        if (hi > cutoff) { hi = cutoff; clipped = true; }
        for (long n = lo; n <= hi; ++n) {
            const double u = m * x + static_cast<double>(n);
            half_sum += term((u * u + my * my) / y);
        }
    }

    if (tail) {
        const double sigma = std::max(s_.real(), 1.0 - s_.real());
        // The ellipse {pi Q <= X} has area X, so about one lattice point per unit of X.
        double bound = 2.0 * 2.0 * bound_scaled_gamma(sigma, kThetaCut);
        if (clipped) {
            // Smallest eigenvalue of the form's Gram matrix bounds Q(v) below by lambda |v|^2.
            const double tr = (x * x + y * y + 1.0) / y;
            const double lambda = 0.5 * (tr - std::sqrt(std::max(tr * tr - 4.0, 0.0)));
            const double arg = pi * lambda * c * c;
            bound += 2.0 * 2.0 * pi * c * bound_scaled_gamma(sigma, arg) / std::max(pi * lambda, 1e-300);
        }
        *tail = bound;
    }
    return 2.0 * half_sum - 1.0 / s_ - 1.0 / (1.0 - s_);
}

Complex EisensteinEvaluator::evaluate_with_row(UpperHalfPlanePoint z, Complex row, int cutoff) const {
    return lattice_sum(z, cutoff, nullptr, &row) / two_xi_2s_;
}

EisensteinValue EisensteinEvaluator::evaluate(UpperHalfPlanePoint z, int cutoff) const {
    if (cutoff < 2) fail(ErrorKind::domain, "Eisenstein cutoff must be at least 2");
    const UpperHalfPlanePoint w = reduce_to_fundamental_domain(z).point;
    double tail = 0.0;
    const Complex full = lattice_sum(w, cutoff, &tail);
    const Complex half = lattice_sum(w, cutoff / 2, nullptr);
    return {full / two_xi_2s_, half / two_xi_2s_, tail / std::abs(two_xi_2s_)};
}

EisensteinValue eisenstein_value(UpperHalfPlanePoint z, SpectralParameter t, int cutoff) {
    const EisensteinEvaluator eval(Complex{0.5, t.t});
    EisensteinValue v = eval.evaluate(z, cutoff);
    if (std::abs(v.value - v.half_cutoff_value) > 1e-4)
        fail(ErrorKind::non_convergence, "Eisenstein partial sums at cutoff and cutoff/2 disagree");
    return v;
}

Complex eisenstein_direct_sum(UpperHalfPlanePoint z, Complex s, int cutoff) {
    if (!(s.real() > 1.0)) fail(ErrorKind::domain, "direct coprime sum requires Re s > 1");
    const Complex w{z.x, z.y};
    const Complex ys = std::exp(s * std::log(z.y));
    // Sum over c >= 1 (both signs of d) plus (0, 1); the 1/2 cancels the +- pairing.
    Complex sum = 1.0;
    for (int c = 1; c <= cutoff; ++c) {
        for (int d = -cutoff; d <= cutoff; ++d) {
            if (std::gcd(c, d) != 1) continue;
            const double a2 = std::norm(static_cast<double>(c) * w + static_cast<double>(d));
            sum += std::exp(-s * std::log(a2));
        }
    }
    return ys * sum;
}

Complex truncated_eisenstein(UpperHalfPlanePoint z, SpectralParameter t, TruncationHeight T, int cutoff) {
    if (!in_fundamental_domain(z, 1e-9)) fail(ErrorKind::domain, "truncated Eisenstein needs a fundamental-domain point");
    const EisensteinEvaluator eval(Complex{0.5, t.t});
    Complex value = eisenstein_value(z, t, cutoff).value;
    if (z.y > T.height()) value -= eval.constant_term(z.y);
    return value;
}

Complex constant_term_quadrature(double y, SpectralParameter t, int nodes) {
    if (nodes < 2) fail(ErrorKind::domain, "constant term quadrature needs at least 2 nodes");
    const EisensteinEvaluator eval(Complex{0.5, t.t});
    Complex sum = 0.0;
    for (int j = 0; j < nodes; ++j) sum += eval.evaluate({static_cast<double>(j) / nodes, y}).value;
    return sum / static_cast<double>(nodes);
}

ConstantTermFit fit_constant_term(SpectralParameter t, const std::vector<double>& heights, int nodes) {
    if (heights.size() < 2) fail(ErrorKind::ill_conditioned, "constant-term fit needs at least two heights");
    // f(y) = CT(y) / sqrt(y) = A y^{it} + c y^{-it}; normal equations for (A, c).
    Complex m11 = 0.0, m12 = 0.0, m22 = 0.0, r1 = 0.0, r2 = 0.0;
    std::vector<Complex> f(heights.size()), b1(heights.size()), b2(heights.size());
    for (std::size_t k = 0; k < heights.size(); ++k) {
        const double y = heights[k];
        b1[k] = std::exp(Complex{0.0, t.t * std::log(y)});
        b2[k] = std::conj(b1[k]);
        f[k] = constant_term_quadrature(y, t, nodes) / std::sqrt(y);
        m11 += std::norm(b1[k]);
        m12 += std::conj(b1[k]) * b2[k];
        m22 += std::norm(b2[k]);
        r1 += std::conj(b1[k]) * f[k];
        r2 += std::conj(b2[k]) * f[k];
    }
    const Complex m21 = std::conj(m12);
    const Complex det = m11 * m22 - m12 * m21;
    if (std::abs(det) < 1e-12 * std::abs(m11 * m22))
        fail(ErrorKind::ill_conditioned, "constant-term fit heights do not separate y^{it} and y^{-it}");
    ConstantTermFit fit;
    fit.leading = (r1 * m22 - m12 * r2) / det;
    fit.scattering = (m11 * r2 - m21 * r1) / det;
    for (std::size_t k = 0; k < heights.size(); ++k) {
        const double misfit = std::abs(f[k] - fit.leading * b1[k] - fit.scattering * b2[k]) * std::sqrt(heights[k]);
        fit.residual = std::max(fit.residual, misfit);
    }
    return fit;
}

double maass_selberg_norm(SpectralParameter t, TruncationHeight T) {
    if (t.t == 0.0) fail(ErrorKind::pole, "Maass-Selberg norm undefined at t = 0");
    const Complex phi = special::scattering(t.t).value;
    const double log_deriv = special::scattering_log_deriv(t.t);
    const Complex w = phi * std::exp(Complex{0.0, -2.0 * t.t * T.T});
    return 2.0 * T.T - log_deriv - w.imag() / t.t;
}

namespace {

// Integral over the half domain x in [0, 1/2] (times two) with nx/2 columns.
double oracle_level(const EisensteinEvaluator& eval, double T, double top, int nx, int ny, unsigned workers) {
    const double height = std::exp(T);
    const int columns = nx / 2;
    const double dx = 1.0 / nx;
    // Upper-segment heights are shared by every column.
    const double du_top = (std::log(top) - T) / ny;
    const std::vector<Complex> top_rows = parallel_map<Complex>(static_cast<std::size_t>(ny), workers, [&](std::size_t k) {
        return eval.zero_row(std::exp(T + (static_cast<double>(k) + 0.5) * du_top));
    });
    const std::vector<double> column_sums = parallel_map<double>(
        static_cast<std::size_t>(columns), workers, [&](std::size_t i) {
            const double x = (static_cast<double>(i) + 0.5) * dx;
            const double u0 = 0.5 * std::log1p(-x * x);  // log of the arc height
            const double u1 = T;
            const double u2 = std::log(top);
            std::vector<double> re(2 * ny), im(2 * ny), w(2 * ny);
            auto fill = [&](int offset, double a, double b, bool upper) {
                const double du = (b - a) / ny;
                for (int k = 0; k < ny; ++k) {
                    const double u = a + (k + 0.5) * du;
                    const double y = std::exp(u);
                    Complex v = upper ? eval.evaluate_with_row({x, y}, top_rows[k]) : eval.evaluate({x, y}).value;
                    if (upper && y > height) v -= eval.constant_term(y);
                    re[offset + k] = v.real();
                    im[offset + k] = v.imag();
                    w[offset + k] = du / y;  // dy / y^2 = du / y
                }
            };
            fill(0, u0, u1, false);
            fill(ny, u1, u2, true);
            return simd::weighted_abs2_sum(re, im, w);
        });
    double total = 0.0;
    for (double s : column_sums) total += s;
    return 2.0 * dx * total;
}

}  // namespace

OracleResult l2_norm_oracle(SpectralParameter t, TruncationHeight T, const QuadratureSpec& spec) {
    if (t.t == 0.0) fail(ErrorKind::pole, "L2 oracle undefined at t = 0");
    if (spec.nx < 200 || spec.ny < 200 || spec.nx % 2 != 0)
        fail(ErrorKind::domain, "quadrature grid must be at least 200 x 200 with even nx");
    if (!(T.T > 0.0)) fail(ErrorKind::domain, "truncation parameter must be positive");
    const EisensteinEvaluator eval(Complex{0.5, t.t});
    OracleResult r;
    r.top_height = std::max(10.0 * std::exp(T.T), 50.0);
    r.coarse_value = oracle_level(eval, T.T, r.top_height, spec.nx, spec.ny, spec.workers);
    r.value = oracle_level(eval, T.T, r.top_height, 2 * spec.nx, 2 * spec.ny, spec.workers);
    r.error_estimate = std::abs(r.value - r.coarse_value);
    if (r.error_estimate > spec.max_relative_refinement * std::abs(r.value))
        fail(ErrorKind::non_convergence, "L2 oracle refinement levels disagree by " +
                                             std::to_string(r.error_estimate / std::abs(r.value)));
    return r;
}

GrowthScan growth_scan(double t_min, double t_max, int steps, TruncationHeight T, unsigned workers) {
    if (steps < 1) fail(ErrorKind::domain, "growth scan needs at least one step");
    if (!(t_min >= 1.0 && t_max <= 200.0 && (t_min < t_max || steps == 1)))
        fail(ErrorKind::domain, "growth scan requires 1 <= t_min < t_max <= 200");
    GrowthScan scan;
    scan.rows = parallel_map<GrowthRow>(static_cast<std::size_t>(steps), workers, [&](std::size_t k) {
        const double t = steps == 1 ? t_min : t_min + (t_max - t_min) * static_cast<double>(k) / (steps - 1);
        GrowthRow row;
        row.t = t;
        row.norm = maass_selberg_norm({t}, T);
        row.ratio = row.norm / (T.T * std::log(2.0 + t));
        return row;
    });
    for (const auto& row : scan.rows) scan.sup_ratio = std::max(scan.sup_ratio, row.ratio);
    return scan;
}

}  // namespace eisl::gl2

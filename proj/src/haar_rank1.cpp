#include "eisl/haar_rank1.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "eisl/error.hpp"
#include "eisl/parallel.hpp"

namespace eisl::haar {

namespace {

constexpr double kPi = std::numbers::pi;

using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;

template <class F>
double integrate_ts(F&& f, double a, double b, double tol = 1e-13) {
    if (!(b > a)) return 0.0;
    static thread_local tanh_sinh<double> ts(12);
    return ts.integrate(f, a, b, tol);
}

// Adaptive depth is capped: the integrands are smooth, and near-zero
// integrals would otherwise chase a relative tolerance down to full depth.
template <class F>
double integrate_gk(F&& f, double a, double b, double tol = 1e-13, unsigned max_depth = 6) {
    if (!(b > a)) return 0.0;
    return gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol);
}

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// cosh(2 r) of the ball boundary.
double boundary_cosh(double R) { return 0.5 * R * R; }

std::array<double, 4> cartan_matrix(double r, double t1, double t2) {
    const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2), s2 = std::sin(t2);
    const double a = std::exp(r), ai = std::exp(-r);
    // k(t1) diag(a, 1/a) k(t2), k(t) = [[c, -s], [s, c]]
    const double m00 = c1 * a, m01 = -s1 * ai, m10 = s1 * a, m11 = c1 * ai;
    return {m00 * c2 + m01 * s2, -m00 * s2 + m01 * c2, m10 * c2 + m11 * s2, -m10 * s2 + m11 * c2};
}

double frob_sq(const std::array<double, 4>& m) { return m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]; }

// Radius r distributed with density proportional to sinh(2r) on [0, r_max].
double sample_radius(double u, double cosh_max) { return 0.5 * std::acosh(1.0 + u * (cosh_max - 1.0)); }

template <class Hit>
MonteCarloEstimate monte_carlo(const MonteCarloOptions& opts, double cosh_max, double reference_volume, Hit&& hit) {
    if (opts.samples == 0) fail(ErrorKind::domain, "Monte Carlo needs at least one sample");
    const unsigned workers = std::max(1u, opts.workers == 0 ? default_workers() : opts.workers);
    std::vector<std::uint64_t> hits(workers, 0);
    parallel_for_strided(workers, workers, [&](unsigned, std::size_t w) {
        const std::uint64_t share = opts.samples / workers + (w < opts.samples % workers ? 1 : 0);
        std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                          static_cast<std::uint32_t>(w), 0x45495351u};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0), angle(0.0, 2.0 * kPi);
        std::uint64_t local = 0;
        for (std::uint64_t i = 0; i < share; ++i) {
            const double r = sample_radius(unit(rng), cosh_max);
            const double t1 = angle(rng), t2 = angle(rng);
            if (hit(cartan_matrix(r, t1, t2))) ++local;
        }
        hits[w] = local;
    });
    std::uint64_t total = 0;
    for (const auto h : hits) total += h;
    const double p = static_cast<double>(total) / static_cast<double>(opts.samples);
    MonteCarloEstimate est;
    est.samples = opts.samples;
    est.value = reference_volume * p;
    est.stderr_ = reference_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(opts.samples));
    return est;
}

// Fraction of K-angles theta with sin^2 theta <= m.
double angle_fraction(double m) {
    if (m <= 0.0) return 0.0;
    if (m >= 1.0) return 1.0;
    return 2.0 / kPi * std::asin(std::sqrt(m));
}

// Even cosine interpolant of samples f_j at x_j = (j - M) step, j = 0..2M.
class CosineSeries {
public:
    CosineSeries(const std::vector<double>& samples, double step) {
        const std::size_t n = samples.size();
        const std::size_t m = (n - 1) / 2;
        omega_ = 2.0 * kPi / (static_cast<double>(n) * step);
        coef_.assign(m + 1, 0.0);
        for (std::size_t k = 0; k <= m; ++k) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double x = (static_cast<double>(j) - static_cast<double>(m)) * step;
                acc += samples[j] * std::cos(omega_ * static_cast<double>(k) * x);
            }
            coef_[k] = (k == 0 ? 1.0 : 2.0) * acc / static_cast<double>(n);
        }
    }

    // derivative order 0, 1 or 2
    double eval(double x, int order = 0) const {
        // cos(k w x), sin(k w x) by rotation
        const double c1 = std::cos(omega_ * x), s1 = std::sin(omega_ * x);
        double ck = 1.0, sk = 0.0, acc = 0.0;
        for (std::size_t k = 0; k < coef_.size(); ++k) {
            const double wk = omega_ * static_cast<double>(k);
            if (order == 0)
                acc += coef_[k] * ck;
            else if (order == 1)
                acc -= coef_[k] * wk * sk;
            else
                acc -= coef_[k] * wk * wk * ck;
            const double cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
        }
        return acc;
    }

private:
    double omega_ = 0.0;
    std::vector<double> coef_;
};

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

Complex fourier_even_bump(Complex z, double norm) {
    // int_{-1}^{1} w(x) cosh(z x) dx / norm, w the standard bump
    if (std::abs(z.real()) > 700.0) fail(ErrorKind::domain, "bump transform overflows at |Re z| > 700");
    auto part = [&](bool imag) {
        return 2.0 * integrate_ts(
                         [&](double x) {
                             if (x >= 1.0) return 0.0;
                             // bump(x) cosh(zx) with the exponents combined, so large z cannot give inf * 0
                             const double w = -1.0 / (1.0 - x * x);
                             const Complex c = 0.5 * (std::exp(w + z * x) + std::exp(w - z * x));
                             return imag ? c.imag() : c.real();
                         },
                         0.0, 1.0, 1e-14);
    };
    return Complex(part(false), part(true)) / norm;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys, double* intercept) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (intercept) *intercept = (sy - slope * sx) / n;
    return slope;
}

}  // namespace

CartanCoordinate CartanCoordinate::from_norm(double norm) {
    if (!(norm >= std::sqrt(2.0) * (1.0 - 1e-15)))
        fail(ErrorKind::domain, "SL_2(R) elements have norm >= sqrt 2, got " + std::to_string(norm));
    return {0.5 * std::acosh(std::max(1.0, 0.5 * norm * norm))};
}

double CartanCoordinate::norm() const { return std::sqrt(2.0 * std::cosh(2.0 * r)); }

double ball_volume_exact(double R) { return R * R <= 2.0 ? 0.0 : 0.5 * (boundary_cosh(R) - 1.0); }

double ball_volume_quadrature(double R) {
    if (R * R <= 2.0) return 0.0;
    const double r_max = 0.5 * std::acosh(boundary_cosh(R));
    return integrate_gk([](double r) { return std::sinh(2.0 * r); }, 0.0, r_max);
}

MonteCarloEstimate haar_ball_volume(double R, const MonteCarloOptions& opts) {
    if (R * R <= 2.0) return {0.0, 0.0, opts.samples};
    const double R_ref = 2.0 * R;
    const double cosh_ref = boundary_cosh(R_ref);
    const double R2 = R * R;
    return monte_carlo(opts, cosh_ref, ball_volume_exact(R_ref),
                       [&](const std::array<double, 4>& g) { return frob_sq(g) <= R2; });
}

MonteCarloEstimate ball_conv_lower(CartanCoordinate g, double R, const MonteCarloOptions& opts) {
    if (!(g.r >= 0.0) || !std::isfinite(std::cosh(2.0 * g.r)))
        fail(ErrorKind::domain, "Cartan coordinate must be finite and nonnegative");
    if (R * R <= 2.0) return {0.0, 0.0, opts.samples};
    const double R2 = R * R;
    const double ei = std::exp(-g.r), e = std::exp(g.r);
    return monte_carlo(opts, boundary_cosh(R), ball_volume_exact(R), [&](const std::array<double, 4>& h) {
        // g^{-1} h with g^{-1} = diag(e^{-r}, e^{r})
        const std::array<double, 4> p{ei * h[0], ei * h[1], e * h[2], e * h[3]};
        return frob_sq(h) <= R2 && frob_sq(p) <= R2;
    });
}

double ball_overlap_radial(CartanCoordinate g, double R) {
    if (R * R <= 2.0) return 0.0;
    const double half = boundary_cosh(R);
    const double s_max = 0.5 * std::acosh(half);
    const double r = g.r;
    // ||g^{-1} k_t a_s||^2 = 2 cos^2 t cosh 2(r - s) + 2 sin^2 t cosh 2(r + s)
    auto integrand = [&](double s) {
        const double lo = std::cosh(2.0 * (r - s)), hi = std::cosh(2.0 * (r + s));
        const double m = hi > lo ? (half - lo) / (hi - lo) : (half >= lo ? 1.0 : 0.0);
        return std::sinh(2.0 * s) * angle_fraction(m);
    };
    std::vector<double> cuts{0.0, s_max};
    for (const double c : {r - s_max, s_max - r})
        if (c > 0.0 && c < s_max) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate_ts(integrand, cuts[i], cuts[i + 1], 1e-12);
    return total;
}

std::vector<CartanCoordinate> conv_test_points(double c, double R, int count) {
    const double lo = std::sqrt(2.0), hi = c * R * R;
    if (hi < lo) fail(ErrorKind::domain, "c R^2 is below sqrt 2");
    std::vector<CartanCoordinate> out;
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
        out.push_back(CartanCoordinate::from_norm(lo + t * (hi - lo)));
    }
    return out;
}

ConvCalibration calibrate_conv_constant(const std::vector<double>& radii, const std::vector<double>& candidates,
                                        double max_spread, int points) {
    std::vector<double> sorted = candidates;
    std::sort(sorted.rbegin(), sorted.rend());
    for (const double c : sorted) {
        ConvCalibration cal;
        cal.c = c;
        cal.radii = radii;
        bool ok = true;
        for (const double R : radii) {
            if (c * R * R < std::sqrt(2.0)) {
                ok = false;
                break;
            }
            double kappa = std::numeric_limits<double>::infinity();
            for (const auto& g : conv_test_points(c, R, points)) kappa = std::min(kappa, ball_overlap_radial(g, R));
            cal.kappa.push_back(kappa);
        }
        if (!ok) continue;
        const auto [mn, mx] = std::minmax_element(cal.kappa.begin(), cal.kappa.end());
        if (!(*mn > 0.0)) continue;
        cal.spread = *mx / *mn;
        if (cal.spread <= max_spread) return cal;
    }
    fail(ErrorKind::calibration, "no candidate c gives a uniform convolution lower bound");
}

SphericalValue spherical_fn_checked(Complex mu, double r) {
    if (std::abs(mu.real()) > 2.0) fail(ErrorKind::domain, "spherical_fn needs |Re mu| <= 2");
    if (!(r >= 0.0 && r <= 20.0)) fail(ErrorKind::domain, "spherical_fn needs 0 <= r <= 20");
    const Complex power = 0.5 + mu;
    const double v_lo = -2.0 * r - 40.0, v_hi = 40.0;
    auto rule = [&](int nodes) {
        const double h = (v_hi - v_lo) / nodes;
        Complex acc = 0.0;
        for (int k = 0; k <= nodes; ++k) {
            const double v = v_lo + k * h;
            const double log_base = 2.0 * r + softplus(2.0 * v) - softplus(4.0 * r + 2.0 * v);
            const Complex term = std::exp(power * log_base + (v - softplus(2.0 * v)));
            acc += (k == 0 || k == nodes ? 0.5 : 1.0) * term;
        }
        return acc * h * (2.0 / kPi);
    };
    // Inside the transition window the integrand oscillates like e^{-2 i Im(mu) v};
    // the base count of 256 grows so the step stays well below that period.
    const double span = v_hi - v_lo;
    const int base = std::max(256, static_cast<int>(std::ceil(span * (2.0 * std::abs(mu.imag()) + 24.0) / (2.0 * kPi))));
    const Complex coarse = rule(base), fine = rule(2 * base);
    return {fine, std::abs(fine - coarse)};
}

Complex spherical_fn(Complex mu, double r) {
    const SphericalValue v = spherical_fn_checked(mu, r);
    if (v.refinement_delta > 1e-8)
        fail(ErrorKind::non_convergence, "spherical function quadrature not converged (delta " +
                                             std::to_string(v.refinement_delta) + ")");
    return v.value;
}

bool EuclideanProfile::symmetric(double tol) const {
    double scale = 0.0;
    for (const double s : samples) scale = std::max(scale, std::abs(s));
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (std::abs(samples[i] - samples[samples.size() - 1 - i]) > tol * std::max(scale, 1e-300)) return false;
    return samples.size() % 2 == 1;
}

RadialProfile SampledRadial::profile() const {
    if (samples.empty()) return {support, [](double) { return 0.0; }};
    std::vector<double> mirrored(2 * samples.size() - 1);
    const std::size_t m = samples.size() - 1;
    for (std::size_t j = 0; j <= m; ++j) mirrored[m + j] = mirrored[m - j] = samples[j];
    auto series = std::make_shared<CosineSeries>(mirrored, step);
    const double b = support;
    return {support, [series, b](double d) { return d >= b ? 0.0 : series->eval(d); }};
}

AbelTransformResult abel_transform(const RadialProfile& h, const AbelGrid& grid) {
    if (!(grid.step > 0.0) || !(h.support >= 0.0)) fail(ErrorKind::domain, "bad Abel grid or support");
    const double b = h.support;
    const auto m = static_cast<std::size_t>(std::ceil(grid.grid_factor * std::max(b, grid.step) / grid.step));
    AbelTransformResult out;
    out.profile.step = grid.step;
    out.profile.support = b;
    out.profile.samples.assign(2 * m + 1, 0.0);
    const double cosh_b = std::cosh(b);
    for (std::size_t j = 0; j <= m; ++j) {
        const double alpha = static_cast<double>(j) * grid.step;
        const double ca = std::cosh(alpha);
        double value = 0.0;
        if (ca < cosh_b) {
            const double s_max = std::sqrt(cosh_b - ca);
            value = 2.0 * std::numbers::sqrt2 *
                    integrate_ts([&](double s) { return h.h(std::acosh(ca + s * s)); }, 0.0, s_max, 1e-12);
        }
        out.profile.samples[m + j] = out.profile.samples[m - j] = value;
        if (alpha > b) out.outside_mass += 2.0 * grid.step * std::abs(value);
    }
    out.support_violation = out.outside_mass > 1e-8;
    return out;
}

AbelInverseResult abel_inverse(const EuclideanProfile& f, const AbelInverseOptions& opts) {
    if (f.samples.size() % 2 != 1 || !(f.step > 0.0)) fail(ErrorKind::domain, "profile grid must be odd and positive");
    if (!f.symmetric(1e-12)) fail(ErrorKind::domain, "Abel inversion needs an even profile");
    if (f.support > f.half_width() + 1e-12) fail(ErrorKind::domain, "profile support exceeds its grid");
    const CosineSeries series(f.samples, f.step);
    const double g2_zero = series.eval(0.0, 2);
    auto dF = [&](double v) {
        const double alpha = std::acosh(std::max(v, 1.0));
        if (alpha < 1e-6) return g2_zero;
        return series.eval(alpha, 1) / std::sinh(alpha);
    };
    const std::size_t m = f.half();
    AbelInverseResult out;
    out.radial.step = f.step;
    out.radial.support = f.support;
    out.radial.samples.assign(m + 1, 0.0);
    const double cosh_b = std::cosh(f.support);
    for (std::size_t j = 0; j <= m; ++j) {
        const double d = static_cast<double>(j) * f.step;
        const double cd = std::cosh(d);
        if (cd >= cosh_b) continue;
        const double s_max = std::sqrt(cosh_b - cd);
        out.radial.samples[j] =
            -std::numbers::sqrt2 / kPi * integrate_gk([&](double s) { return dF(cd + s * s); }, 0.0, s_max, 1e-12);
    }
    if (opts.verify_round_trip) {
        AbelGrid grid;
        grid.step = f.step;
        grid.grid_factor = f.half_width() / std::max(f.support, f.step);
        const AbelTransformResult back = abel_transform(out.radial.profile(), grid);
        const std::size_t n = std::min(back.profile.samples.size(), f.samples.size());
        const std::size_t off_a = (back.profile.samples.size() - n) / 2, off_b = (f.samples.size() - n) / 2;
        for (std::size_t i = 0; i < n; ++i)
            out.round_trip_error =
                std::max(out.round_trip_error, std::abs(back.profile.samples[off_a + i] - f.samples[off_b + i]));
        if (out.round_trip_error > opts.tolerance)
            fail(ErrorKind::round_trip, "Abel round-trip error " + std::to_string(out.round_trip_error) +
                                            " exceeds " + std::to_string(opts.tolerance));
    }
    return out;
}

Complex euclidean_fourier(const EuclideanProfile& f, Complex mu) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double w = (i == 0 || i + 1 == f.samples.size()) ? 0.5 : 1.0;
        acc += w * f.samples[i] * std::exp(mu * f.alpha(i));
    }
    return acc * f.step;
}

Complex spherical_transform(const RadialProfile& h, Complex mu) {
    auto part = [&](bool imag) {
        return integrate_ts(
            [&](double d) {
                const double hv = h.h(d);
                if (hv == 0.0) return 0.0;
                const Complex eta = spherical_fn(mu, 0.5 * d);
                return hv * (imag ? eta.imag() : eta.real()) * std::sinh(d);
            },
            0.0, h.support, 1e-12);
    };
    return 2.0 * kPi * Complex(part(false), part(true));
}

RadialProfile radial_bump(double support, int variant) {
    if (!(support > 0.0)) fail(ErrorKind::domain, "bump support must be positive");
    const double denom = std::cosh(support) - 1.0;
    return {support, [=](double d) {
                const double u = (std::cosh(d) - 1.0) / denom;
                if (u >= 1.0) return 0.0;
                switch (variant) {
                    case 0: return bump(u);
                    case 1: return bump(u) * (1.0 + u);
                    default: return bump(u) * bump(u) * std::cos(u);
                }
            }};
}

EuclideanProfile sample_profile(const std::function<double(double)>& f, double step, double half_width,
                                double support) {
    EuclideanProfile p;
    p.step = step;
    p.support = support;
    const auto m = static_cast<std::size_t>(std::ceil(half_width / step - 1e-9));
    p.samples.assign(2 * m + 1, 0.0);
    for (std::size_t j = 0; j <= m; ++j) p.samples[m + j] = p.samples[m - j] = f(static_cast<double>(j) * step);
    return p;
}

TestFunction::TestFunction(const TestFunctionSpec& spec) : spec_(spec) {
    if (!(spec.delta > 0.0)) fail(ErrorKind::domain, "delta must be positive");
    norm_ = 2.0 * integrate_ts([](double x) { return bump(x); }, 0.0, 1.0, 1e-15);
}

Complex TestFunction::f_delta_hat(Complex mu) const { return fourier_even_bump(mu * (0.5 * spec_.delta), norm_); }

Complex TestFunction::operator()(Complex mu) const {
    const Complex mu0(0.0, spec_.mu0);
    auto f0 = [&](Complex z) {
        const Complex v = f_delta_hat(z);
        return v * v;
    };
    auto F = [&](Complex z) { return f0(z - mu0) + f0(z + mu0); };
    return F(mu) * std::conj(F(-std::conj(mu)));
}

LocalizationCheck localization_check(const TestFunction& tf) {
    LocalizationCheck out{std::numeric_limits<double>::infinity(), 0.0};
    const Complex mu0(0.0, tf.spec().mu0);
    for (int k = 1; k <= 10; ++k)
        for (int a = 0; a < 10; ++a) {
            const double rad = tf.spec().C0 * k / 10.0, th = 2.0 * kPi * a / 10.0;
            const Complex v = tf(mu0 + std::polar(rad, th));
            out.min_value = std::min(out.min_value, v.real());
            out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
        }
    return out;
}

TestFunction test_function_build(const TestFunctionSpec& spec) {
    std::vector<double> tried;
    for (double delta = spec.delta; delta >= 1e-3; delta *= 0.5) {
        TestFunctionSpec s = spec;
        s.delta = delta;
        TestFunction tf(s);
        tried.push_back(delta);
        if (localization_check(tf).min_value >= 0.1) {
            tf.tried = tried;
            return tf;
        }
    }
    fail(ErrorKind::calibration, "no delta >= 1e-3 satisfies the localization bound");
}

NonnegativityCheck nonnegativity_check(const TestFunction& tf, int points, double extent) {
    NonnegativityCheck out{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < points; ++i) {
        const double y = tf.spec().mu0 - extent + 2.0 * extent * i / (points - 1);
        const Complex v = tf(Complex(0.0, y));
        out.min_value = std::min(out.min_value, v.real());
        out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
    }
    return out;
}

DecayFit paley_wiener_decay(const TestFunction& tf, double rho_min, double length, int points) {
    std::vector<double> rho(static_cast<std::size_t>(points)), mag(rho.size());
    for (int i = 0; i < points; ++i) {
        rho[static_cast<std::size_t>(i)] = length * i / (points - 1);
        mag[static_cast<std::size_t>(i)] = std::abs(tf(Complex(0.0, tf.spec().mu0 + rho[static_cast<std::size_t>(i)])));
    }
    for (int i = points - 2; i >= 0; --i)
        mag[static_cast<std::size_t>(i)] = std::max(mag[static_cast<std::size_t>(i)], mag[static_cast<std::size_t>(i + 1)]);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (mag[i] > 0.0 && rho[i] >= rho_min) {
            xs.push_back(std::log1p(rho[i]));
            ys.push_back(std::log(mag[i]));
        }
    DecayFit fit;
    fit.points = xs.size();
    if (xs.size() < 2) fail(ErrorKind::ill_conditioned, "decay ray has no usable points");
    fit.exponent = -fit_slope(xs, ys, &fit.constant);
    return fit;
}

DecayFit paley_wiener_growth(const TestFunction& tf, double x_min, double x_max, int points) {
    std::vector<double> xs, ys;
    for (int i = 0; i < points; ++i) {
        const double x = x_min + (x_max - x_min) * i / (points - 1);
        const double v = std::abs(tf(Complex(x, tf.spec().mu0)));
        if (v > 0.0) {
            xs.push_back(x);
            ys.push_back(std::log(v));
        }
    }
    DecayFit fit;
    fit.points = xs.size();
    if (xs.size() < 2) fail(ErrorKind::ill_conditioned, "growth ray has no usable points");
    fit.exponent = fit_slope(xs, ys, &fit.constant);
    return fit;
}

}  // namespace eisl::haar

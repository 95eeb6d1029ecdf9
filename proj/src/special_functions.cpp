#include "eisl/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "eisl/error.hpp"

namespace eisl::special {
namespace {

using std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// log Gamma for Re s >= 1/2.
Complex log_gamma_right(Complex s) {
    const Complex z = s - 1.0;
    Complex series = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
    const Complex tt = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(tt) - tt + std::log(series);
}

// log sin(pi s) without overflow for large |Im s|.
Complex log_sin_pi(Complex s) {
    if (s.imag() < 0.0) return std::conj(log_sin_pi(std::conj(s)));
    const Complex i{0.0, 1.0};
    // sin(pi s) = e^{-i pi s} (e^{2 i pi s} - 1) / (2i), |e^{2 i pi s}| <= 1
    return -i * pi * s + std::log((std::exp(2.0 * i * pi * s) - 1.0) / (2.0 * i));
}

// Bernoulli numbers B_{2k} / (2k)!, k = 1..8
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};

}  // namespace

Complex log_gamma(Complex s) {
    if (is_nonpositive_integer(s)) fail(ErrorKind::pole, "gamma pole at non-positive integer");
    if (s.real() < 0.5) return std::log(pi) - log_sin_pi(s) - log_gamma_right(1.0 - s);
    return log_gamma_right(s);
}

Complex complex_gamma(Complex s) {
    if (is_nonpositive_integer(s)) fail(ErrorKind::pole, "gamma pole at non-positive integer");
    if (s.real() < 0.5) return pi / (std::sin(pi * s) * std::exp(log_gamma_right(1.0 - s)));
    return std::exp(log_gamma_right(s));
}

Complex riemann_zeta(Complex s) {
    if (s == Complex{1.0, 0.0}) fail(ErrorKind::pole, "zeta pole at s = 1");
    const int n_terms = std::max(50, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
    Complex sum = 0.0;
    for (int n = 1; n < n_terms; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double big_n = n_terms;
    const Complex n_pow = std::exp(-s * std::log(big_n));  // N^{-s}
    sum += n_pow * big_n / (s - 1.0) + 0.5 * n_pow;
    // Euler-Maclaurin tail: sum_k B_2k/(2k)! (s)_{2k-1} N^{-s-2k+1}
    Complex rising = s;                // (s)_{2k-1}
    Complex power = n_pow / big_n;     // N^{-s-2k+1}
    for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
        sum += kBernoulliOverFactorial[k] * rising * power;
        const double j = 2.0 * static_cast<double>(k) + 1.0;
        rising *= (s + j) * (s + j + 1.0);
        power /= big_n * big_n;
    }
    return sum;
}

Complex completed_zeta(Complex s) {
    if (s == Complex{0.0, 0.0} || s == Complex{1.0, 0.0})
        fail(ErrorKind::pole, "completed zeta pole at s in {0, 1}");
    return std::exp(-0.5 * s * std::log(pi)) * complex_gamma(0.5 * s) * riemann_zeta(s);
}

Complex scaled_upper_gamma(Complex a, double x) { return scaled_upper_gamma(a, x, log_gamma(a)); }

Complex scaled_upper_gamma(Complex a, double x, Complex log_gamma_a) {
    if (!(x > 0.0)) fail(ErrorKind::domain, "scaled_upper_gamma requires x > 0");
    constexpr double eps = 1e-16;
    constexpr int max_iter = 2000;
    if (x < 2.0) {
        // x^{-a} Gamma(a) - e^{-x} sum_k x^k / (a)_{k+1}
        Complex term = 1.0 / a;
        Complex sum = term;
        int k = 1;
        for (; k < max_iter; ++k) {
            term *= x / (a + static_cast<double>(k));
            sum += term;
            if (std::abs(term) < eps * std::abs(sum)) break;
        }
        if (k == max_iter) fail(ErrorKind::non_convergence, "incomplete gamma series did not converge");
        return std::exp(-a * std::log(x) + log_gamma_a) - std::exp(-x) * sum;
    }
    // Modified Lentz for Gamma(a, x) e^{x} x^{-a}
    constexpr double tiny = 1e-300;
    Complex b = x + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    int i = 1;
    for (; i < max_iter; ++i) {
        const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const Complex del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    if (i == max_iter) fail(ErrorKind::non_convergence, "incomplete gamma continued fraction did not converge");
    return std::exp(-x) * h;
}

ScatteringValue scattering(double t) {
    if (t == 0.0) fail(ErrorKind::pole, "scattering undefined at t = 0");
    const Complex i{0.0, 1.0};
    const Complex s = 2.0 * i * t;
    // xi(s)/xi(1+s) = sqrt(pi) Gamma(s/2)/Gamma((1+s)/2) zeta(s)/zeta(1+s)
    const Complex log_ratio = log_gamma(0.5 * s) - log_gamma(0.5 * (1.0 + s));
    const Complex value = std::sqrt(pi) * std::exp(log_ratio) * riemann_zeta(s) / riemann_zeta(1.0 + s);
    return {value, t};
}

LogDerivative scattering_log_deriv_raw(double t) {
    if (t == 0.0) fail(ErrorKind::pole, "scattering log-derivative undefined at t = 0");
    const Complex center = scattering(t).value;
    auto central = [&](double h) {
        return (scattering(t + h).value - scattering(t - h).value) / (2.0 * h * center);
    };
    constexpr double h = 1e-4;
    const Complex d_dt = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    // d/ds = -i d/dt along s = 1/2 + it
    const Complex d_ds = Complex{0.0, -1.0} * d_dt;
    return {d_ds.real(), d_ds.imag()};
}

double scattering_log_deriv(double t) {
    const LogDerivative raw = scattering_log_deriv_raw(t);
    if (std::abs(raw.imag_residue) > 1e-6)
        fail(ErrorKind::non_convergence,
             "scattering log-derivative has imaginary residue " + std::to_string(raw.imag_residue));
    return raw.value;
}

}  // namespace eisl::special

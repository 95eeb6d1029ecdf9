#pragma once

// Complex special functions behind the GL(2) scattering coefficient.
//
// All functions are pure and thread-safe. Arguments at poles raise
// eisl::Error with ErrorKind::pole.

#include <complex>

namespace eisl::special {

using Complex = std::complex<double>;

/// Gamma function, Lanczos (g = 7, 9 terms) with reflection for Re s < 1/2.
Complex complex_gamma(Complex s);

/// A branch of log Gamma(s). Only exp() of the result is meaningful; stays finite
/// where Gamma itself would underflow (|Im s| in the hundreds).
Complex log_gamma(Complex s);

/// Riemann zeta by Euler-Maclaurin summation, N = max(50, 2|Im s|) leading terms
/// and 8 Bernoulli corrections. Intended for Re s > -1, |Im s| <= 500.
Complex riemann_zeta(Complex s);

/// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s). Poles at s = 0 and s = 1.
Complex completed_zeta(Complex s);

/// Upper incomplete gamma in the scaled form
///   G(a, x) = x^{-a} Gamma(a, x) = \int_1^\infty e^{-xu} u^{a-1} du,   x > 0.
/// Power series below x = 2, Lentz continued fraction above.
Complex scaled_upper_gamma(Complex a, double x);

/// Same, with log_gamma(a) supplied by the caller (hot loops with fixed a).
Complex scaled_upper_gamma(Complex a, double x, Complex log_gamma_a);

struct ScatteringValue {
    Complex value;
    double t = 0.0;
};

/// Constant-term coefficient of E(z, 1/2 + it):
///   phi(1/2 + it) = xi(2it) / xi(1 + 2it),
/// i.e. xi(s)/xi(1+s) taken at s = 2it. Unit modulus for real t != 0.
ScatteringValue scattering(double t);

struct LogDerivative {
    double value = 0.0;         // real part, the returned quantity
    double imag_residue = 0.0;  // discarded imaginary part of the numeric estimate
};

/// phi'(s)/phi(s) at s = 1/2 + it (derivative in s), from Richardson-extrapolated
/// central differences in t with steps 1e-4 and 5e-5.
LogDerivative scattering_log_deriv_raw(double t);

/// Real value of scattering_log_deriv_raw(t). Throws non_convergence if the
/// imaginary residue exceeds 1e-6.
double scattering_log_deriv(double t);

}  // namespace eisl::special

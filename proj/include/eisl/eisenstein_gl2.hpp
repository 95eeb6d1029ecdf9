#pragma once

// Real-analytic Eisenstein series for SL_2(Z), its rank-one truncation, the
// Maass-Selberg closed form of the truncated L^2 norm and an independent
// fundamental-domain quadrature of the same norm.
//
// Normalization: E(z, s) = 1/2 sum_{gcd(c,d)=1} y^s |cz+d|^{-2s}, so that the
// constant term is y^s + phi(s) y^{1-s}.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace eisl::gl2 {

using Complex = std::complex<double>;

struct UpperHalfPlanePoint {
    double x = 0.0;
    double y = 1.0;
};

struct SpectralParameter {
    double t = 1.0;
};

/// Rank-one truncation parameter; the truncation height in the cusp is e^T.
struct TruncationHeight {
    double T = 1.0;
    double height() const;
};

/// 2x2 integer matrix [[a, b], [c, d]] acting by Moebius transformation.
struct Sl2Element {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
};

UpperHalfPlanePoint apply(const Sl2Element& g, UpperHalfPlanePoint z);

struct Reduction {
    UpperHalfPlanePoint point;
    Sl2Element element;  // element * original == point
};

/// Maps z into |x| <= 1/2, x^2 + y^2 >= 1 by translations and inversions.
Reduction reduce_to_fundamental_domain(UpperHalfPlanePoint z);

bool in_fundamental_domain(UpperHalfPlanePoint z, double tol = 1e-12);

struct EisensteinValue {
    Complex value;
    Complex half_cutoff_value;  // same sum with the lattice box halved
    double tail_bound = 0.0;    // bound on the discarded lattice terms, in units of E
};

/// Evaluates E(z, s) for fixed s through the theta-function splitting of the
/// Epstein zeta function of the lattice Z z + Z:
///   2 xi(2s) E(z, s) = sum'_{v} [G(s, pi Q(v)) + G(1-s, pi Q(v))] - 1/s - 1/(1-s),
/// with Q(m, n) = |mz + n|^2 / y and G the scaled upper incomplete gamma.
/// Terms decay like e^{-pi Q}, so the box max(|m|,|n|) <= cutoff only matters
/// when it clips the ellipse pi Q <= 46.
class EisensteinEvaluator {
public:
    explicit EisensteinEvaluator(Complex s);
    Complex s() const { return s_; }
    EisensteinValue evaluate(UpperHalfPlanePoint z, int cutoff = 1000) const;

    /// The (0, n) lattice row depends on y only; callers sweeping many x at one
    /// height can compute it once and pass it to evaluate_with_row.
    Complex zero_row(double y, int cutoff = 1000) const;
    /// E at a fundamental-domain point z with a precomputed zero_row(z.y, cutoff).
    Complex evaluate_with_row(UpperHalfPlanePoint z, Complex row, int cutoff = 1000) const;
    /// y^s + phi(s) y^{1-s}
    Complex constant_term(double y) const;

private:
    Complex lattice_sum(UpperHalfPlanePoint z, int cutoff, double* tail, const Complex* row = nullptr) const;
    Complex term(double q) const;

    Complex s_;
    Complex log_gamma_s_;
    Complex log_gamma_1ms_;
    Complex two_xi_2s_;
    Complex phi_;
    bool critical_line_;
};

/// E(z, 1/2 + it). Throws non_convergence if the cutoff and half-cutoff sums
/// differ by more than 1e-4.
EisensteinValue eisenstein_value(UpperHalfPlanePoint z, SpectralParameter t, int cutoff = 1000);

/// Direct coprime-pair sum 1/2 sum_{gcd(c,d)=1, max(|c|,|d|)<=cutoff} y^s |cz+d|^{-2s}.
/// Only convergent for Re s > 1; used to cross-check the normalization.
Complex eisenstein_direct_sum(UpperHalfPlanePoint z, Complex s, int cutoff);

/// Lambda^T E: E minus its constant term above height e^T. z must lie in the
/// fundamental domain.
Complex truncated_eisenstein(UpperHalfPlanePoint z, SpectralParameter t, TruncationHeight T, int cutoff = 1000);

struct ConstantTermFit {
    Complex leading;     // coefficient of y^{1/2+it}, expected 1
    Complex scattering;  // coefficient of y^{1/2-it}
    double residual = 0.0;
};

/// Integral over x in [0,1) of E(x + iy), periodic trapezoid with `nodes` points.
Complex constant_term_quadrature(double y, SpectralParameter t, int nodes = 64);

/// Least-squares fit of A y^{1/2+it} + c y^{1/2-it} to the quadrature constant term
/// sampled at the given heights.
ConstantTermFit fit_constant_term(SpectralParameter t, const std::vector<double>& heights, int nodes = 64);

/// ||Lambda^T E(., 1/2+it)||^2 = 2T - phi'/phi(1/2+it) - Im(phi(1/2+it) e^{-2itT}) / t.
double maass_selberg_norm(SpectralParameter t, TruncationHeight T);

struct QuadratureSpec {
    int nx = 200;         // midpoint nodes across x in [-1/2, 1/2]
    int ny = 200;         // midpoint nodes in log y, per vertical segment
    unsigned workers = 0;
    double max_relative_refinement = 0.05;
};

struct OracleResult {
    double value = 0.0;          // fine-grid value
    double coarse_value = 0.0;   // base-grid value
    double error_estimate = 0.0; // |fine - coarse|
    double top_height = 0.0;     // upper integration limit used
};

/// Tensor midpoint quadrature of |Lambda^T E|^2 dx dy / y^2 over the fundamental
/// domain, in (x, log y) coordinates split at the truncation height. The base
/// grid is spec.nx x spec.ny; the refined grid doubles both. Throws
/// non_convergence when the two levels differ by more than
/// spec.max_relative_refinement.
OracleResult l2_norm_oracle(SpectralParameter t, TruncationHeight T, const QuadratureSpec& spec = {});

struct GrowthRow {
    double t = 0.0;
    double norm = 0.0;
    double ratio = 0.0;  // norm / (T log(2 + t))
};

struct GrowthScan {
    std::vector<GrowthRow> rows;
    double sup_ratio = 0.0;
};

/// `steps` equally spaced t values from t_min to t_max inclusive (steps == 1 gives t_min).
GrowthScan growth_scan(double t_min, double t_max, int steps, TruncationHeight T, unsigned workers = 0);

}  // namespace eisl::gl2

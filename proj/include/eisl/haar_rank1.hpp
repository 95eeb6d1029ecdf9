#pragma once

// Harmonic analysis on SL_2(R) in the Cartan coordinate
//   g = k1 diag(e^r, e^{-r}) k2,   ||g||^2 = 2 cosh 2r.
//
// Haar measure: sinh(2r) dr on the radial part, unit mass on each K factor,
// so vol{||g|| <= R} = (R^2/2 - 1)/2.
//
// Spherical analysis uses the hyperbolic distance d = 2r on the upper half
// plane (dg <-> dx dy / y^2), the split-torus coordinate alpha with
// a = diag(e^{alpha/2}, e^{-alpha/2}) and rho = 1/2. Spectral parameters
// mu are complex; mu in iR is the tempered axis.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace eisl::haar {

using Complex = std::complex<double>;

struct CartanCoordinate {
    double r = 0.0;

    /// Coordinate with Frobenius norm `norm` (>= sqrt 2).
    static CartanCoordinate from_norm(double norm);
    double norm() const;
};

struct MonteCarloEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

struct MonteCarloOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

/// Closed form (R^2/2 - 1)/2, zero for R <= sqrt 2.
double ball_volume_exact(double R);

/// The radial integral of sinh(2r) over the ball, by adaptive quadrature.
double ball_volume_quadrature(double R);

/// Monte Carlo over a reference ball of radius 2R, sampling full group elements.
MonteCarloEstimate haar_ball_volume(double R, const MonteCarloOptions& opts = {});

/// vol(B_R cap g B_R^{-1}) by Monte Carlo over B_R, with g = diag(e^r, e^{-r}).
MonteCarloEstimate ball_conv_lower(CartanCoordinate g, double R, const MonteCarloOptions& opts = {});

/// Deterministic value of the same overlap: the K-angle fraction is explicit,
/// leaving a 1-d radial integral.
double ball_overlap_radial(CartanCoordinate g, double R);

struct ConvCalibration {
    double c = 0.0;
    std::vector<double> radii;
    std::vector<double> kappa;  // min overlap over the test points at each R
    double spread = 0.0;        // max kappa / min kappa
};

/// Test points ||g|| from sqrt 2 to c R^2, `count` of them, linear in the norm.
std::vector<CartanCoordinate> conv_test_points(double c, double R, int count = 10);

/// Largest c in `candidates` with positive kappa and spread <= max_spread,
/// judged with the radial overlap.
ConvCalibration calibrate_conv_constant(const std::vector<double>& radii, const std::vector<double>& candidates,
                                        double max_spread = 2.0, int points = 10);

struct SphericalValue {
    Complex value;
    double refinement_delta = 0.0;  // |eta_256 - eta_512|
};

/// eta_mu(r) = (1/pi) int_0^pi (e^{2r} / (cos^2 t + e^{4r} sin^2 t))^{1/2 + mu} dt
/// (= P_{-1/2+mu}(cosh 2r)), by the trapezoid rule in v = log tan t with N and
/// 2N nodes, N = 256 raised in proportion to |Im mu| when that is large.
/// Requires |Re mu| <= 2 and 0 <= r <= 20.
SphericalValue spherical_fn_checked(Complex mu, double r);

/// Value of spherical_fn_checked; throws non_convergence when the two node
/// counts differ by more than 1e-8.
Complex spherical_fn(Complex mu, double r);

/// Bi-K-invariant function given as a function of hyperbolic distance d.
struct RadialProfile {
    double support = 0.0;  // h(d) = 0 for d >= support
    std::function<double(double)> h;
};

/// Even function on the split torus, samples at alpha_i = (i - M) step,
/// i = 0..2M. `support` is the claimed support bound b <= M step.
struct EuclideanProfile {
    double step = 0.0;
    double support = 0.0;
    std::vector<double> samples;

    std::size_t half() const { return samples.empty() ? 0 : (samples.size() - 1) / 2; }
    double alpha(std::size_t i) const { return (static_cast<double>(i) - static_cast<double>(half())) * step; }
    double half_width() const { return static_cast<double>(half()) * step; }
    bool symmetric(double tol = 1e-12) const;
};

/// Samples of a radial function at d_j = j step, j = 0..M.
struct SampledRadial {
    double step = 0.0;
    double support = 0.0;
    std::vector<double> samples;

    /// Spectrally accurate evaluator (even cosine interpolant in d).
    RadialProfile profile() const;
};

/// Grid for abel_transform: half-width is ceil(grid_factor * support / step) steps.
struct AbelGrid {
    double step = 0.02;
    double grid_factor = 1.25;
};

struct AbelTransformResult {
    EuclideanProfile profile;
    double outside_mass = 0.0;  // step * sum |S h| beyond the support bound
    bool support_violation = false;
};

/// S h(alpha) = 2 sqrt 2 int_0^inf h(arccosh(cosh alpha + s^2)) ds, the
/// normalization in which int S h(alpha) e^{mu alpha} d alpha = int_G h eta_mu dg.
AbelTransformResult abel_transform(const RadialProfile& h, const AbelGrid& grid = {});

struct AbelInverseOptions {
    bool verify_round_trip = true;
    double tolerance = 1e-4;
};

struct AbelInverseResult {
    SampledRadial radial;
    double round_trip_error = 0.0;  // sup over the grid, when verified
};

/// Inverse transform
///   h(d) = -(sqrt 2 / pi) int_0^inf F'(cosh d + s^2) ds,   F(cosh alpha) = f(alpha),
/// with F' from the spectral derivative of the sampled f. Throws round_trip
/// when the verified round-trip error exceeds the tolerance, domain when f is
/// not even.
AbelInverseResult abel_inverse(const EuclideanProfile& f, const AbelInverseOptions& opts = {});

/// int f(alpha) e^{mu alpha} d alpha by the trapezoid rule on the grid.
Complex euclidean_fourier(const EuclideanProfile& f, Complex mu);

/// int_G h eta_mu dg = 2 pi int_0^b h(d) eta_mu(d/2) sinh d dd, by nested quadrature.
Complex spherical_transform(const RadialProfile& h, Complex mu);

/// Smooth radial bumps used by the transform checks, in u = (cosh d - 1)/(cosh b - 1):
/// variant 0: psi(u); 1: psi(u) (1 + u); 2: psi(u)^2 cos(u), psi(u) = exp(-1/(1-u^2)).
RadialProfile radial_bump(double support, int variant);

/// Samples an even function on the symmetric grid of half-width ceil(half_width/step) steps.
EuclideanProfile sample_profile(const std::function<double(double)>& f, double step, double half_width,
                                double support);

struct TestFunctionSpec {
    double delta = 0.5;  // f_delta is supported in |alpha| < delta/2
    double mu0 = 0.0;    // imaginary part of the spectral shift
    double C0 = 2.0;     // localization radius, 2|rho| + 1
};

/// h_{mu0}(mu) = F(mu) conj(F(-conj mu)),  F(mu) = f0(mu - mu0) + f0(mu + mu0),
/// f0 = (f_delta)^ squared, f_delta(alpha) = exp(-1/(1 - (2 alpha/delta)^2)) / Z.
class TestFunction {
public:
    explicit TestFunction(const TestFunctionSpec& spec);

    Complex operator()(Complex mu) const;
    /// int f_delta(alpha) e^{mu alpha} d alpha.
    Complex f_delta_hat(Complex mu) const;
    const TestFunctionSpec& spec() const { return spec_; }
    /// The calibrated delta history, first entry is the starting value.
    std::vector<double> tried;

private:
    TestFunctionSpec spec_;
    double norm_ = 1.0;
};

/// Minimum of Re h on the 100-point polar grid of the disc |mu - mu0| <= C0
/// (10 radii C0 k/10, 10 angles), and the max |Im h| there.
struct LocalizationCheck {
    double min_value = 0.0;
    double max_imag = 0.0;
};
LocalizationCheck localization_check(const TestFunction& tf);

/// Builds the test function, halving delta from spec.delta until the
/// localization minimum is >= 1/10. Throws calibration below delta = 1e-3.
TestFunction test_function_build(const TestFunctionSpec& spec);

/// Minimum of Re h on mu in i[mu0 - extent, mu0 + extent] (points samples),
/// and the max |Im h| there.
struct NonnegativityCheck {
    double min_value = 0.0;
    double max_imag = 0.0;
};
NonnegativityCheck nonnegativity_check(const TestFunction& tf, int points = 200, double extent = 50.0);

struct DecayFit {
    double exponent = 0.0;     // fitted slope (N for decay, b for growth)
    double constant = 0.0;     // fitted log prefactor
    std::size_t points = 0;
};

/// Slope of the upper envelope (running max from the far end) of log|h| against
/// -log(1 + rho) on mu = mu0 + i rho, sampled on rho in [0, length] and fitted
/// over rho >= rho_min. Pass rho_min = C0 to leave out the localization disc.
DecayFit paley_wiener_decay(const TestFunction& tf, double rho_min, double length = 50.0, int points = 400);

/// Slope of log|h| against x on mu = mu0 + x, x in [x_min, x_max]; compare with 2 delta.
DecayFit paley_wiener_growth(const TestFunction& tf, double x_min = 10.0, double x_max = 50.0, int points = 81);

}  // namespace eisl::haar

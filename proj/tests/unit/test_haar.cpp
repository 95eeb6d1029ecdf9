#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../data/mp_reference.inc"
#include "eisl/error.hpp"
#include "eisl/haar_rank1.hpp"

using namespace eisl::haar;
using std::numbers::pi;

TEST_CASE("Cartan coordinate") {
    CHECK(CartanCoordinate::from_norm(std::sqrt(2.0)).r == doctest::Approx(0.0));
    for (const double nrm : {1.5, 3.0, 40.0, 1e4}) CHECK(CartanCoordinate::from_norm(nrm).norm() == doctest::Approx(nrm));
}

TEST_CASE("ball volume") {
    CHECK(ball_volume_exact(1.0) == 0.0);
    for (const double R : {2.0, 10.0, 80.0}) CHECK(ball_volume_quadrature(R) == doctest::Approx(ball_volume_exact(R)).epsilon(1e-10));
    const auto mc = haar_ball_volume(20.0, {200'000, 9, 1});
    CHECK(std::abs(mc.value - ball_volume_exact(20.0)) <= 5.0 * mc.stderr_);
    const auto mc2 = haar_ball_volume(20.0, {200'000, 9, 3});
    CHECK(mc2.samples == 200'000);
}

TEST_CASE("Monte Carlo is reproducible for a fixed seed and worker count") {
    const auto a = haar_ball_volume(10.0, {50'000, 4, 2});
    const auto b = haar_ball_volume(10.0, {50'000, 4, 2});
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("ball overlap") {
    const double R = 20.0;
    CHECK(ball_overlap_radial({0.0}, R) == doctest::Approx(ball_volume_exact(R)).epsilon(1e-8));
    const auto mc = ball_conv_lower({0.0}, R, {100'000, 2, 1});
    CHECK(mc.value == doctest::Approx(ball_volume_exact(R)).epsilon(1e-12));
    for (const double nrm : {3.0, 4.0}) {
        const auto g = CartanCoordinate::from_norm(nrm);
        const auto est = ball_conv_lower(g, R, {400'000, 5, 1});
        CHECK(std::abs(est.value - ball_overlap_radial(g, R)) <= 5.0 * est.stderr_ + 1e-9);
    }
    double prev = INFINITY;
    for (const double nrm : {1.5, 3.0, 6.0, 12.0, 24.0}) {
        const double v = ball_overlap_radial(CartanCoordinate::from_norm(nrm), R);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("overlap far from the identity is uniform in R") {
    const double full = ball_overlap_radial(CartanCoordinate::from_norm(std::sqrt(2.0)), 20.0);
    const double far = ball_overlap_radial(CartanCoordinate::from_norm(4.0), 20.0);
    CHECK(far == doctest::Approx(30.752).epsilon(1e-4));
    CHECK(far / full == doctest::Approx(0.309).epsilon(2e-3));
    const auto mc = ball_conv_lower(CartanCoordinate::from_norm(4.0), 20.0, {400'000, 13, 1});
    CHECK(std::abs(mc.value - far) <= 5.0 * mc.stderr_);
    std::vector<double> v;
    for (const double R : {10.0, 20.0, 40.0}) v.push_back(ball_overlap_radial(CartanCoordinate::from_norm(0.1 * R * R), R));
    for (const double x : v) CHECK(x == doctest::Approx(v[1]).epsilon(0.01));
}

TEST_CASE("convolution constant calibration") {
    const auto cal = calibrate_conv_constant({10.0, 20.0, 40.0}, {0.1, 0.05, 0.02, 0.01});
    CHECK(cal.c == 0.1);
    REQUIRE(cal.kappa.size() == 3);
    for (const double k : cal.kappa) CHECK(k > 0.0);
    CHECK(cal.spread <= 2.0);
    const auto pts = conv_test_points(0.1, 20.0, 10);
    REQUIRE(pts.size() == 10);
    CHECK(pts.front().norm() == doctest::Approx(std::sqrt(2.0)));
    CHECK(pts.back().norm() == doctest::Approx(40.0));
}

TEST_CASE("spherical function") {
    CHECK(std::abs(spherical_fn(Complex(0.0, 0.5), 1.0) - eisl::ref::eta_mu_0p5i_r1) < 1e-10);
    const auto checked = spherical_fn_checked(Complex(0.0, 0.5), 1.0);
    CHECK(checked.refinement_delta < 1e-10);
    CHECK(std::abs(spherical_fn(0.5, 0.7) - 1.0) < 1e-12);
    for (const double r : {0.0, 0.3, 2.0, 6.0})
        for (const Complex mu : {Complex(0, 1), Complex(0.3, 2), Complex(0, 7)}) {
            CHECK(std::abs(spherical_fn(mu, r) - spherical_fn(-mu, r)) < 1e-10);
        }
    CHECK(std::abs(spherical_fn(Complex(0, 3), 0.0) - 1.0) < 1e-12);
    CHECK_THROWS_AS(spherical_fn(Complex(0, 1), -1.0), eisl::Error);
}

TEST_CASE("Abel transform of zero") {
    RadialProfile zero{2.0, [](double) { return 0.0; }};
    const auto S = abel_transform(zero);
    for (const double v : S.profile.samples) CHECK(v == 0.0);
    CHECK(S.profile.symmetric());
    EuclideanProfile f;
    f.step = 0.02;
    f.support = 2.0;
    f.samples.assign(251, 0.0);
    AbelInverseOptions opts;
    const auto inv = abel_inverse(f, opts);
    for (const double v : inv.radial.samples) CHECK(v == 0.0);
}

TEST_CASE("Abel transform round trips" * doctest::timeout(120)) {
    for (int variant = 0; variant < 3; ++variant) {
        CAPTURE(variant);
        const RadialProfile h = radial_bump(2.0, variant);
        const auto S = abel_transform(h);
        CHECK_FALSE(S.support_violation);
        CHECK(S.profile.symmetric());
        const auto inv = abel_inverse(S.profile);
        CHECK(inv.round_trip_error <= 1e-4);
        for (const double d : {0.0, 0.4, 1.1, 1.7}) CHECK(std::abs(inv.radial.profile().h(d) - h.h(d)) < 1e-4);
    }
}

TEST_CASE("Abel inverse rejects odd profiles") {
    const auto f = sample_profile([](double a) { return a * std::exp(-a * a); }, 0.02, 3.0, 2.4);
    CHECK_THROWS_AS(abel_inverse(f), eisl::Error);
}

TEST_CASE("Harish-Chandra identity") {
    for (int variant = 0; variant < 3; ++variant) {
        const RadialProfile h = radial_bump(1.5, variant);
        const auto S = abel_transform(h, {0.01, 1.25});
        for (const double m : {0.0, 1.0, 2.0, 3.0, 5.0}) {
            const Complex mu(0.0, m);
            CAPTURE(variant);
            CAPTURE(m);
            CHECK(std::abs(euclidean_fourier(S.profile, mu) - spherical_transform(h, mu)) <= 1e-6);
        }
    }
}

TEST_CASE("test function") {
    for (const double mu0 : {0.0, 2.0, 10.0}) {
        CAPTURE(mu0);
        const TestFunction tf = test_function_build({0.5, mu0, 2.0});
        CHECK(tf.spec().delta == 0.5);
        CHECK(localization_check(tf).min_value >= 0.1);
        const auto nn = nonnegativity_check(tf, 200, 50.0);
        CHECK(nn.min_value >= 0.0);
        CHECK(nn.max_imag < 1e-12);
        CHECK(paley_wiener_decay(tf, 2.0).exponent >= 6.0);
        const auto growth = paley_wiener_growth(tf);
        CHECK(growth.exponent <= 2.0 * tf.spec().delta + 0.1);
        for (const Complex mu : {Complex(0.3, 1.0), Complex(1.2, -4.0), Complex(0.0, 7.5)})
            CHECK(std::abs(tf(mu) - tf(-mu)) <= 1e-12 * (1.0 + std::abs(tf(mu))));
    }
    CHECK(std::abs(TestFunction({0.5, 0.0, 2.0}).f_delta_hat(0.0) - 1.0) < 1e-12);
    CHECK_THROWS_AS(TestFunction({0.5, 0.0, 2.0}).f_delta_hat(4000.0), eisl::Error);
}

TEST_CASE("test function calibration") {
    const TestFunction wide = test_function_build({0.5, 0.0, 40.0});
    CHECK(wide.tried.size() > 1);
    CHECK(wide.tried.front() == 0.5);
    CHECK(wide.spec().delta == wide.tried.back());
    CHECK(localization_check(wide).min_value >= 0.1);
    for (const TestFunctionSpec spec : {TestFunctionSpec{5e-4, 0.0, 2.0}, TestFunctionSpec{2e-3, 0.0, 1e4}}) {
        try {
            test_function_build(spec);
            FAIL("expected calibration failure");
        } catch (const eisl::Error& e) {
            CHECK(e.kind() == eisl::ErrorKind::calibration);
        }
    }
}

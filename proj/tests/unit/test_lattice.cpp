#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "eisl/brute_force.hpp"
#include "eisl/congruence_lattice.hpp"
#include "eisl/count_cache.hpp"
#include "eisl/error.hpp"

using namespace eisl::lattice;

namespace {

std::vector<std::uint64_t> stream_keys(int n, double R, unsigned workers = 1) {
    std::vector<std::uint64_t> keys;
    EnumerationOptions eo;
    eo.workers = workers;
    ball_enumerate(
        n, R, [&](const IntegerMatrix& g) { keys.push_back(eisl::brute_force::pack(g.entries.data(), n)); }, eo);
    return keys;
}

std::vector<std::int64_t> unpack(std::uint64_t key, int n) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(n * n));
    for (int i = n * n - 1; i >= 0; --i) {
        e[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(key & 127) - 64;
        key >>= 7;
    }
    return e;
}

bool congruent_to_identity(const std::vector<std::int64_t>& e, int n, std::int64_t q) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::int64_t v = e[static_cast<std::size_t>(i * n + j)] - (i == j ? 1 : 0);
            if (v % q != 0) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("small balls") {
    CHECK(ball_count(2, 1.0) == 0);
    CHECK(stream_keys(2, 1.0).empty());
    std::vector<IntegerMatrix> got;
    ball_enumerate(2, std::sqrt(2.0), [&](const IntegerMatrix& g) { got.push_back(g); });
    // Norm^2 = 2 is reached by +-I and by the two rotations by a quarter turn.
    REQUIRE(got.size() == 4);
    for (const auto& e : {std::vector<std::int64_t>{1, 0, 0, 1}, std::vector<std::int64_t>{-1, 0, 0, -1},
                          std::vector<std::int64_t>{0, 1, -1, 0}, std::vector<std::int64_t>{0, -1, 1, 0}})
        CHECK(std::count(got.begin(), got.end(), IntegerMatrix::from_entries(2, e)) == 1);
    CHECK(eisl::brute_force::ball2(2).size() == 4);
    CHECK(ball_count(3, std::sqrt(3.0)) == 24);
}

TEST_CASE("norm_sq_bound is robust at square roots") {
    for (std::int64_t k = 1; k < 5000; ++k) CHECK(norm_sq_bound(std::sqrt(static_cast<double>(k))) == k);
    CHECK(norm_sq_bound(10.0) == 100);
}

TEST_CASE("n = 2 ball matches the independent enumerator") {
    const auto ref10 = eisl::brute_force::ball2(100);
    auto keys = stream_keys(2, 10.0);
    CHECK(keys.size() == 580);
    std::sort(keys.begin(), keys.end());
    CHECK(keys == ref10);
    const auto ref30 = eisl::brute_force::ball2(900);
    auto keys30 = stream_keys(2, 30.0, 3);
    std::sort(keys30.begin(), keys30.end());
    CHECK(keys30 == ref30);
}

TEST_CASE("n = 3 ball matches the independent enumerator") {
    const auto ref = eisl::brute_force::ball3(16);
    auto keys = stream_keys(3, 4.0, 2);
    CHECK(keys.size() == 60792);
    std::sort(keys.begin(), keys.end());
    CHECK(keys == ref);
}

TEST_CASE("every streamed matrix has det 1 and lies in the ball") {
    for (const int n : {2, 3}) {
        const double R = n == 2 ? 30.0 : 5.0;
        std::int64_t bad = 0;
        ball_enumerate(n, R, [&](const IntegerMatrix& g) {
            std::int64_t s = 0;
            for (const auto v : g.values()) s += v * v;
            if (g.determinant() != 1 || s != g.norm_sq || g.norm() > R * (1 + 1e-12)) ++bad;
        });
        CHECK(bad == 0);
    }
}

TEST_CASE("inversion and negation symmetry (n = 2)") {
    std::set<std::uint64_t> keys;
    ball_enumerate(2, 25.0, [&](const IntegerMatrix& g) { keys.insert(eisl::brute_force::pack(g.entries.data(), 2)); });
    for (const auto key : keys) {
        const auto e = unpack(key, 2);
        const std::int64_t inv[4] = {e[3], -e[1], -e[2], e[0]};
        const std::int64_t neg[4] = {-e[0], -e[1], -e[2], -e[3]};
        CHECK(keys.count(eisl::brute_force::pack(inv, 2)) == 1);
        CHECK(keys.count(eisl::brute_force::pack(neg, 2)) == 1);
    }
    for (const double R : {1.5, 3.0, 7.3, 40.0}) CHECK(ball_count(2, R) % 2 == 0);
}

TEST_CASE("congruence counts agree with the filtered oracle for R <= 30, q <= 6") {
    const auto ref = eisl::brute_force::ball2(900);
    for (const double R : {5.0, 12.0, 30.0})
        for (std::int64_t q = 1; q <= 6; ++q) {
            const std::int64_t B = norm_sq_bound(R);
            std::int64_t expected = 0;
            for (const auto key : ref) {
                const auto e = unpack(key, 2);
                std::int64_t s = 0;
                for (const auto v : e) s += v * v;
                if (s <= B && congruent_to_identity(e, 2, q)) ++expected;
            }
            CAPTURE(R);
            CAPTURE(q);
            CHECK(ball_count(2, R, q) == expected);
        }
}

TEST_CASE("congruence counts for n = 3 agree with filtering the ball") {
    const auto ref = eisl::brute_force::ball3(36);
    for (std::int64_t q = 2; q <= 3; ++q) {
        std::int64_t expected = 0;
        for (const auto key : ref)
            if (congruent_to_identity(unpack(key, 3), 3, q)) ++expected;
        CHECK(ball_count(3, 6.0, q) == expected);
    }
}

TEST_CASE("residue class counts partition the ball") {
    const double R = 20.0;
    const std::int64_t q = 3;
    std::int64_t total = 0;
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b)
            for (std::int64_t c = 0; c < q; ++c)
                for (std::int64_t d = 0; d < q; ++d)
                    if (((a * d - b * c) % q + q) % q == 1)
                        total += ball_count(2, R, q, IntegerMatrix::from_entries(2, std::vector<std::int64_t>{a, b, c, d}));
    CHECK(total == ball_count(2, R));
}

TEST_CASE("SL_n(Z/qZ) orders") {
    CHECK(sl_count_mod(2, CongruenceLevel::of(1)) == 1);
    CHECK(sl_count_mod(2, CongruenceLevel::of(2)) == 6);
    CHECK(sl_count_mod(2, CongruenceLevel::of(3)) == 24);
    for (const std::int64_t q : {2, 3, 5})
        CHECK(sl_count_mod(2, CongruenceLevel::of(q)) == eisl::brute_force::sl_count_exhaustive(2, q));
    CHECK(sl_count_mod(3, CongruenceLevel::of(2)) == eisl::brute_force::sl_count_exhaustive(3, 2));
    CHECK(sl_count_mod(3, CongruenceLevel::of(2)) == 168);
    for (const auto& [a, b] : std::vector<std::pair<int, int>>{{2, 3}, {5, 7}, {3, 11}, {2, 13}})
        for (const int n : {2, 3})
            CHECK(sl_count_mod(n, CongruenceLevel::of(a * b)) ==
                  sl_count_mod(n, CongruenceLevel::of(a)) * sl_count_mod(n, CongruenceLevel::of(b)));
    CHECK_THROWS_AS(sl_count_mod(2, CongruenceLevel::of(4)), eisl::Error);
}

TEST_CASE("Gamma(q) counts") {
    CHECK(gamma_q_count(2, CongruenceLevel::of(11), 5.0, 6.0).count == 1);
    CHECK(gamma_q_count(2, CongruenceLevel::of(1), 30.0, 6.0).count == ball_count(2, 30.0));
    for (const double R : {10.0, 30.0, 60.0}) {
        const auto c1 = gamma_q_count(2, CongruenceLevel::of(2), R, 6.0).count;
        const auto c2 = gamma_q_count(2, CongruenceLevel::of(6), R, 6.0).count;
        const auto c3 = gamma_q_count(2, CongruenceLevel::of(3), R, 6.0).count;
        CHECK(c2 <= c1);
        CHECK(c2 <= c3);
    }
    const auto rec = gamma_q_count(2, CongruenceLevel::of(5), 50.0, 6.0);
    CHECK(rec.main_term == doctest::Approx(6.0 * 2500.0 / 120.0));
    CHECK(rec.sx_bound == doctest::Approx(2500.0 / 125.0 + 50.0));
    CHECK(rec.ratio_sx == doctest::Approx(rec.count / rec.sx_bound));
}

TEST_CASE("Sarnak-Xue scan is finite and bounded") {
    std::vector<CongruenceLevel> qs;
    for (const std::int64_t q : {2, 3, 5, 7}) qs.push_back(CongruenceLevel::of(q));
    const auto scan = sarnak_xue_scan(2, qs, {10.0, 30.0, 100.0}, 6.0);
    CHECK(scan.rows.size() == 12);
    CHECK(std::isfinite(scan.max_ratio));
    CHECK(scan.max_ratio == doctest::Approx(10026.0 / 1350.0));
}

TEST_CASE("ball-count asymptotics") {
    const auto fit = drs_fit(2, {50, 75, 100, 150, 200, 300});
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(0.05));
    CHECK(fit.counts.back() == 539668);
    CHECK_THROWS_AS(drs_fit(2, {10, 20, 30}), eisl::Error);
    const auto fit3 = drs_fit(3, {4, 5, 6, 8});
    CHECK(fit3.exponent > 5.0);
    CHECK(fit3.exponent < 7.0);
}

TEST_CASE("worker count does not change counts") {
    EnumerationOptions one, many;
    one.workers = 1;
    many.workers = 4;
    CHECK(ball_count(2, 80.0, 1, std::nullopt, one) == ball_count(2, 80.0, 1, std::nullopt, many));
    CHECK(ball_count(3, 6.0, 2, std::nullopt, one) == ball_count(3, 6.0, 2, std::nullopt, many));
}

TEST_CASE("budget guards") {
    try {
        ball_count(2, 1e6);
        FAIL("expected budget_exceeded");
    } catch (const eisl::Error& e) {
        CHECK(e.kind() == eisl::ErrorKind::budget_exceeded);
    }
    EnumerationOptions tiny;
    tiny.max_work = 10.0;
    CHECK_THROWS_AS(ball_count(2, 50.0, 1, std::nullopt, tiny), eisl::Error);
    CHECK_THROWS_AS(ball_count(4, 2.0), eisl::Error);
}

TEST_CASE("reduction is a homomorphism") {
    std::vector<IntegerMatrix> ball;
    ball_enumerate(2, 8.0, [&](const IntegerMatrix& g) { ball.push_back(g); });
    std::vector<IntegerMatrix> ball3;
    ball_enumerate(3, 3.0, [&](const IntegerMatrix& g) { ball3.push_back(g); });
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 12);
        const auto& a = ball[rng() % ball.size()];
        const auto& b = ball[rng() % ball.size()];
        const auto lhs = reduce_mod(multiply(a, b), q);
        const auto rhs = reduce_mod(multiply(reduce_mod(a, q), reduce_mod(b, q)), q);
        CHECK(lhs == rhs);
        const auto& c = ball3[rng() % ball3.size()];
        const auto& d = ball3[rng() % ball3.size()];
        CHECK(reduce_mod(multiply(c, d), q) == reduce_mod(multiply(reduce_mod(c, q), reduce_mod(d, q)), q));
    }
}

#include <doctest.h>

#include <cmath>
#include <map>

#include "eisl/congruence_lattice.hpp"
#include "eisl/error.hpp"
#include "eisl/optimal_lifting.hpp"

using namespace eisl::lattice;
using namespace eisl::lifting;

namespace {

IntegerMatrix m2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return IntegerMatrix::from_entries(2, std::vector<std::int64_t>{a, b, c, d});
}

}  // namespace

TEST_CASE("coverage examples") {
    const auto trivial = coverage(2, CongruenceLevel::of(1), 5.0);
    CHECK(trivial.covered == 1);
    CHECK(trivial.total == 1);
    CHECK(trivial.uncovered_fraction == 0.0);
    const auto q2 = coverage(2, CongruenceLevel::of(2), 20.0);
    CHECK(q2.covered == 6);
    CHECK(q2.total == 6);
    CHECK(coverage(3, CongruenceLevel::of(2), 3.0).total == 168);
}

TEST_CASE("coverage is monotone in R") {
    for (const std::int64_t q : {5, 7, 11}) {
        std::int64_t prev = 0;
        for (double R = 1.0; R <= 40.0; R += 1.5) {
            const auto rec = coverage(2, CongruenceLevel::of(q), R);
            CHECK(rec.covered >= prev);
            CHECK(rec.uncovered_fraction == doctest::Approx(1.0 - double(rec.covered) / double(rec.total)));
            prev = rec.covered;
        }
    }
}

TEST_CASE("large epsilon reaches full coverage") {
    const auto q5 = CongruenceLevel::of(5);
    const double R_full = full_coverage_radius(2, q5, 1.0, 50.0);
    CHECK(coverage(2, q5, R_full + 1e-3).uncovered_fraction == 0.0);
    CHECK(coverage(2, q5, R_full - 0.05).uncovered_fraction > 0.0);
    const double eps = std::log(R_full + 0.01) / std::log(5.0) - 1.5;
    const auto scan = lifting_exponent_scan(2, {q5}, eps);
    CHECK(scan.rows.front().uncovered_fraction == 0.0);
}

TEST_CASE("lifting scan bookkeeping") {
    const auto scan = lifting_exponent_scan(2, {CongruenceLevel::of(5), CongruenceLevel::of(7)}, -0.3);
    REQUIRE(scan.rows.size() == 2);
    CHECK(scan.rows[0].R == doctest::Approx(std::pow(5.0, 1.2)));
    CHECK(scan.rows[1].R == doctest::Approx(std::pow(7.0, 1.2)));
}

TEST_CASE("minimal lift examples") {
    const auto q2 = CongruenceLevel::of(2);
    const auto I = minimal_lift(2, CongruenceLevel::of(7), ResidueClass::of(IntegerMatrix::identity(2), 7), 10.0);
    REQUIRE(I);
    CHECK(*I == IntegerMatrix::identity(2));
    CHECK(I->norm() == doctest::Approx(std::sqrt(2.0)));
    const auto u = minimal_lift(2, q2, ResidueClass::of(m2(1, 1, 0, 1), 2), 3.0);
    REQUIRE(u);
    CHECK(*u == m2(1, 1, 0, 1));
    CHECK(u->norm() == doctest::Approx(std::sqrt(3.0)));
    const auto I3 = minimal_lift(3, CongruenceLevel::of(5), ResidueClass::of(IntegerMatrix::identity(3), 5), 4.0);
    REQUIRE(I3);
    CHECK(*I3 == IntegerMatrix::identity(3));
    CHECK_FALSE(minimal_lift(2, CongruenceLevel::of(13), ResidueClass::of(m2(2, 0, 0, 7), 13), 2.0));
    CHECK_THROWS_AS(ResidueClass::of(m2(2, 0, 0, 2), 5), eisl::Error);
}

TEST_CASE("minimal lift is congruent and minimal against the stream") {
    const std::int64_t q = 5;
    const double R = 15.0;
    std::map<std::vector<std::int64_t>, std::int64_t> best;
    ball_enumerate(2, R, [&](const IntegerMatrix& g) {
        const auto r = reduce_mod(g, q);
        const std::vector<std::int64_t> key(r.values().begin(), r.values().end());
        auto it = best.find(key);
        if (it == best.end() || g.norm_sq < it->second) best[key] = g.norm_sq;
    });
    const auto table = minimal_lift_table(2, CongruenceLevel::of(q), R);
    CHECK(table.total == 120);
    CHECK(table.lifts.size() == best.size());
    for (const auto& g : table.lifts) {
        const auto r = reduce_mod(g, q);
        const std::vector<std::int64_t> key(r.values().begin(), r.values().end());
        REQUIRE(best.count(key) == 1);
        CHECK(g.norm_sq == best[key]);
        const auto single = minimal_lift(2, CongruenceLevel::of(q), ResidueClass::of(r, q), R);
        REQUIRE(single);
        CHECK(*single == g);
    }
}

TEST_CASE("memory cap") {
    LiftingOptions lo;
    lo.memory_cap = 100;
    try {
        coverage(2, CongruenceLevel::of(7), 10.0, lo);
        FAIL("expected memory_cap");
    } catch (const eisl::Error& e) {
        CHECK(e.kind() == eisl::ErrorKind::memory_cap);
    }
}

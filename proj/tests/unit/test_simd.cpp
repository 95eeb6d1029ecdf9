#include <doctest.h>

#include <cmath>
#include <random>

#include "eisl/simd/kernels.hpp"

using namespace eisl::simd;

TEST_CASE("scalar kernels are always available") {
    const auto isas = available_isas();
    REQUIRE(!isas.empty());
    CHECK(isas.front() == Isa::scalar);
    CHECK(kernels_for(Isa::scalar).isa == Isa::scalar);
    CHECK(active_kernels().count_row != nullptr);
}

TEST_CASE("vector row kernels agree exactly with the scalar kernel") {
    const KernelTable& ref = kernels_for(Isa::scalar);
    std::mt19937_64 rng(42);
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    for (const Isa isa : available_isas()) {
        const KernelTable& k = kernels_for(isa);
        CAPTURE(to_string(isa));
        for (int trial = 0; trial < 20000; ++trial) {
            RowQuery q;
            q.divisor = pick(1, 60) * (rng() % 2 ? 1 : -1);
            q.k0 = pick(-5000, 5000);
            q.k1 = pick(-200, 200);
            q.base = pick(0, 3000);
            q.budget = pick(0, 20000);
            q.step = pick(1, 13);
            q.lane0 = pick(-150, 150);
            q.lanes = pick(0, 70);
            if (rng() % 2) {
                q.modulus = pick(2, 13);
                q.residue = pick(0, q.modulus - 1);
            }
            REQUIRE(k.count_row(q) == ref.count_row(q));
        }
    }
}

TEST_CASE("vector reductions agree with the scalar kernel to rounding") {
    const KernelTable& ref = kernels_for(Isa::scalar);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (const Isa isa : available_isas()) {
        for (const std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
            std::vector<double> re(n), im(n), w(n);
            double scale = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                re[i] = nd(rng);
                im[i] = nd(rng);
                w[i] = std::abs(nd(rng));
                scale += w[i] * (re[i] * re[i] + im[i] * im[i]);
            }
            const double a = ref.weighted_abs2_sum(re.data(), im.data(), w.data(), n);
            const double b = kernels_for(isa).weighted_abs2_sum(re.data(), im.data(), w.data(), n);
            CHECK(std::abs(a - b) <= 1e-14 * (1.0 + scale));
        }
    }
}

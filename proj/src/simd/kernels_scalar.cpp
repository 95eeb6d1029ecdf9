// Reference kernels. Integer arithmetic throughout for the lattice row, so the
// vector variants are checked against an exact answer.

#include "kernels_impl.hpp"

namespace eisl::simd::detail {

std::int64_t count_row_scalar(const RowQuery& q) {
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < q.lanes; ++i) {
        const std::int64_t j = q.lane0 + q.step * i;
        const std::int64_t num = q.k0 + q.k1 * j;
        if (num % q.divisor != 0) continue;
        const std::int64_t d = num / q.divisor;
        if (q.base + j * j + d * d > q.budget) continue;
        if (q.modulus > 0 && (d - q.residue) % q.modulus != 0) continue;
        ++hits;
    }
    return hits;
}

double weighted_abs2_sum_scalar(const double* re, const double* im, const double* w, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += w[i] * (re[i] * re[i] + im[i] * im[i]);
    return sum;
}

}  // namespace eisl::simd::detail

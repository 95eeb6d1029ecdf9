// AVX2 + FMA variants. This translation unit is built with -mavx2 -mfma and is
// only entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace eisl::simd::detail {

std::int64_t count_row_avx2(const RowQuery& q) {
    constexpr std::int64_t width = 4;
    const std::int64_t full = q.lanes / width * width;

    const __m256d k0 = _mm256_set1_pd(static_cast<double>(q.k0));
    const __m256d k1 = _mm256_set1_pd(static_cast<double>(q.k1));
    const __m256d div = _mm256_set1_pd(static_cast<double>(q.divisor));
    const __m256d base = _mm256_set1_pd(static_cast<double>(q.base));
    const __m256d budget = _mm256_set1_pd(static_cast<double>(q.budget));
    const __m256d modulus = _mm256_set1_pd(static_cast<double>(q.modulus));
    const __m256d residue = _mm256_set1_pd(static_cast<double>(q.residue));
    const __m256d lane_step = _mm256_set1_pd(static_cast<double>(q.step * width));
    __m256d j = _mm256_setr_pd(static_cast<double>(q.lane0), static_cast<double>(q.lane0 + q.step),
                               static_cast<double>(q.lane0 + 2 * q.step), static_cast<double>(q.lane0 + 3 * q.step));
    const bool check_residue = q.modulus > 0;

    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < full; i += width) {
        // Integers below 2^50: products and sums are exact in double.
        const __m256d num = _mm256_fmadd_pd(k1, j, k0);
        const __m256d d = _mm256_round_pd(_mm256_div_pd(num, div), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        __m256d ok = _mm256_cmp_pd(_mm256_mul_pd(d, div), num, _CMP_EQ_OQ);
        const __m256d norm = _mm256_fmadd_pd(d, d, _mm256_fmadd_pd(j, j, base));
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(norm, budget, _CMP_LE_OQ));
        if (check_residue) {
            const __m256d diff = _mm256_sub_pd(d, residue);
            const __m256d quot = _mm256_floor_pd(_mm256_div_pd(diff, modulus));
            const __m256d rem = _mm256_fnmadd_pd(quot, modulus, diff);
            ok = _mm256_and_pd(ok, _mm256_cmp_pd(rem, _mm256_setzero_pd(), _CMP_EQ_OQ));
        }
        hits += __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(ok)));
        j = _mm256_add_pd(j, lane_step);
    }
    if (full < q.lanes) {
        RowQuery tail = q;
        tail.lane0 = q.lane0 + q.step * full;
        tail.lanes = q.lanes - full;
        hits += count_row_scalar(tail);
    }
    return hits;
}

double weighted_abs2_sum_avx2(const double* re, const double* im, const double* w, std::size_t n) {
    constexpr std::size_t width = 4;
    const std::size_t full = n / width * width;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < full; i += width) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        const __m256d a2 = _mm256_fmadd_pd(m, m, _mm256_mul_pd(r, r));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), a2, acc);
    }
    alignas(32) double lanes[width];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (std::size_t i = full; i < n; ++i) sum += w[i] * (re[i] * re[i] + im[i] * im[i]);
    return sum;
}

}  // namespace eisl::simd::detail

// AArch64 NEON variants (two double lanes). Advanced SIMD is mandatory on
// AArch64, so no runtime probe is needed.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace eisl::simd::detail {

std::int64_t count_row_neon(const RowQuery& q) {
    constexpr std::int64_t width = 2;
    const std::int64_t full = q.lanes / width * width;

    const float64x2_t k0 = vdupq_n_f64(static_cast<double>(q.k0));
    const float64x2_t k1 = vdupq_n_f64(static_cast<double>(q.k1));
    const float64x2_t div = vdupq_n_f64(static_cast<double>(q.divisor));
    const float64x2_t base = vdupq_n_f64(static_cast<double>(q.base));
    const float64x2_t budget = vdupq_n_f64(static_cast<double>(q.budget));
    const float64x2_t modulus = vdupq_n_f64(static_cast<double>(q.modulus));
    const float64x2_t residue = vdupq_n_f64(static_cast<double>(q.residue));
    const float64x2_t lane_step = vdupq_n_f64(static_cast<double>(q.step * width));
    const double j_init[2] = {static_cast<double>(q.lane0), static_cast<double>(q.lane0 + q.step)};
    float64x2_t j = vld1q_f64(j_init);
    const bool check_residue = q.modulus > 0;

    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < full; i += width) {
        const float64x2_t num = vfmaq_f64(k0, k1, j);
        const float64x2_t d = vrndnq_f64(vdivq_f64(num, div));
        uint64x2_t ok = vceqq_f64(vmulq_f64(d, div), num);
        const float64x2_t norm = vfmaq_f64(vfmaq_f64(base, j, j), d, d);
        ok = vandq_u64(ok, vcleq_f64(norm, budget));
        if (check_residue) {
            const float64x2_t diff = vsubq_f64(d, residue);
            const float64x2_t quot = vrndmq_f64(vdivq_f64(diff, modulus));
            const float64x2_t rem = vfmsq_f64(diff, quot, modulus);
            ok = vandq_u64(ok, vceqq_f64(rem, vdupq_n_f64(0.0)));
        }
        hits += static_cast<std::int64_t>((vgetq_lane_u64(ok, 0) & 1u) + (vgetq_lane_u64(ok, 1) & 1u));
        j = vaddq_f64(j, lane_step);
    }
    if (full < q.lanes) {
        RowQuery tail = q;
        tail.lane0 = q.lane0 + q.step * full;
        tail.lanes = q.lanes - full;
        hits += count_row_scalar(tail);
    }
    return hits;
}

double weighted_abs2_sum_neon(const double* re, const double* im, const double* w, std::size_t n) {
    constexpr std::size_t width = 2;
    const std::size_t full = n / width * width;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < full; i += width) {
        const float64x2_t r = vld1q_f64(re + i);
        const float64x2_t m = vld1q_f64(im + i);
        const float64x2_t a2 = vfmaq_f64(vmulq_f64(r, r), m, m);
        acc = vfmaq_f64(acc, vld1q_f64(w + i), a2);
    }
    double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (std::size_t i = full; i < n; ++i) sum += w[i] * (re[i] * re[i] + im[i] * im[i]);
    return sum;
}

}  // namespace eisl::simd::detail

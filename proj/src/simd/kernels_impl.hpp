#pragma once

#include "eisl/simd/kernels.hpp"

namespace eisl::simd::detail {

std::int64_t count_row_scalar(const RowQuery& q);
double weighted_abs2_sum_scalar(const double* re, const double* im, const double* w, std::size_t n);

#if defined(EISL_HAVE_AVX2)
std::int64_t count_row_avx2(const RowQuery& q);
double weighted_abs2_sum_avx2(const double* re, const double* im, const double* w, std::size_t n);
#endif

#if defined(__aarch64__)
std::int64_t count_row_neon(const RowQuery& q);
double weighted_abs2_sum_neon(const double* re, const double* im, const double* w, std::size_t n);
#endif

}  // namespace eisl::simd::detail

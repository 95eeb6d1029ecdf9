#pragma once

// Independent reference enumerators for small instances. They share no code
// with the main search: different loop order, different solved coordinate.

#include <cstdint>
#include <vector>

namespace eisl::brute_force {

/// Packs n^2 entries (each in [-63, 63]) into one integer, 7 bits per entry.
std::uint64_t pack(const std::int64_t* entries, int n);

/// Sorted packed keys of SL_2(Z) matrices with a^2+b^2+c^2+d^2 <= norm_sq_bound.
/// Loops c, b, a (outer to inner) and solves ad - bc = 1 for d.
std::vector<std::uint64_t> ball2(std::int64_t norm_sq_bound);

/// Sorted packed keys of SL_3(Z) matrices in the ball. Loops the eight
/// entries other than g11 from the last row up, and solves the cofactor
/// expansion along the first row for g11.
std::vector<std::uint64_t> ball3(std::int64_t norm_sq_bound);

/// |SL_n(Z/qZ)| by running over all q^{n^2} matrices.
std::int64_t sl_count_exhaustive(int n, std::int64_t q);

}  // namespace eisl::brute_force

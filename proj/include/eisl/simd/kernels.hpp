#pragma once

// Data-parallel inner loops with a scalar reference and vector variants
// (AVX2 on x86-64, NEON on AArch64) selected once at runtime.
//
// Every variant must agree with the scalar kernel: exactly for the integer
// lattice kernel, to rounding for floating-point reductions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace eisl::simd {

/// One row of the lattice search. Lanes are j = lane0 + step * i for
/// i in [0, lanes). A lane is a hit when
///   divisor | num,  num = k0 + k1 * j,  d = num / divisor,
///   base + j^2 + d^2 <= budget,
///   and, if modulus > 0, d == residue (mod modulus).
/// All quantities are integers below 2^50 in magnitude; divisor != 0.
struct RowQuery {
    std::int64_t k0 = 0;
    std::int64_t k1 = 0;
    std::int64_t divisor = 1;
    std::int64_t base = 0;
    std::int64_t budget = 0;
    std::int64_t lane0 = 0;
    std::int64_t step = 1;
    std::int64_t lanes = 0;
    std::int64_t modulus = 0;
    std::int64_t residue = 0;
};

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
    Isa isa = Isa::scalar;
    /// Number of hits in the row.
    std::int64_t (*count_row)(const RowQuery& q) = nullptr;
    /// sum_i w[i] * (re[i]^2 + im[i]^2)
    double (*weighted_abs2_sum)(const double* re, const double* im, const double* w, std::size_t n) = nullptr;
};

/// Kernels for a specific ISA; falls back to scalar when the ISA is not
/// compiled in or not supported by the running CPU.
const KernelTable& kernels_for(Isa isa) noexcept;

/// Best kernels for this CPU. EISL_SIMD=scalar|avx2|neon in the environment
/// overrides the choice (unsupported requests fall back to scalar).
const KernelTable& active_kernels() noexcept;

bool isa_supported(Isa isa) noexcept;

/// All ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

inline double weighted_abs2_sum(std::span<const double> re, std::span<const double> im, std::span<const double> w) {
    return active_kernels().weighted_abs2_sum(re.data(), im.data(), w.data(), re.size());
}

}  // namespace eisl::simd

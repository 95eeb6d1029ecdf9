#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace eisl::simd {
namespace {

const KernelTable kScalar{Isa::scalar, &detail::count_row_scalar, &detail::weighted_abs2_sum_scalar};
#if defined(EISL_HAVE_AVX2)
const KernelTable kAvx2{Isa::avx2, &detail::count_row_avx2, &detail::weighted_abs2_sum_avx2};
#endif
#if defined(__aarch64__)
const KernelTable kNeon{Isa::neon, &detail::count_row_neon, &detail::weighted_abs2_sum_neon};
#endif

const KernelTable& select_active() noexcept {
    if (const char* env = std::getenv("EISL_SIMD")) {
        const std::string want = env;
        if (want == "scalar") return kScalar;
        if (want == "avx2") return kernels_for(Isa::avx2);
        if (want == "neon") return kernels_for(Isa::neon);
    }
    if (isa_supported(Isa::avx2)) return kernels_for(Isa::avx2);
    if (isa_supported(Isa::neon)) return kernels_for(Isa::neon);
    return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(EISL_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) noexcept {
    if (!isa_supported(isa)) return kScalar;
    switch (isa) {
#if defined(EISL_HAVE_AVX2)
        case Isa::avx2: return kAvx2;
#endif
#if defined(__aarch64__)
        case Isa::neon: return kNeon;
#endif
        default: return kScalar;
    }
}

const KernelTable& active_kernels() noexcept {
    static const KernelTable& table = select_active();
    return table;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::scalar};
    if (isa_supported(Isa::avx2)) out.push_back(Isa::avx2);
    if (isa_supported(Isa::neon)) out.push_back(Isa::neon);
    return out;
}

}  // namespace eisl::simd

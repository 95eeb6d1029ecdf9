#include "eisl/error.hpp"

namespace eisl {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::pole: return "pole";
        case ErrorKind::domain: return "domain";
        case ErrorKind::non_convergence: return "non_convergence";
        case ErrorKind::budget_exceeded: return "budget_exceeded";
        case ErrorKind::memory_cap: return "memory_cap";
        case ErrorKind::ill_conditioned: return "ill_conditioned";
        case ErrorKind::round_trip: return "round_trip";
        case ErrorKind::calibration: return "calibration";
        case ErrorKind::tolerance: return "tolerance";
        case ErrorKind::parse: return "parse";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace eisl

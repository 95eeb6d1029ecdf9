#pragma once

// The acceptance criteria, shared by the acceptance binary and `eisl verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eisl::lattice {
class CountCache;
}

namespace eisl::acceptance {

enum class Profile { quick, full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;   // headline measured value
    double threshold = 0.0;  // the bound it is compared against
    std::string detail;      // one line of supporting numbers
    double seconds = 0.0;
};

struct Options {
    Profile profile = Profile::full;
    unsigned workers = 0;
    std::uint64_t seed = 20240601;
    std::vector<int> only;  // empty: all criteria
    lattice::CountCache* cache = nullptr;
    /// Called after each criterion finishes.
    std::function<void(const CriterionResult&)> progress;
};

/// Pinned regression constants (first-run baselines).
inline constexpr double kPinnedGrowthSup = 2.07993244465337;
inline constexpr double kPinnedSarnakXueMax = 10026.0 / 1350.0;

inline constexpr int kCriterionCount = 12;

std::string criterion_name(int id);

std::vector<CriterionResult> run(const Options& opts);

/// "criterion <id> [PASS|FAIL] <name>: measured <v> vs <threshold>; <detail> (<s> s)"
std::string format_line(const CriterionResult& r);

}  // namespace eisl::acceptance

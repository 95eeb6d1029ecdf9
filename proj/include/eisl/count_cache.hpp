#pragma once

// Persistent table of q = 1 ball counts keyed by (n, floor(R^2)).
// File format: consecutive little-endian int64 triples (n, norm_sq_bound, count).

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>

namespace eisl::lattice {

class CountCache {
public:
    CountCache() = default;

    /// Loads `path` if it exists; a missing file gives an empty cache.
    static CountCache load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    std::optional<std::int64_t> find(int n, std::int64_t norm_sq_bound) const;
    void insert(int n, std::int64_t norm_sq_bound, std::int64_t count);

    std::size_t size() const { return entries_.size(); }
    bool dirty() const { return dirty_; }

private:
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> entries_;
    bool dirty_ = false;
};

}  // namespace eisl::lattice

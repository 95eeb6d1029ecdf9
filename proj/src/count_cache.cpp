#include "eisl/count_cache.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <vector>

#include "eisl/error.hpp"

namespace eisl::lattice {

namespace {

void put_le(std::vector<unsigned char>& out, std::int64_t v) {
    const auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(u >> (8 * i)));
}

std::int64_t get_le(const unsigned char* p) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return static_cast<std::int64_t>(u);
}

}  // namespace

CountCache CountCache::load(const std::filesystem::path& path) {
    CountCache cache;
    std::ifstream in(path, std::ios::binary);
    if (!in) return cache;
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 24 != 0) fail(ErrorKind::parse, "count cache " + path.string() + " has a truncated record");
    for (std::size_t off = 0; off < bytes.size(); off += 24) {
        const std::int64_t n = get_le(&bytes[off]);
        const std::int64_t key = get_le(&bytes[off + 8]);
        const std::int64_t count = get_le(&bytes[off + 16]);
        if ((n != 2 && n != 3) || key < 0 || count < 0)
            fail(ErrorKind::parse, "count cache " + path.string() + " has an invalid record");
        cache.entries_[{n, key}] = count;
    }
    return cache;
}

void CountCache::save(const std::filesystem::path& path) const {
    std::vector<unsigned char> bytes;
    bytes.reserve(entries_.size() * 24);
    for (const auto& [key, count] : entries_) {
        put_le(bytes, key.first);
        put_le(bytes, key.second);
        put_le(bytes, count);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot write count cache " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorKind::io, "short write to count cache " + path.string());
}

std::optional<std::int64_t> CountCache::find(int n, std::int64_t norm_sq_bound) const {
    const auto it = entries_.find({n, norm_sq_bound});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void CountCache::insert(int n, std::int64_t norm_sq_bound, std::int64_t count) {
    auto [it, inserted] = entries_.try_emplace({n, norm_sq_bound}, count);
    if (!inserted && it->second != count)
        fail(ErrorKind::io, "count cache disagrees with a fresh count at norm^2 <= " + std::to_string(norm_sq_bound));
    dirty_ = dirty_ || inserted;
}

}  // namespace eisl::lattice

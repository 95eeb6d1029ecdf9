#pragma once

// Flat binary profile files: 16-byte header ("EISL-PROF\0", two zero bytes,
// uint32 version), then float64 step, float64 support, uint64 count and
// `count` float64 samples. Everything little-endian.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eisl/haar_rank1.hpp"

namespace eisl::io {

inline constexpr std::uint32_t kProfileVersion = 1;

std::vector<unsigned char> encode_profile(const haar::EuclideanProfile& p);
haar::EuclideanProfile decode_profile(const std::vector<unsigned char>& bytes);

void write_profile(const std::filesystem::path& path, const haar::EuclideanProfile& p);
haar::EuclideanProfile read_profile(const std::filesystem::path& path);

}  // namespace eisl::io

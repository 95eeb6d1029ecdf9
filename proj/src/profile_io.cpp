#include "eisl/profile_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "eisl/error.hpp"

namespace eisl::io {

namespace {

constexpr char kMagic[10] = {'E', 'I', 'S', 'L', '-', 'P', 'R', 'O', 'F', '\0'};
constexpr std::size_t kHeader = 16;

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_u64(p)); }

}  // namespace

std::vector<unsigned char> encode_profile(const haar::EuclideanProfile& p) {
    std::vector<unsigned char> out(kMagic, kMagic + sizeof kMagic);
    out.push_back(0);
    out.push_back(0);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(kProfileVersion >> (8 * i)));
    put_f64(out, p.step);
    put_f64(out, p.support);
    put_u64(out, p.samples.size());
    for (const double s : p.samples) put_f64(out, s);
    return out;
}

haar::EuclideanProfile decode_profile(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < kHeader + 24 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
        fail(ErrorKind::parse, "not a profile file");
    std::uint32_t version = 0;
    for (int i = 0; i < 4; ++i) version |= static_cast<std::uint32_t>(bytes[12 + static_cast<std::size_t>(i)]) << (8 * i);
    if (version != kProfileVersion) fail(ErrorKind::parse, "unsupported profile version " + std::to_string(version));
    haar::EuclideanProfile p;
    p.step = get_f64(&bytes[kHeader]);
    p.support = get_f64(&bytes[kHeader + 8]);
    const std::uint64_t count = get_u64(&bytes[kHeader + 16]);
    if (count != (bytes.size() - kHeader - 24) / 8 || (bytes.size() - kHeader - 24) % 8 != 0)
        fail(ErrorKind::parse, "profile sample count does not match the file size");
    p.samples.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) p.samples[i] = get_f64(&bytes[kHeader + 24 + 8 * i]);
    return p;
}

void write_profile(const std::filesystem::path& path, const haar::EuclideanProfile& p) {
    const auto bytes = encode_profile(p);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
}

haar::EuclideanProfile read_profile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path.string());
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_profile(bytes);
}

}  // namespace eisl::io

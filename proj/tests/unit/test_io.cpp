#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

#include "eisl/count_cache.hpp"
#include "eisl/csv.hpp"
#include "eisl/error.hpp"
#include "eisl/haar_rank1.hpp"
#include "eisl/profile_io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("eisl_test_" + name); }

}  // namespace

TEST_CASE("format_double is lossless") {
    for (const double v : {0.1, 1.0 / 3.0, 6.0538445792588345, -2.5e-300, 1e308, 0.0}) {
        const std::string s = eisl::io::format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(eisl::io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("CSV writer") {
    std::ostringstream os;
    eisl::io::CsvWriter w(os, {"a", "b", "c"});
    w.cell(1.5).cell(std::int64_t{7}).cell("x").end_row();
    CHECK(os.str() == "a,b,c\n1.5,7,x\n");
    w.cell(1.0);
    CHECK_THROWS_AS(w.end_row(), eisl::Error);
}

TEST_CASE("profile binary round trip") {
    eisl::haar::EuclideanProfile p;
    p.step = 0.02;
    p.support = 2.4;
    for (int i = 0; i < 301; ++i) p.samples.push_back(std::sin(0.1 * i) * 1e-3 + i);
    p.samples[5] = -0.0;
    p.samples[6] = std::numeric_limits<double>::denorm_min();
    const auto bytes = eisl::io::encode_profile(p);
    CHECK(bytes.size() == 16 + 24 + 8 * 301);
    CHECK(std::string(bytes.begin(), bytes.begin() + 9) == "EISL-PROF");
    const auto q = eisl::io::decode_profile(bytes);
    CHECK(q.step == p.step);
    CHECK(q.support == p.support);
    REQUIRE(q.samples.size() == p.samples.size());
    for (std::size_t i = 0; i < p.samples.size(); ++i)
        CHECK(std::memcmp(&q.samples[i], &p.samples[i], sizeof(double)) == 0);

    const fs::path path = temp_path("profile.bin");
    eisl::io::write_profile(path, p);
    CHECK(eisl::io::read_profile(path).samples == p.samples);
    fs::remove(path);
}

TEST_CASE("profile decoding rejects damaged input") {
    eisl::haar::EuclideanProfile p;
    p.step = 0.1;
    p.support = 1.0;
    p.samples = {1.0, 2.0, 3.0};
    auto bytes = eisl::io::encode_profile(p);
    auto truncated = bytes;
    truncated.pop_back();
    CHECK_THROWS_AS(eisl::io::decode_profile(truncated), eisl::Error);
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(eisl::io::decode_profile(bad_magic), eisl::Error);
    auto bad_version = bytes;
    bad_version[12] = 9;
    CHECK_THROWS_AS(eisl::io::decode_profile(bad_version), eisl::Error);
    CHECK_THROWS_AS(eisl::io::read_profile(temp_path("does-not-exist")), eisl::Error);
}

TEST_CASE("count cache") {
    const fs::path path = temp_path("cache.bin");
    fs::remove(path);
    auto empty = eisl::lattice::CountCache::load(path);
    CHECK(empty.size() == 0);
    eisl::lattice::CountCache c;
    c.insert(2, 100, 580);
    c.insert(3, 16, 60792);
    CHECK(c.dirty());
    c.save(path);
    CHECK(fs::file_size(path) == 2 * 24);
    auto d = eisl::lattice::CountCache::load(path);
    CHECK(d.size() == 2);
    CHECK_FALSE(d.dirty());
    CHECK(d.find(2, 100) == 580);
    CHECK_FALSE(d.find(2, 101));
    d.insert(2, 100, 580);
    CHECK_FALSE(d.dirty());
    CHECK_THROWS_AS(d.insert(2, 100, 581), eisl::Error);
    fs::remove(path);
}

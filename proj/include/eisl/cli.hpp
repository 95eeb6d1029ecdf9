#pragma once

// Command-line front end. Exit codes: 0 success, 1 other failure, 2 parse or
// argument error, 3 budget or memory guard, 4 numerical tolerance failure.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace eisl::cli {

struct ExperimentConfig {
    std::string subcommand;
    // GL(2)
    std::vector<double> t;
    std::vector<double> T;
    double t_min = 1.0;
    double t_max = 100.0;
    int steps = 199;
    int nx = 200;
    int ny = 200;
    bool closed_only = false;
    // lattice / lifting
    int n = 2;
    std::vector<std::int64_t> q;
    std::vector<double> R;
    double cn = 0.0;  // 0: fit it
    double epsilon = 0.2;
    std::vector<std::int64_t> residue;
    bool all_residues = false;
    // rank one
    std::vector<double> norms;  // ||g|| test points for conv-lower
    double c = 0.0;             // 0: calibrate
    std::uint64_t samples = 1'000'000;
    double delta = 0.5;
    double mu0 = 0.0;
    double C0 = 2.0;
    std::string shape = "gauss-cos";
    double step = 0.02;
    double support = 2.4;
    std::string save_profile;
    std::string load_profile;
    // verify
    std::string profile = "quick";
    // common
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out;
    std::string cache;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys are a parse error.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Git blob hash: SHA-1 of "blob <size>\0" followed by the bytes, as hex.
std::string git_blob_sha1(std::string_view bytes);
std::string git_blob_sha1_file(const std::string& path);

/// Runs the CLI; artifacts go to the paths named in argv.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace eisl::cli

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iterator>

#include "eisl/cli.hpp"
#include "eisl/error.hpp"

namespace eisl::cli {

namespace {

using nlohmann::json;

// One table drives both directions so the round trip cannot drift.
template <class Visit>
void fields(ExperimentConfig& c, Visit&& v) {
    v("subcommand", c.subcommand);
    v("t", c.t);
    v("T", c.T);
    v("t_min", c.t_min);
    v("t_max", c.t_max);
    v("steps", c.steps);
    v("nx", c.nx);
    v("ny", c.ny);
    v("closed_only", c.closed_only);
    v("n", c.n);
    v("q", c.q);
    v("R", c.R);
    v("cn", c.cn);
    v("epsilon", c.epsilon);
    v("residue", c.residue);
    v("all_residues", c.all_residues);
    v("norms", c.norms);
    v("c", c.c);
    v("samples", c.samples);
    v("delta", c.delta);
    v("mu0", c.mu0);
    v("C0", c.C0);
    v("shape", c.shape);
    v("step", c.step);
    v("support", c.support);
    v("save_profile", c.save_profile);
    v("load_profile", c.load_profile);
    v("profile", c.profile);
    v("seed", c.seed);
    v("workers", c.workers);
    v("out", c.out);
    v("cache", c.cache);
}

}  // namespace

json to_json(const ExperimentConfig& cfg) {
    json j = json::object();
    ExperimentConfig copy = cfg;
    fields(copy, [&](const char* key, auto& value) { j[key] = value; });
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::parse, "config must be a JSON object");
    ExperimentConfig cfg;
    std::size_t seen = 0;
    fields(cfg, [&](const char* key, auto& value) {
        if (!j.contains(key)) return;
        ++seen;
        try {
            j.at(key).get_to(value);
        } catch (const json::exception& e) {
            fail(ErrorKind::parse, std::string("config key '") + key + "': " + e.what());
        }
    });
    if (seen != j.size()) {
        for (const auto& [key, value] : j.items()) {
            bool known = false;
            fields(cfg, [&](const char* k, auto&) { known = known || key == k; });
            if (!known) fail(ErrorKind::parse, "unknown config key '" + key + "'");
        }
    }
    return cfg;
}

std::string git_blob_sha1(std::string_view bytes) {
    const std::string header = "blob " + std::to_string(bytes.size()) + '\0';
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    const bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                    EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 && EVP_DigestFinal_ex(ctx, md, &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) fail(ErrorKind::io, "SHA-1 computation failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

std::string git_blob_sha1_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return git_blob_sha1(bytes);
}

}  // namespace eisl::cli

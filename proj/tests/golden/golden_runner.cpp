// Runs one CLI case from cases.txt and compares stdout, stderr, exit code and
// the --out artifact with the stored golden files. Numeric tokens compare with
// a relative tolerance, everything else exactly. Wall-clock fields are ignored.
// EISL_UPDATE_GOLDEN=1 rewrites the golden files instead.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "eisl/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kRelTol = 1e-8;
constexpr double kAbsTol = 1e-12;

struct Case {
    std::string name;
    int exit_code = 0;
    std::string out_ext;  // empty: no --out
    std::vector<std::string> args;
};

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

// Line format: name exit_code out_ext|- arg...
std::optional<Case> find_case(const fs::path& file, const std::string& name) {
    std::ifstream in(file);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        const auto toks = split_ws(line);
        if (toks.size() < 3 || toks[0] != name) continue;
        Case c;
        c.name = toks[0];
        c.exit_code = std::stoi(toks[1]);
        c.out_ext = toks[2] == "-" ? "" : toks[2];
        c.args.assign(toks.begin() + 3, toks.end());
        return c;
    }
    return std::nullopt;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << s;
}

std::string strip_timings(const std::string& text) {
    static const std::regex timing(R"(\(\d+\.\d s\))");
    return std::regex_replace(text, timing, "(t s)");
}

bool parse_number(const std::string& tok, double& v) {
    if (tok == "nan") {
        v = std::nan("");
        return true;
    }
    char* end = nullptr;
    v = std::strtod(tok.c_str(), &end);
    return !tok.empty() && end == tok.c_str() + tok.size();
}

bool close(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return std::abs(a - b) <= kAbsTol + kRelTol * std::max(std::abs(a), std::abs(b));
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',' || ch == ' ' || ch == ';' || ch == ':' || ch == '=') {
            if (!cur.empty()) out.push_back(cur);
            out.emplace_back(1, ch);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string compare_text(const std::string& expected, const std::string& actual) {
    std::istringstream e(expected), a(actual);
    std::string le, la;
    for (int line = 1;; ++line) {
        const bool he = static_cast<bool>(std::getline(e, le));
        const bool ha = static_cast<bool>(std::getline(a, la));
        if (!he && !ha) return {};
        if (he != ha) return "line count differs at line " + std::to_string(line);
        const auto te = tokens(le), ta = tokens(la);
        bool same = te.size() == ta.size();
        for (std::size_t i = 0; same && i < te.size(); ++i) {
            double x, y;
            if (parse_number(te[i], x) && parse_number(ta[i], y))
                same = close(x, y);
            else
                same = te[i] == ta[i];
        }
        if (!same) return "line " + std::to_string(line) + ":\n  expected: " + le + "\n  actual:   " + la;
    }
}

std::string compare_json(const json& e, const json& a, const std::string& where) {
    if (e.is_number() && a.is_number())
        return close(e.get<double>(), a.get<double>()) ? "" : where + ": " + e.dump() + " vs " + a.dump();
    if (e.type() != a.type()) return where + ": type differs";
    if (e.is_object()) {
        if (e.size() != a.size()) return where + ": key count differs";
        for (auto it = e.begin(); it != e.end(); ++it) {
            if (!a.contains(it.key())) return where + ": missing " + it.key();
            if (it.key() == "seconds") continue;
            if (auto d = compare_json(it.value(), a.at(it.key()), where + "." + it.key()); !d.empty()) return d;
        }
        return {};
    }
    if (e.is_array()) {
        if (e.size() != a.size()) return where + ": length differs";
        for (std::size_t i = 0; i < e.size(); ++i)
            if (auto d = compare_json(e[i], a[i], where + "[" + std::to_string(i) + "]"); !d.empty()) return d;
        return {};
    }
    if (e.is_string()) return compare_text(e.get<std::string>(), a.get<std::string>()).empty() ? "" : where + ": text differs";
    return e == a ? "" : where + ": " + e.dump() + " vs " + a.dump();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: eisl_golden <golden-dir> <case>\n";
        return 2;
    }
    const fs::path dir = argv[1];
    const auto c = find_case(dir / "cases.txt", argv[2]);
    if (!c) {
        std::cerr << "no case named " << argv[2] << "\n";
        return 2;
    }
    auto args = c->args;
    const fs::path out_path = fs::temp_directory_path() / ("eisl_golden_" + c->name + "." + c->out_ext);
    if (!c->out_ext.empty()) {
        fs::remove(out_path);
        args.insert(args.end(), {"--out", out_path.string()});
    }
    std::ostringstream out, err;
    const int code = eisl::cli::run(args, out, err);
    const std::string stdout_text = strip_timings(out.str());
    const std::string stderr_text = strip_timings(err.str());
    const std::string artifact = c->out_ext.empty() ? "" : slurp(out_path);
    if (!c->out_ext.empty()) {
        fs::remove(out_path);
        fs::remove(out_path.string() + ".manifest.json");
    }

    const fs::path base = dir / c->name;
    if (const char* upd = std::getenv("EISL_UPDATE_GOLDEN"); upd && std::string(upd) == "1") {
        spill(base.string() + ".stdout", stdout_text);
        spill(base.string() + ".stderr", stderr_text);
        if (!c->out_ext.empty()) spill(base.string() + "." + c->out_ext, artifact);
        std::cout << "updated " << c->name << " (exit " << code << ")\n";
        return code == c->exit_code ? 0 : 1;
    }

    int failures = 0;
    auto report = [&](const std::string& what, const std::string& diff) {
        if (diff.empty()) return;
        std::cout << c->name << ": " << what << " differs: " << diff << "\n";
        ++failures;
    };
    if (code != c->exit_code) report("exit code", std::to_string(code) + " vs expected " + std::to_string(c->exit_code));
    report("stdout", compare_text(slurp(base.string() + ".stdout"), stdout_text));
    report("stderr", compare_text(slurp(base.string() + ".stderr"), stderr_text));
    if (c->out_ext == "json") {
        try {
            report("artifact", compare_json(json::parse(slurp(base.string() + ".json")), json::parse(artifact), "$"));
        } catch (const json::exception& e) {
            report("artifact", e.what());
        }
    } else if (!c->out_ext.empty()) {
        report("artifact", compare_text(slurp(base.string() + "." + c->out_ext), artifact));
    }
    if (failures == 0) std::cout << c->name << ": matches golden\n";
    return failures == 0 ? 0 : 1;
}

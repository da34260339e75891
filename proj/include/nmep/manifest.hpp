#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmep/config.hpp"
#include "nmep/version.hpp"

namespace nmep {

using json = nlohmann::ordered_json;

// One named invariant measurement reported in run manifests and by `verify`.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline json to_json(const CheckResult& c) {
    return json{{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}

inline json config_json(const SystemConfig& c) {
    const Rates r = derive_rates(c);
    return json{
        {"omega0", c.omega0},
        {"delta_omega", c.delta_omega},
        {"n_modes", c.n_modes},
        {"coupling", c.coupling},
        {"rotating_frame", c.rotating_frame},
        {"derived", json{{"gamma", r.gamma}, {"Gamma", r.Gamma}, {"T_R", r.T_R}}},
    };
}

// Manifest skeleton; no timestamps, so identical inputs give identical bytes.
inline json make_manifest(const std::string& subcommand) {
    json m;
    m["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
    m["subcommand"] = subcommand;
    m["parameters"] = json::object();
    m["checks"] = json::array();
    m["outputs"] = json::array();
    return m;
}

inline void add_check(json& manifest, const CheckResult& c) { manifest["checks"].push_back(to_json(c)); }

inline bool all_checks_pass(const json& manifest) {
    for (const auto& c : manifest["checks"])
        if (!c["pass"].get<bool>()) return false;
    return true;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << j.dump(2) << '\n';
}

} // namespace nmep

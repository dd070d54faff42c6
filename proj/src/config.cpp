#include "magnls/config.hpp"

#include <fstream>
#include <set>

namespace magnls {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config file " + path + " is not valid JSON");
    return doc;
}

void apply_override(json& doc, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + spec + "' must look like key.path=value");
    const std::string path = spec.substr(0, eq);
    const std::string raw = spec.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json* node = &doc;
    std::size_t begin = 0;
    while (true) {
        const auto dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot == std::string::npos ? dot : dot - begin);
        if (key.empty()) throw ConfigError("override '" + spec + "' has an empty path segment");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        begin = dot + 1;
    }
}

namespace {

void require_keys(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
    if (!doc.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& item : doc.items())
        if (allowed.find(item.key()) == allowed.end())
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
    if (!doc.contains(key)) return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("key '") + key + "' has the wrong type");
    }
}

InitialState parse_initial_state(const json& doc, const std::string& where) {
    require_keys(doc, {"kind", "center", "width", "momentum", "charge", "mass", "path"}, where);
    InitialState st;
    st.kind = get_or<std::string>(doc, "kind", st.kind);
    st.center = get_or<std::vector<double>>(doc, "center", st.center);
    st.width = get_or<double>(doc, "width", st.width);
    st.momentum = get_or<std::vector<double>>(doc, "momentum", st.momentum);
    st.charge = get_or<int>(doc, "charge", st.charge);
    st.mass = get_or<double>(doc, "mass", st.mass);
    st.path = get_or<std::string>(doc, "path", st.path);
    return st;
}

}  // namespace

SimConfig parse_sim_config(const json& doc) {
    require_keys(doc,
                 {"dim", "n", "L", "p", "mu", "B", "dt", "t_end", "observable_stride",
                  "snapshot_stride", "kinetic_ratio_threshold", "variance_floor", "boundary_tol",
                  "initial_state", "pauli_state"},
                 "config");
    SimConfig cfg;
    cfg.dim = get_or<int>(doc, "dim", cfg.dim);
    cfg.n = get_or<std::size_t>(doc, "n", cfg.n);
    cfg.extent = get_or<double>(doc, "L", cfg.extent);
    cfg.p = get_or<double>(doc, "p", cfg.p);
    cfg.mu = get_or<double>(doc, "mu", cfg.mu);
    cfg.B = get_or<double>(doc, "B", cfg.B);
    cfg.dt = get_or<double>(doc, "dt", cfg.dt);
    cfg.t_end = get_or<double>(doc, "t_end", cfg.t_end);
    cfg.observable_stride = get_or<std::size_t>(doc, "observable_stride", cfg.observable_stride);
    cfg.snapshot_stride = get_or<std::size_t>(doc, "snapshot_stride", cfg.snapshot_stride);
    cfg.kinetic_ratio_threshold =
        get_or<double>(doc, "kinetic_ratio_threshold", cfg.kinetic_ratio_threshold);
    cfg.variance_floor = get_or<double>(doc, "variance_floor", cfg.variance_floor);
    cfg.boundary_tol = get_or<double>(doc, "boundary_tol", cfg.boundary_tol);
    if (doc.contains("initial_state"))
        cfg.initial_state = parse_initial_state(doc.at("initial_state"), "initial_state");
    if (doc.contains("pauli_state")) {
        const json& ps = doc.at("pauli_state");
        require_keys(ps, {"up", "down", "mass"}, "pauli_state");
        if (ps.contains("up")) cfg.pauli_state.up = parse_initial_state(ps.at("up"), "pauli_state.up");
        if (ps.contains("down"))
            cfg.pauli_state.down = parse_initial_state(ps.at("down"), "pauli_state.down");
        cfg.pauli_state.mass = get_or<double>(ps, "mass", cfg.pauli_state.mass);
    }
    cfg.validate();
    return cfg;
}

StrichartzConfig parse_strichartz_config(const json& doc) {
    require_keys(doc,
                 {"n", "L", "gaussian_a", "q", "r", "nodes", "B_list", "include_charge_state",
                  "window"},
                 "config");
    StrichartzConfig cfg;
    cfg.n = get_or<std::size_t>(doc, "n", cfg.n);
    cfg.extent = get_or<double>(doc, "L", cfg.extent);
    cfg.gaussian_a = get_or<double>(doc, "gaussian_a", cfg.gaussian_a);
    cfg.q = get_or<double>(doc, "q", cfg.q);
    cfg.r = get_or<double>(doc, "r", cfg.r);
    cfg.nodes = get_or<int>(doc, "nodes", cfg.nodes);
    cfg.b_list = get_or<std::vector<double>>(doc, "B_list", cfg.b_list);
    cfg.include_charge_state = get_or<bool>(doc, "include_charge_state", cfg.include_charge_state);
    cfg.window = get_or<double>(doc, "window", cfg.window);
    if (cfg.b_list.empty()) throw ConfigError("B_list must not be empty");
    return cfg;
}

BlowupScanConfig parse_blowup_scan_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    json base = doc;
    BlowupScanConfig cfg;
    if (base.contains("B_list")) {
        cfg.b_list = get_or<std::vector<double>>(base, "B_list", {});
        base.erase("B_list");
    }
    if (cfg.b_list.empty()) throw ConfigError("B_list must not be empty");
    cfg.base = parse_sim_config(base);
    return cfg;
}

CertifyConfig parse_certify_config(const json& doc) {
    require_keys(doc, {"n", "L"}, "config");
    CertifyConfig cfg;
    cfg.n = get_or<std::size_t>(doc, "n", cfg.n);
    cfg.extent = get_or<double>(doc, "L", cfg.extent);
    return cfg;
}

VirialConfig parse_virial_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    json base = doc;
    VirialConfig cfg;
    if (base.contains("pauli")) {
        cfg.pauli = get_or<bool>(base, "pauli", false);
        base.erase("pauli");
    }
    cfg.base = parse_sim_config(base);
    return cfg;
}

}  // namespace magnls

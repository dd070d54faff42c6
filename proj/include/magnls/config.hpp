#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "magnls/dynamics.hpp"

namespace magnls {

using json = nlohmann::ordered_json;

/// Load a JSON document; ConfigError on IO or parse problems.
json load_json(const std::string& path);

/// Apply `path.to.key=value` (value parsed as JSON, else kept as a string).
void apply_override(json& doc, const std::string& spec);

/// Strict parse: every key must be known, unknown keys name themselves in the
/// error. Simulation configs mirror SimConfig field names.
SimConfig parse_sim_config(const json& doc);

struct StrichartzConfig {
    std::size_t n = 128;
    double extent = 8.0;
    double gaussian_a = 0.5;
    double q = 4.0;
    double r = 4.0;
    int nodes = 64;
    std::vector<double> b_list = {2.0};
    bool include_charge_state = false;
    double window = 12.0;
};
StrichartzConfig parse_strichartz_config(const json& doc);

struct BlowupScanConfig {
    SimConfig base;
    std::vector<double> b_list;
};
BlowupScanConfig parse_blowup_scan_config(const json& doc);

struct CertifyConfig {
    std::size_t n = 512;
    double extent = 0.5;
};
CertifyConfig parse_certify_config(const json& doc);

struct VirialConfig {
    SimConfig base;
    bool pauli = false;
};
VirialConfig parse_virial_config(const json& doc);

}  // namespace magnls

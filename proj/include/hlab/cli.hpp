#pragma once

#include "hlab/group.hpp"
#include "hlab/stats.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlab {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CheckRequest {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
};

struct ExperimentConfig {
    // Either {"catalog": name, "params": {...}} or an explicit model document.
    nlohmann::json model = {{"catalog", "real-heisenberg"}, {"params", {{"n_complex", 1}}}};
    double T = 1.0;
    int steps = 50;
    std::size_t replicas = 4000;
    std::uint64_t seed = 42;
    std::vector<CheckRequest> checks;
    std::string output_path;
    std::string output_format = "json";
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
// 3D Heisenberg at seed 42 with every registered check.
ExperimentConfig default_config();

// Throws ConfigError("unknown catalog entry: ...") for names outside the catalog.
Model build_model(const nlohmann::json& spec);

std::vector<std::string> check_names();
// Checks run by "verify <group>"; throws ConfigError for unknown groups.
std::vector<std::string> check_group(const std::string& group);
std::string describe_check(const std::string& name);
std::string list_catalog();

struct Report {
    nlohmann::json environment;
    std::vector<CheckRecord> records;

    bool pass() const;
};

Report run(const ExperimentConfig& config);

std::string report_json(const Report& report);
std::string report_csv(const Report& report);
std::string format_report(const Report& report, const std::string& format);

} // namespace hlab

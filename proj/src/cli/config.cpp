#include "hlab/cli.hpp"

#include "hlab/forms.hpp"
#include "hlab/model_json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hlab {

using nlohmann::json;

namespace {

std::vector<double> inverse_squares(int J)
{
    std::vector<double> q;
    for (int j = 1; j <= J; ++j) q.push_back(1.0 / (static_cast<double>(j) * j));
    return q;
}

CheckRequest parse_check(const json& item)
{
    if (item.is_string()) return {item.get<std::string>(), json::object()};
    if (item.is_object() && item.contains("name")) return {item.at("name").get<std::string>(), item.value("params", json::object())};
    throw ConfigError("check entries must be names or {\"name\": ..., \"params\": {...}}");
}

} // namespace

Model build_model(const json& spec)
{
    if (spec.contains("catalog")) {
        const std::string name = spec.at("catalog").get<std::string>();
        const json p = spec.value("params", json::object());
        if (name == "real-heisenberg") return make_real_heisenberg(p.value("n_complex", 1));
        if (name == "complex-heisenberg") return make_complex_heisenberg(p.value("n", 1)).model;
        if (name == "weighted-q") {
            const auto q = p.value("q", std::vector<double>{1.0, 0.5, 1.0 / 3.0});
            return p.value("conjugated", false) ? make_weighted_q_conjugated(q).model : make_weighted_q(q);
        }
        if (name == "block-sequence") {
            const Model alpha = p.contains("alpha") ? build_model(p.at("alpha")) : make_real_heisenberg(1);
            const auto q = p.contains("q") ? p.at("q").get<std::vector<double>>() : inverse_squares(p.value("J", 16));
            return make_block_sequence(alpha, q);
        }
        if (name == "path-space") {
            const int pairs = p.value("pairs", 1);
            const int J = p.value("J", 50);
            GridMeasure eta = GridMeasure::lebesgue(p.value("points", 200));
            if (p.contains("dirac")) eta = GridMeasure::dirac(p.at("dirac").get<double>());
            return make_path_space(complex_symplectic_form(pairs), eta, J).model;
        }
        throw ConfigError("unknown catalog entry: " + name);
    }
    if (spec.contains("n")) {
        try {
            return model_from_json(spec);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("malformed model: ") + e.what());
        }
    }
    throw ConfigError("model needs a \"catalog\" name or explicit n, d, omega");
}

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    try {
        if (j.contains("model")) c.model = j.at("model");
        if (j.contains("grid")) {
            c.T = j.at("grid").value("T", c.T);
            c.steps = j.at("grid").value("steps", c.steps);
        }
        c.replicas = j.value("replicas", c.replicas);
        c.seed = j.value("seed", c.seed);
        if (j.contains("checks"))
            for (const json& item : j.at("checks")) c.checks.push_back(parse_check(item));
        if (j.contains("output")) {
            c.output_path = j.at("output").value("path", c.output_path);
            c.output_format = j.at("output").value("format", c.output_format);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (c.replicas < 1) throw ConfigError("replicas must be at least 1");
    if (c.output_format != "json" && c.output_format != "csv") throw ConfigError("output format must be json or csv");
    if (!(c.T > 0.0) || c.steps < 1) throw ConfigError("grid needs T > 0 and steps >= 1");
    const auto names = check_names();
    for (const CheckRequest& r : c.checks)
        if (std::find(names.begin(), names.end(), r.name) == names.end()) throw ConfigError("unknown check: " + r.name);
    build_model(c.model);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

ExperimentConfig default_config()
{
    ExperimentConfig c;
    for (const std::string& name : check_names()) c.checks.push_back({name, json::object()});
    return c;
}

std::string list_catalog()
{
    std::ostringstream out;
    out << "models:\n";
    out << "  real-heisenberg     params: n_complex (1)\n";
    out << "  complex-heisenberg  params: n (1)\n";
    out << "  weighted-q          params: q ([1, 1/2, 1/3]), conjugated (false)\n";
    out << "  block-sequence      params: alpha (real-heisenberg), q or J (q_j = j^-2, J = 16)\n";
    out << "  path-space          params: pairs (1), J (50), points (200) or dirac (s)\n";
    out << "checks:\n";
    for (const std::string& name : check_names()) out << "  " << name << "\n";
    return out.str();
}

} // namespace hlab

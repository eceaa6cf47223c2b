#include "hlab/cli.hpp"
#include "hlab/forms.hpp"
#include "hlab/geometry.hpp"
#include "hlab/heat_kernel.hpp"
#include "hlab/model_json.hpp"
#include "hlab/ricci.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace hlab;
using nlohmann::json;

namespace {

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    std::string model;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--config", c.config_path, "experiment config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--model", c.model, "catalog model name");
}

ExperimentConfig resolve(const Common& c)
{
    ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : load_config(c.config_path);
    if (const char* env = std::getenv("HLAB_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("HLAB_SEED must be an unsigned integer");
        }
    }
    if (c.seed) cfg.seed = *c.seed;
    if (!c.out.empty()) cfg.output_path = c.out;
    if (!c.format.empty()) cfg.output_format = c.format;
    if (!c.model.empty()) {
        cfg.model = {{"catalog", c.model}};
        build_model(cfg.model);
    }
    return cfg;
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

int cmd_verify(const Common& c, const std::string& group)
{
    ExperimentConfig cfg = resolve(c);
    const std::vector<std::string> members = check_group(group);
    std::vector<CheckRequest> selected;
    for (const CheckRequest& r : cfg.checks)
        if (std::find(members.begin(), members.end(), r.name) != members.end()) selected.push_back(r);
    if (cfg.checks.empty())
        for (const std::string& name : members) selected.push_back({name, json::object()});
    cfg.checks = selected;
    const Report report = run(cfg);
    emit(format_report(report, cfg.output_format), cfg.output_path);
    return report.pass() ? 0 : 1;
}

int cmd_simulate(const Common& c, std::optional<double> T, std::optional<int> steps, std::optional<std::size_t> replicas, const std::string& samples)
{
    ExperimentConfig cfg = resolve(c);
    MonteCarloSpec spec{T.value_or(cfg.T), steps.value_or(cfg.steps), replicas.value_or(cfg.replicas), cfg.seed};
    const Model model = build_model(cfg.model);
    const EndpointSample s = sample_nu(model, spec);
    std::vector<double> sq;
    for (const Vec& a : s.areas) sq.push_back(a.squaredNorm());
    const Estimate e = estimate(sq);
    const double target = 0.5 * spec.T * spec.T * hs_norm_sq(model);
    const CheckRecord rec = against_value("area_variance", "E|M_T|^2 = (T^2/2) |omega|_2^2", e, target);
    if (!samples.empty()) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "replica";
        for (int j = 0; j < model.n(); ++j) csv << ",w" << j + 1;
        for (int l = 0; l < model.d(); ++l) csv << ",c" << l + 1;
        csv << '\n';
        for (std::size_t r = 0; r < s.size(); ++r) {
            csv << r;
            for (int j = 0; j < model.n(); ++j) csv << ',' << s.elements[r].w(j);
            for (int l = 0; l < model.d(); ++l) csv << ',' << s.elements[r].c(l);
            csv << '\n';
        }
        emit(csv.str(), samples);
    }
    if (cfg.output_format == "csv") {
        std::ostringstream out;
        out.precision(17);
        out << "estimate,stderr,target,pass\n" << e.mean << ',' << e.se << ',' << target << ',' << (rec.pass ? "true" : "false") << '\n';
        emit(out.str(), cfg.output_path);
    } else {
        const json j{{"estimate", e.mean}, {"stderr", e.se}, {"target", target}, {"pass", rec.pass},
                     {"T", spec.T},       {"steps", spec.steps}, {"replicas", spec.replicas}, {"seed", spec.seed}};
        emit(j.dump(2) + "\n", cfg.output_path);
    }
    return rec.pass ? 0 : 1;
}

int cmd_ricci(const Common& c)
{
    const ExperimentConfig cfg = resolve(c);
    const Model model = build_model(cfg.model);
    const RicciForm form = ricci_step2(model);
    json matrix = json::array();
    for (Eigen::Index i = 0; i < form.matrix.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < form.matrix.cols(); ++j) row.push_back(form.matrix(i, j) + 0.0);
        matrix.push_back(row);
    }
    json projected = json::array();
    for (int m = 1; m <= model.n(); ++m) projected.push_back({{"m", m}, {"k", k_projected(model, m) + 0.0}});
    json closed = json::array();
    bool pass = true;
    for (const CheckRecord& r : ricci_closed_form_checks()) {
        closed.push_back({{"name", r.name}, {"value", r.lhs}, {"closed_form", r.rhs}, {"delta", std::abs(r.lhs - r.rhs)}, {"pass", r.pass}});
        pass = pass && r.pass;
    }
    const json j{{"matrix", matrix}, {"k_projected", projected}, {"k_omega", k_omega(model)}, {"closed_forms", closed}, {"pass", pass}};
    emit(j.dump(2) + "\n", cfg.output_path);
    return pass ? 0 : 1;
}

int cmd_distance(const Common& c, int count, int segments)
{
    const ExperimentConfig cfg = resolve(c);
    const Model model = build_model(cfg.model);
    std::vector<GroupElement> targets;
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        const json j = json::parse(in);
        if (j.contains("targets"))
            for (const json& t : j.at("targets")) targets.push_back(group_element_from_json(t));
    }
    if (targets.empty()) {
        NormalStream rng(cfg.seed, 0, StreamTag::setup);
        for (int t = 0; t < count; ++t) {
            GroupElement g = GroupElement::identity(model);
            for (int i = 0; i < model.n(); ++i) g.w(i) = 6.0 * rng.uniform() - 3.0;
            for (int l = 0; l < model.d(); ++l) g.c(l) = 6.0 * rng.uniform() - 3.0;
            targets.push_back(g);
        }
    }
    const bool total = form_rank(model) == model.d();
    std::ostringstream out;
    out.precision(17);
    out << "target,straight_bound,optimized,cc_upper,straight_length\n";
    const GroupElement e = GroupElement::identity(model);
    for (const GroupElement& g : targets) {
        const DistanceEstimate est = optimize_distance(model, e, g, segments, 200);
        std::string label;
        for (char ch : to_json(g).dump()) {
            if (ch == '"') label += '"';
            label += ch;
        }
        out << '"' << label << '"' << ',' << straight_line_bound(model, e, g) << ',' << est.estimate << ',';
        if (total)
            out << cc_upper(model, g).value;
        else
            out << "nan";
        out << ',' << est.straight_length << '\n';
    }
    emit(out.str(), cfg.output_path);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Heisenberg-type group laboratory"};
    app.require_subcommand(1);
    Common common;

    auto* catalog = app.add_subcommand("catalog", "list models and checks");
    std::string describe;
    catalog->add_option("--describe", describe, "describe one check");

    auto* simulate = app.add_subcommand("simulate", "simulate g(T) and report E|M_T|^2");
    add_common(simulate, common);
    std::optional<double> T;
    std::optional<int> steps;
    std::optional<std::size_t> replicas;
    std::string samples;
    simulate->add_option("--T", T, "time horizon");
    simulate->add_option("--steps", steps, "time steps");
    simulate->add_option("--replicas", replicas, "replicas");
    simulate->add_option("--samples", samples, "write endpoint samples as CSV");

    auto* ricci = app.add_subcommand("ricci", "Ricci form and curvature bounds");
    add_common(ricci, common);

    auto* distance = app.add_subcommand("distance", "distance bounds for targets");
    add_common(distance, common);
    int count = 5;
    int segments = 16;
    distance->add_option("--count", count, "random targets when the config lists none");
    distance->add_option("--segments", segments, "path segments for the optimizer");

    auto* verify = app.add_subcommand("verify", "run a check group");
    add_common(verify, common);
    std::string group;
    verify->add_option("group", group, "heat | qi | ibp | lsi | forms | all")->required()->check(CLI::IsMember({"heat", "qi", "ibp", "lsi", "forms", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*catalog) {
            std::cout << (describe.empty() ? list_catalog() : describe_check(describe) + "\n");
            return 0;
        }
        if (*simulate) return cmd_simulate(common, T, steps, replicas, samples);
        if (*ricci) return cmd_ricci(common);
        if (*distance) return cmd_distance(common, count, segments);
        if (*verify) return cmd_verify(common, group);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

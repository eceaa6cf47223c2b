#include "hlab/cli.hpp"
#include "hlab/replicas.hpp"

#include <doctest.h>

#include <string>

using namespace hlab;
using nlohmann::json;

namespace {

ExperimentConfig small_config(std::vector<std::string> checks)
{
    ExperimentConfig c;
    c.replicas = 300;
    c.steps = 10;
    for (auto& name : checks) c.checks.push_back({name, json::object()});
    return c;
}

} // namespace

TEST_CASE("config parsing")
{
    const json doc = json::parse(R"({
        "model": {"catalog": "weighted-q", "params": {"q": [1.0, 0.5]}},
        "grid": {"T": 2.0, "steps": 40},
        "replicas": 123,
        "seed": 7,
        "checks": ["area_variance", {"name": "domination", "params": {"m": 2}}],
        "output": {"path": "out.json", "format": "csv"}
    })");
    const ExperimentConfig c = config_from_json(doc);
    CHECK(c.T == 2.0);
    CHECK(c.steps == 40);
    CHECK(c.replicas == 123);
    CHECK(c.seed == 7);
    REQUIRE(c.checks.size() == 2);
    CHECK(c.checks[1].params.at("m") == 2);
    CHECK(c.output_format == "csv");
    CHECK(build_model(c.model).n() == 4);
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"replicas": 0})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"checks": ["no_such_check"]})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"grid": {"T": -1}})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse("[1, 2]")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
    try {
        build_model(json::parse(R"({"catalog": "moebius"})"));
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("unknown catalog entry") != std::string::npos);
    }
}

TEST_CASE("catalog models build")
{
    for (const char* name : {"real-heisenberg", "complex-heisenberg", "weighted-q", "block-sequence", "path-space"})
        CHECK_NOTHROW(build_model(json{{"catalog", name}}));
    CHECK(build_model(json::parse(R"({"catalog": "path-space", "params": {"J": 4, "dirac": 0.5}})")).n() == 16);
    const json explicit_model = json::parse(R"({"n": 2, "d": 1, "omega": [[[0, 1], [-1, 0]]]})");
    CHECK(build_model(explicit_model).d() == 1);
}

TEST_CASE("catalog listing and descriptions")
{
    const std::string cat = list_catalog();
    for (const char* name : {"real-heisenberg", "complex-heisenberg", "weighted-q", "block-sequence", "path-space"})
        CHECK(cat.find(name) != std::string::npos);
    CHECK(describe_check("lsi").find("Ent(f^2)") != std::string::npos);
    CHECK(describe_check("ricci").find("Ricci") != std::string::npos);
    CHECK_THROWS_AS(describe_check("nope"), ConfigError);
}

TEST_CASE("check groups")
{
    CHECK(check_group("all").size() == check_names().size());
    for (const char* g : {"heat", "qi", "ibp", "lsi", "forms"}) CHECK_FALSE(check_group(g).empty());
    CHECK_THROWS_AS(check_group("bogus"), ConfigError);
}

TEST_CASE("empty check list passes with an empty report")
{
    const Report r = run(ExperimentConfig{});
    CHECK(r.records.empty());
    CHECK(r.pass());
    CHECK(json::parse(report_json(r)).at("checks").empty());
}

TEST_CASE("every record carries an anchor")
{
    const Report r = run(small_config({"group_identities", "area_variance", "ricci"}));
    CHECK_FALSE(r.records.empty());
    for (const CheckRecord& rec : r.records) CHECK_FALSE(rec.anchor.empty());
}

TEST_CASE("reports are byte-identical across reruns and worker counts")
{
    const ExperimentConfig c = small_config({"area_variance", "heat_equation", "lsi"});
    set_workers(1);
    const std::string a = report_json(run(c));
    set_workers(4);
    const std::string b = report_json(run(c));
    set_workers(1);
    CHECK(a == b);
    CHECK(report_csv(run(c)) == report_csv(run(c)));
}

TEST_CASE("report formats")
{
    const Report r = run(small_config({"midpoint_gap"}));
    const json j = json::parse(report_json(r));
    CHECK(j.at("environment").at("seed") == 42);
    CHECK(j.at("checks")[0].contains("tolerance_rule"));
    const std::string csv = format_report(r, "csv");
    CHECK(csv.rfind("name,anchor,lhs,rhs", 0) == 0);
    CHECK_THROWS_AS(format_report(r, "xml"), ConfigError);
}

TEST_CASE("failing checks become failing records")
{
    ExperimentConfig c = small_config({});
    c.model = json{{"catalog", "real-heisenberg"}};
    c.checks.push_back({"moment_growth", json{{"times", json::array({1.0})}}});
    const Report r = run(c);
    CHECK_FALSE(r.pass());
}

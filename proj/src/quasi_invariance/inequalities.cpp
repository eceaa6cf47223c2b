#include "hlab/calculus.hpp"
#include "hlab/geometry.hpp"
#include "hlab/quasi_invariance.hpp"
#include "hlab/ricci.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hlab {

namespace {

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

} // namespace

double lsi_time_factor(double k, double T)
{
    const double x = k * T;
    if (std::abs(x) < 1e-8) return T * (1.0 - x / 2.0);
    return -std::expm1(-x) / k;
}

double lp_distance(const Model& model, const AlgebraElement& h)
{
    const GroupElement target = exp_map(h);
    return optimize_distance(model, GroupElement::identity(model), target, 16, 400).estimate;
}

std::vector<NamedTest> lp_test_suite(const Model& model)
{
    const Polynomial one = constant_polynomial(model, 1.0);
    const Polynomial w1 = w_coordinate(model, 0);
    const Polynomial c1 = c_coordinate(model, 0);
    return {
        {"one_plus_w1_sq", (one + w1).power(2)},
        {"w1_sq", w1.power(2)},
        {"one_plus_c1_sq", one + c1.power(2)},
        {"w1_minus_c1_sq", (w1 - c1).power(2)},
        {"one", one},
    };
}

std::vector<CheckRecord> lp_bound_dual_check(const Model& model, const AlgebraElement& h, double p, const std::vector<NamedTest>& tests,
                                             const MonteCarloSpec& spec, double distance)
{
    if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
    const double q = p / (p - 1.0);
    const double T = spec.T;
    const double factor = std::exp(c_function(k_omega(model) * T) * (p - 1.0) * distance * distance / (2.0 * T));
    const TimeGrid grid(spec.T, spec.steps);
    const GroupElement shift = exp_map(h);
    const std::size_t k = tests.size();
    auto shifted = run_replicas(spec.replicas, k, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.seed, r, StreamTag::lhs);
        const GroupElement g = multiply(model, shift, simulate_g(model, grid, rng).end());
        for (std::size_t i = 0; i < k; ++i) out[i] = evaluate(tests[i].f, g);
    });
    auto plain = run_replicas(spec.replicas, k, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.seed, r, StreamTag::rhs);
        const GroupElement g = simulate_g(model, grid, rng).end();
        for (std::size_t i = 0; i < k; ++i) out[i] = std::pow(std::abs(evaluate(tests[i].f, g)), q);
    });
    std::vector<CheckRecord> out;
    for (std::size_t i = 0; i < k; ++i) {
        const Estimate lhs = shifted.column_estimate(i);
        const Estimate moment = plain.column_estimate(i);
        const double norm = std::pow(moment.mean, 1.0 / q);
        const double norm_se = moment.mean > 0.0 ? norm / (q * moment.mean) * moment.se : 0.0;
        std::ostringstream name;
        name << "lp_bound/p=" << p << "/" << tests[i].name;
        out.push_back(one_sided(name.str(), "E f(h g(T)) <= exp(c(k T) (p-1) d^2 / (2T)) |f|_q", lhs,
                                Estimate{factor * norm, factor * norm_se, moment.count}));
    }
    return out;
}

std::vector<NamedTest> lsi_test_suite(const Model& model)
{
    const Polynomial one = constant_polynomial(model, 1.0);
    const Polynomial w1 = w_coordinate(model, 0);
    const Polynomial c1 = c_coordinate(model, 0);
    std::vector<NamedTest> suite{
        {"one_plus_w1_half_c1", one + w1 + 0.5 * c1},
        {"one_plus_half_w1", one + 0.5 * w1},
        {"w1", w1},
        {"one_plus_c1", one + c1},
        {"two_plus_w1_sq_minus_c1", 2.0 * one + w1.power(2) - c1},
    };
    if (model.n() >= 2)
        suite.push_back({"one_plus_w1_w2", one + w1 * w_coordinate(model, 1)});
    else
        suite.push_back({"one_plus_w1_c1", one + w1 * c1});
    return suite;
}

CheckRecord lsi_check(const Model& model, const NamedTest& f, const MonteCarloSpec& spec)
{
    const double coefficient = 2.0 * lsi_time_factor(k_omega(model), spec.T);
    const std::vector<Polynomial> grad = gradient(model, f.f);
    const TimeGrid grid(spec.T, spec.steps);
    auto table = run_replicas(spec.replicas, 3, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.seed, r, StreamTag::generic);
        const GroupElement g = simulate_g(model, grid, rng).end();
        const double v = evaluate(f.f, g);
        double energy = 0.0;
        for (const Polynomial& p : grad) {
            const double x = evaluate(p, g);
            energy += x * x;
        }
        out[0] = x_log_x(v * v);
        out[1] = v * v;
        out[2] = energy;
    });
    const Estimate ent_part = table.column_estimate(0);
    const Estimate mass = table.column_estimate(1);
    const Estimate energy = table.column_estimate(2);
    const double entropy = ent_part.mean - x_log_x(mass.mean);
    const double bound = coefficient * energy.mean;
    const double margin = bound - entropy;

    // Delta method: the margin is linear in the three means up to y log y.
    const double dy = mass.mean > 0.0 ? std::log(mass.mean) + 1.0 : 0.0;
    std::vector<double> lin(spec.replicas);
    for (std::size_t r = 0; r < spec.replicas; ++r) {
        const auto row = table.row(r);
        lin[r] = -row[0] + dy * row[1] + coefficient * row[2];
    }
    const double se = estimate(lin).se;
    const double tol = 1e-12 * (1.0 + std::abs(x_log_x(mass.mean)));
    return CheckRecord{"lsi/" + f.name, "Ent(f^2) <= 2 ((1 - e^{-kT}) / k) E|grad f|^2", entropy, bound, se, 0.0, margin,
                       "rhs - lhs > 0 (point margin)", margin > -tol};
}

MomentProbe density_moment_probe(const Model& model, const CMPath& k, double p, const QiSpec& spec)
{
    if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
    const TimeGrid grid(spec.mc.T, spec.mc.steps);
    auto table = run_replicas(spec.mc.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.mc.seed, r, StreamTag::extra);
        out[0] = p * log_ztilde(model, k, simulate_g(model, grid, rng), spec.rule).log_value;
    });
    const std::vector<double> logs = table.column(0);
    if (logs.size() < 4) throw std::invalid_argument("sample too small for the stability diagnostic");
    MomentProbe probe;
    const std::size_t N = logs.size();
    probe.sizes = {N / 4, N / 2, N};
    for (std::size_t m : probe.sizes) probe.estimates.push_back(log_mean_exp(std::span<const double>(logs.data(), m)));
    const LogMeanExp& full = probe.estimates.back();
    probe.stable = std::isfinite(full.mean);
    for (std::size_t i = 0; i + 1 < probe.estimates.size(); ++i)
        if (std::abs(probe.estimates[i].mean - full.mean) > 2.0 * probe.estimates[i].se) probe.stable = false;
    std::ostringstream name;
    name << "density_moment/p=" << p;
    if (p == 1.0) {
        probe.record = against_value(name.str(), "E Z~_k = 1", Estimate{full.mean, full.se, N}, 1.0);
        probe.record.pass = probe.record.pass && probe.stable;
    } else {
        const LogMeanExp& half = probe.estimates[1];
        probe.record = CheckRecord{name.str(), "E Z~_k^p finite and stable in N", full.mean, half.mean, full.se, half.se,
                                   2.0 * half.se - std::abs(full.mean - half.mean), "stable across N/4, N/2, N within 2 SE", probe.stable};
    }
    return probe;
}

} // namespace hlab

#include "hlab/calculus.hpp"
#include "hlab/quasi_invariance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hlab {

namespace {

using PathStat = std::function<double(const GPath&)>;

Estimate mc_mean(const Model& model, const QiSpec& spec, StreamTag tag, const PathStat& stat)
{
    const TimeGrid grid(spec.mc.T, spec.mc.steps);
    const auto table = run_replicas(spec.mc.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.mc.seed, r, tag);
        out[0] = stat(simulate_g(model, grid, rng));
    });
    return table.column_estimate(0);
}

AlgebraElement negate(const AlgebraElement& h) { return {-h.A, -h.a}; }

} // namespace

CheckRecord ztilde_normalization(const Model& model, const CMPath& k, const QiSpec& spec)
{
    const TimeGrid grid(spec.mc.T, spec.mc.steps);
    const auto table = run_replicas(spec.mc.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.mc.seed, r, StreamTag::generic);
        out[0] = log_ztilde(model, k, simulate_g(model, grid, rng), spec.rule).log_value;
    });
    const std::vector<double> logs = table.column(0);
    const LogMeanExp lme = log_mean_exp(logs);
    return against_value("ztilde_normalization", "E Z~_k = 1", Estimate{lme.mean, lme.se, logs.size()}, 1.0);
}

CheckRecord zeta_normalization(const Model& model, const AlgebraElement& h, const QiSpec& spec)
{
    const TimeGrid grid(spec.mc.T, spec.mc.steps);
    const auto table = run_replicas(spec.mc.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.mc.seed, r, StreamTag::generic);
        out[0] = log_zeta(model, h, simulate_g(model, grid, rng), spec.rule).log_value;
    });
    const std::vector<double> logs = table.column(0);
    const LogMeanExp lme = log_mean_exp(logs);
    return against_value("zeta_normalization", "E zeta_h = 1", Estimate{lme.mean, lme.se, logs.size()}, 1.0);
}

CheckRecord path_qi_check(const Model& model, const CMPath& k, const PathFunctional& F, const QiSpec& spec)
{
    const TimeGrid grid(spec.mc.T, spec.mc.steps);
    const Estimate lhs = mc_mean(model, spec, StreamTag::lhs, [&](const GPath& g) {
        return F.evaluate(grid, path_points(left_shift_path(model, k, g)));
    });
    const Estimate rhs = mc_mean(model, spec, StreamTag::rhs, [&](const GPath& g) {
        return std::exp(log_ztilde(model, k, g, spec.rule).log_value) * F.evaluate(grid, path_points(g));
    });
    return two_sided("path_qi/" + F.name, "E F(k g) = E[Z~_k F(g)]", lhs, rhs);
}

CheckRecord heat_qi_check(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec)
{
    const GroupElement shift = exp_map(h);
    const Estimate lhs = mc_mean(model, spec, StreamTag::lhs, [&](const GPath& g) { return evaluate(f, multiply(model, shift, g.end())); });
    const Estimate rhs = mc_mean(model, spec, StreamTag::rhs, [&](const GPath& g) {
        return evaluate(f, g.end()) * std::exp(log_zeta(model, h, g, spec.rule).log_value);
    });
    return two_sided("heat_qi/" + label, "E f(h g(T)) = E[f(g(T)) zeta_h]", lhs, rhs);
}

CheckRecord right_qi_check(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec)
{
    const GroupElement shift = exp_map(h);
    const AlgebraElement inv = negate(h);
    const Estimate lhs = mc_mean(model, spec, StreamTag::lhs, [&](const GPath& g) { return evaluate(f, multiply(model, g.end(), shift)); });
    const Estimate rhs = mc_mean(model, spec, StreamTag::rhs, [&](const GPath& g) {
        return evaluate(f, inverse(g.end())) * std::exp(log_zeta(model, inv, g, spec.rule).log_value);
    });
    return two_sided("right_qi/" + label, "E f(g(T) h) = E[f(g(T)^{-1}) zeta_{h^{-1}}]", lhs, rhs);
}

CheckRecord ibp_path(const Model& model, const CMPath& k, const PathFunctional& F, const QiSpec& spec)
{
    const TimeGrid grid(spec.mc.T, spec.mc.steps);
    const std::vector<Polynomial> derivs = F.shift_derivatives(model, k);
    const Estimate lhs = mc_mean(model, spec, StreamTag::lhs, [&](const GPath& g) { return F.shift_derivative(derivs, grid, path_points(g)); });
    const Estimate rhs = mc_mean(model, spec, StreamTag::rhs, [&](const GPath& g) {
        return F.evaluate(grid, path_points(g)) * path_score(model, k, g, spec.rule);
    });
    return two_sided("ibp_path/" + F.name, "E (k^ F)(g) = E[F(g) z_k]", lhs, rhs);
}

CheckRecord ibp_heat(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec)
{
    const Polynomial df = right_derivative(model, h, f);
    const Estimate lhs = mc_mean(model, spec, StreamTag::lhs, [&](const GPath& g) { return evaluate(df, g.end()); });
    const Estimate rhs = mc_mean(model, spec, StreamTag::rhs, [&](const GPath& g) { return evaluate(f, g.end()) * heat_score(model, h, g, spec.rule); });
    return two_sided("ibp_heat/" + label, "E (h^ f)(g(T)) = E[f(g(T)) z_h]", lhs, rhs);
}

CheckRecord ibp_heat_left(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec)
{
    const Polynomial df = left_derivative(model, h, f);
    const Estimate lhs = mc_mean(model, spec, StreamTag::lhs, [&](const GPath& g) { return evaluate(df, g.end()); });
    const Estimate rhs = mc_mean(model, spec, StreamTag::rhs, [&](const GPath& g) {
        return -evaluate(f, inverse(g.end())) * heat_score(model, h, g, spec.rule);
    });
    return two_sided("ibp_heat_left/" + label, "E (h~ f)(g(T)) = -E[f(g(T)^{-1}) z_h]", lhs, rhs);
}

std::vector<CheckRecord> gradient_adjoint_check(const Model& model, const AlgebraElement& h, const Polynomial& u, const Polynomial& v,
                                                const QiSpec& spec)
{
    const Polynomial du = left_derivative(model, h, u);
    const Polynomial dv = left_derivative(model, h, v);
    const Polynomial product_rule = left_derivative(model, h, u * v) - (du * v + u * dv);
    double worst = 0.0;
    for (const auto& [e, coeff] : product_rule.terms()) worst = std::max(worst, std::abs(coeff));
    CheckRecord leibniz = exact("gradient_adjoint/leibniz", "h~(u v) = (h~u) v + u (h~v)", worst, 0.0, 1e-12);

    const Polynomial uv = u * v;
    const Estimate lhs = mc_mean(model, spec, StreamTag::lhs, [&](const GPath& g) { return evaluate(du, g.end()) * evaluate(v, g.end()); });
    const Estimate rhs = mc_mean(model, spec, StreamTag::rhs, [&](const GPath& g) {
        const GroupElement x = g.end();
        return -evaluate(u, x) * evaluate(dv, x) - evaluate(uv, inverse(x)) * heat_score(model, h, g, spec.rule);
    });
    return {leibniz, two_sided("gradient_adjoint/mc", "E[(h~u) v] = E[u (-h~v + z^l_h v)]", lhs, rhs)};
}

std::vector<QiCase> qi_case_suite(const Model& model)
{
    if (model.n() < 2) throw DimensionError("quasi-invariance suite needs n >= 2");
    auto h = [&](double A0, double A1, double a0) {
        AlgebraElement e = AlgebraElement::zero(model);
        e.A(0) = A0;
        e.A(1) = A1;
        e.a(0) = a0;
        return e;
    };
    const Polynomial w1 = w_coordinate(model, 0);
    const Polynomial w2 = w_coordinate(model, 1);
    const Polynomial c1 = c_coordinate(model, 0);
    return {
        {"w1", h(1.0, 0.0, 0.0), w1},
        {"c1_sq", h(1.0, 0.0, 0.5), c1 * c1},
        {"w1_c1", h(0.5, -0.5, 0.3), w1 * c1},
        {"w2_sq", h(0.0, 1.0, 0.0), w2 * w2},
        {"c1_plus_w1_w2", h(0.3, 0.3, -0.5), c1 + w1 * w2},
        {"w1_sq_c1", h(-0.5, 0.2, 0.25), w1 * w1 * c1},
    };
}

} // namespace hlab

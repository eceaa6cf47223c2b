#include "hlab/heat_kernel.hpp"

#include "hlab/calculus.hpp"
#include "hlab/forms.hpp"
#include "hlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hlab {

EndpointSample sample_nu(const Model& model, const MonteCarloSpec& spec, StreamTag tag)
{
    if (spec.replicas < 1) throw std::invalid_argument("need at least one replica");
    const TimeGrid grid(spec.T, spec.steps);
    const int n = model.n();
    const int d = model.d();
    auto table = run_replicas(spec.replicas, static_cast<std::size_t>(n + 2 * d), [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.seed, r, tag);
        const GPath g = simulate_g(model, grid, rng);
        std::copy_n(g.driving.B.row(grid.steps).data(), n, out.begin());
        std::copy_n(g.C.row(grid.steps).data(), d, out.begin() + n);
        std::copy_n(g.M.row(grid.steps).data(), d, out.begin() + n + d);
    });
    EndpointSample s{{}, {}, grid, spec.seed};
    s.elements.reserve(spec.replicas);
    s.areas.reserve(spec.replicas);
    for (std::size_t r = 0; r < spec.replicas; ++r) {
        const auto row = table.row(r);
        s.elements.push_back({Eigen::Map<const Vec>(row.data(), n), Eigen::Map<const Vec>(row.data() + n, d)});
        s.areas.emplace_back(Eigen::Map<const Vec>(row.data() + n + d, d));
    }
    return s;
}

CheckRecord heat_equation_check(const Model& model, const NamedPolynomial& f, const MonteCarloSpec& spec, int intervals)
{
    if (intervals < 1) throw std::invalid_argument("need at least one snapshot interval");
    const int steps = ((spec.steps + intervals - 1) / intervals) * intervals;
    const TimeGrid grid(spec.T, steps);
    const int stride = steps / intervals;
    const Polynomial Lf = generator_L(model, f.f);

    auto lhs = run_replicas(spec.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.seed, r, StreamTag::lhs);
        out[0] = evaluate(f.f, simulate_g(model, grid, rng).end());
    });
    const double h = spec.T / intervals;
    auto rhs = run_replicas(spec.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng(spec.seed, r, StreamTag::rhs);
        const GPath g = simulate_g(model, grid, rng);
        double integral = 0.0;
        for (int k = 0; k <= intervals; ++k) {
            const double weight = (k == 0 || k == intervals) ? 0.5 * h : h;
            integral += weight * evaluate(Lf, g.at(k * stride));
        }
        out[0] = integral;
    });
    const Estimate time_integral = rhs.column_estimate(0);
    const double at_identity = evaluate(f.f, GroupElement::identity(model));
    const Estimate right{at_identity + 0.5 * time_integral.mean, 0.5 * time_integral.se, time_integral.count};
    return two_sided("heat_equation/" + f.name, "nu_T(f) = f(e) + (1/2) int_0^T nu_t(L f) dt", lhs.column_estimate(0), right);
}

std::vector<NamedPolynomial> heat_polynomial_suite(const Model& model)
{
    if (model.n() < 2) throw DimensionError("heat suite needs n >= 2");
    const Polynomial w1 = w_coordinate(model, 0);
    const Polynomial w2 = w_coordinate(model, 1);
    const Polynomial c1 = c_coordinate(model, 0);
    Polynomial sum_sq = zero_polynomial(model);
    for (int j = 0; j < model.n(); ++j) sum_sq += w_coordinate(model, j).power(2);
    return {
        {"sum_w_sq", sum_sq},
        {"c1", c1},
        {"c1_sq", c1 * c1},
        {"w1_c1", w1 * c1},
        {"w1_sq_w2_sq", w1.power(2) * w2.power(2)},
        {"w1_quartic", w1.power(4)},
        {"w1_w2_c1", w1 * w2 * c1},
        {"w1_sq_c1_plus_w2", w1.power(2) * c1 + w2},
    };
}

std::vector<CheckRecord> inversion_check(const Model&, const EndpointSample& sample, const std::vector<NamedPolynomial>& fs)
{
    std::vector<CheckRecord> out;
    for (const NamedPolynomial& f : fs) {
        std::vector<double> diffs;
        diffs.reserve(sample.size());
        for (const GroupElement& g : sample.elements) diffs.push_back(evaluate(f.f, g) - evaluate(f.f, inverse(g)));
        out.push_back(against_value("inversion/" + f.name, "nu_T invariant under g -> g^{-1}", estimate(diffs), 0.0));
    }
    return out;
}

ExpRhoReport exp_rho_moment(const Model& model, double epsilon, const EndpointSample& sample)
{
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (sample.size() < 4) throw std::invalid_argument("sample too small for the stability diagnostic");
    std::vector<double> logs;
    logs.reserve(sample.size());
    for (const GroupElement& g : sample.elements) logs.push_back(epsilon / sample.grid.T * rho_squared(model, g));

    ExpRhoReport rep;
    const std::size_t N = logs.size();
    rep.sizes = {N / 4, N / 2, N};
    for (std::size_t m : rep.sizes) rep.estimates.push_back(log_mean_exp(std::span<const double>(logs.data(), m)));
    const LogMeanExp& full = rep.estimates.back();
    rep.stable = std::isfinite(full.mean);
    for (std::size_t i = 0; i + 1 < rep.estimates.size(); ++i)
        if (std::abs(rep.estimates[i].mean - full.mean) > 2.0 * rep.estimates[i].se) rep.stable = false;
    const LogMeanExp& half = rep.estimates[1];
    rep.record = CheckRecord{"exp_rho_moment", "E exp((eps/T) rho^2(g(T))) finite and stable in N", full.mean, half.mean, full.se, half.se,
                             2.0 * half.se - std::abs(full.mean - half.mean), "stable across N/4, N/2, N within 2 SE", rep.stable};
    return rep;
}

std::vector<CheckRecord> moment_report(const Model& model, const EndpointSample& sample)
{
    std::vector<double> m2, m4;
    for (const Vec& a : sample.areas) {
        const double s = a.squaredNorm();
        m2.push_back(s);
        m4.push_back(s * s);
    }
    const Estimate e2 = estimate(m2);
    const Estimate e4 = estimate(m4);
    const double T = sample.grid.T;
    const double hyper = 81.0;
    const Estimate bound{hyper * e2.mean * e2.mean, hyper * 2.0 * e2.mean * e2.se, e2.count};
    return {against_value("area_moment_p2", "E|M_T|^2 = (T^2/2) |omega|_2^2", e2, 0.5 * T * T * hs_norm_sq(model)),
            one_sided("area_moment_p4", "E|M_T|^4 <= 3^4 (E|M_T|^2)^2", e4, bound)};
}

GrowthReport moment_growth(const Model& model, double p, const std::vector<double>& times, const MonteCarloSpec& spec)
{
    if (times.size() < 2) throw std::invalid_argument("need at least two horizons");
    GrowthReport rep{p, times, {}, 0.0, {}};
    for (std::size_t i = 0; i < times.size(); ++i) {
        MonteCarloSpec local = spec;
        local.T = times[i];
        local.seed = spec.seed + i;
        const EndpointSample s = sample_nu(model, local);
        std::vector<double> vals;
        for (const Vec& a : s.areas) vals.push_back(std::pow(a.norm(), p));
        rep.moments.push_back(estimate(vals).mean);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double x = std::log(times[i]);
        const double y = std::log(rep.moments[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    rep.record = exact("area_moment_growth_p" + std::to_string(static_cast<int>(p)), "E|M_T|^p grows like T^p", rep.slope, p, 0.5);
    return rep;
}

std::vector<CheckRecord> scaling_check(const Model& model, const MonteCarloSpec& spec)
{
    MonteCarloSpec unit = spec;
    unit.T = 1.0;
    const EndpointSample at_T = sample_nu(model, spec, StreamTag::lhs);
    const EndpointSample at_one = sample_nu(model, unit, StreamTag::rhs);
    const double lambda = std::sqrt(spec.T);

    struct Stat {
        const char* name;
        double (*eval)(const GroupElement&);
    };
    const Stat stats[] = {
        {"w1", [](const GroupElement& g) { return g.w(0); }},
        {"w_sq", [](const GroupElement& g) { return g.w.squaredNorm(); }},
        {"c1", [](const GroupElement& g) { return g.c(0); }},
        {"c1_sq", [](const GroupElement& g) { return g.c(0) * g.c(0); }},
        {"w1_c1", [](const GroupElement& g) { return g.w(0) * g.c(0); }},
    };
    std::vector<CheckRecord> out;
    for (const Stat& s : stats) {
        std::vector<double> lhs, rhs;
        for (const GroupElement& g : at_T.elements) lhs.push_back(s.eval(g));
        for (std::size_t r = 0; r < at_one.size(); ++r) {
            // The area scales like the dilation, the centre noise B0 = c - M/2 only like sqrt T.
            const GroupElement& g = at_one.elements[r];
            const Vec& area = at_one.areas[r];
            const GroupElement scaled{lambda * g.w, lambda * (g.c - 0.5 * area) + 0.5 * spec.T * area};
            rhs.push_back(s.eval(scaled));
        }
        out.push_back(two_sided(std::string("scaling/") + s.name, "g(T) ~ (sqrt T w(1), sqrt T B0(1) + T M(1)/2)", estimate(lhs), estimate(rhs)));
    }
    return out;
}

} // namespace hlab

#include "hlab/forms.hpp"
#include "hlab/stochastics.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hlab {

namespace {

NormalStream stream(const MonteCarloSpec& spec, std::size_t r, StreamTag tag = StreamTag::generic)
{
    return NormalStream(spec.seed, r, tag);
}

double centre_norm_sq(const Table& M, int row) { return M.row(row).squaredNorm(); }

} // namespace

CheckRecord area_variance_check(const Model& model, const MonteCarloSpec& spec)
{
    const TimeGrid grid(spec.T, spec.steps);
    auto table = run_replicas(spec.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        const DrivingPath p = sample_driving(model, grid, rng);
        out[0] = centre_norm_sq(ito_area(model, p), grid.steps);
    });
    const double target = 0.5 * spec.T * spec.T * hs_norm_sq(model);
    return against_value("area_variance", "E|M_T|^2 = (T^2/2) |omega|_2^2", table.column_estimate(0), target);
}

CheckRecord quadratic_variation_check(const Model& model, const MonteCarloSpec& spec)
{
    const TimeGrid grid(spec.T, spec.steps);
    auto body = [&](StreamTag tag, bool bracket) {
        return run_replicas(spec.replicas, 1, [&, tag, bracket](std::size_t r, std::span<double> out) {
            NormalStream rng = stream(spec, r, tag);
            const DrivingPath p = sample_driving(model, grid, rng);
            out[0] = bracket ? quadratic_variation(model, p).back() : centre_norm_sq(ito_area(model, p), grid.steps);
        });
    };
    const auto lhs = body(StreamTag::lhs, false);
    const auto rhs = body(StreamTag::rhs, true);
    return two_sided("quadratic_variation", "E|M_T|^2 = E<M>_T", lhs.column_estimate(0), rhs.column_estimate(0));
}

std::vector<CheckRecord> midpoint_gap_check(const Model& model, const MonteCarloSpec& spec)
{
    const TimeGrid grid(spec.T, spec.steps);
    auto table = run_replicas(spec.replicas, 2, [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        const DrivingPath p = sample_driving(model, grid, rng);
        const Table left = ito_area(model, p);
        out[0] = stratonovich_gap(model, p);
        out[1] = (left - ito_area_midpoint(model, p)).cwiseAbs().maxCoeff() / (1.0 + left.cwiseAbs().maxCoeff());
    });
    double correction = 0.0, rounding = 0.0;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        correction = std::max(correction, table.row(r)[0]);
        rounding = std::max(rounding, table.row(r)[1]);
    }
    return {exact("midpoint_gap", "sum omega(dB, dB) / 2 = 0", correction, 0.0, 0.0),
            exact("midpoint_gap/area_sums", "left-point and midpoint area sums agree up to round-off", rounding, 0.0, 1e-12)};
}

std::vector<CheckRecord> driving_moment_checks(const Model& model, const MonteCarloSpec& spec)
{
    const TimeGrid grid(spec.T, spec.steps % 2 == 0 ? spec.steps : spec.steps + 1);
    const int half = grid.steps / 2;
    const int n = model.n();
    auto table = run_replicas(spec.replicas, 7, [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        const GPath g = simulate_g(model, grid, rng);
        const auto& B = g.driving.B;
        out[0] = B(grid.steps, 0);
        out[1] = B(grid.steps, 0) * B(grid.steps, 0);
        out[2] = B(half, 0) * B(grid.steps, 0);
        out[3] = g.C(grid.steps, 0);
        out[4] = B.row(grid.steps).squaredNorm();
        out[5] = g.M(grid.steps, 0);
        out[6] = g.M(half, 0) * (g.M(grid.steps, 0) - g.M(half, 0));
    });
    const double T = grid.T;
    return {
        against_value("brownian_mean", "E B(T) = 0", table.column_estimate(0), 0.0),
        against_value("brownian_variance", "E B_j(T)^2 = T", table.column_estimate(1), T),
        against_value("brownian_covariance", "E B_j(s) B_j(t) = min(s, t)", table.column_estimate(2), T / 2),
        against_value("centre_mean", "E c(T) = 0", table.column_estimate(3), 0.0),
        against_value("horizontal_second_moment", "E |w(T)|^2 = n T", table.column_estimate(4), n * T),
        against_value("area_mean", "E M_T = 0", table.column_estimate(5), 0.0),
        against_value("area_increments_uncorrelated", "E[M_s (M_t - M_s)] = 0", table.column_estimate(6), 0.0),
    };
}

CmkReport cmk_check(double lambda, const MonteCarloSpec& spec)
{
    if (lambda < 0.0 || lambda * spec.T >= std::numbers::pi / 2) throw std::domain_error("lambda * T must lie in [0, pi/2)");
    const TimeGrid grid(spec.T, spec.steps);
    const double dt = grid.dt();
    const double sd = std::sqrt(dt);
    auto table = run_replicas(spec.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        double b = 0.0;
        double integral = 0.0;
        for (int i = 0; i < grid.steps; ++i) {
            const double next = b + sd * rng.normal();
            integral += 0.5 * (b * b + next * next) * dt;
            b = next;
        }
        out[0] = std::exp(0.5 * lambda * lambda * integral);
    });
    const double target = 1.0 / std::sqrt(std::cos(lambda * spec.T));
    return {against_value("cameron_martin_kac", "E exp((lambda^2/2) int b^2) = cos(lambda T)^(-1/2)", table.column_estimate(0), target),
            target};
}

double log_cos_constant(double k)
{
    if (k < 0.0 || k >= std::numbers::pi / 2) throw std::domain_error("k must lie in [0, pi/2)");
    if (k < 1e-4) return 0.25 + k * k / 24.0;
    return -0.5 * std::log(std::cos(k)) / (k * k);
}

ExpMomentReport exp_moment_area(const Model& model, double lambda, double gamma, const MonteCarloSpec& spec)
{
    const int d = model.d();
    const double k = 2.0 * lambda * d * std::sqrt(gamma) * spec.T;
    if (lambda < 0.0 || k >= std::numbers::pi / 2) throw std::domain_error("lambda outside the admissible range");
    const TimeGrid grid(spec.T, spec.steps);
    auto table = run_replicas(spec.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        const DrivingPath p = sample_driving(model, grid, rng);
        out[0] = lambda * std::sqrt(centre_norm_sq(ito_area(model, p), grid.steps));
    });
    const std::vector<double> logs = table.column(0);
    const LogMeanExp lme = log_mean_exp(logs);
    const double c_k = log_cos_constant(k);
    const double bound = 2.0 * std::exp(2.0 * c_k * lambda * lambda * d * spec.T * spec.T * hs_norm_sq(model));
    ExpMomentReport rep{one_sided("exp_moment_area", "E exp(lambda |M_T|) <= 2 exp(2 c(k) lambda^2 d T^2 |omega|_2^2)",
                                  Estimate{lme.mean, lme.se, logs.size()}, Estimate{bound, 0.0, 0}),
                        lme.mean, lme.log_mean, bound, k, c_k};
    return rep;
}

CheckRecord supermartingale_check(const Model& model, const MonteCarloSpec& spec)
{
    const TimeGrid grid(spec.T, spec.steps);
    const Mat& first = model.omega().front();
    auto table = run_replicas(spec.replicas, 1, [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        const DrivingPath p = sample_driving(model, grid, rng);
        const Table M = ito_area(model, p);
        double bracket = 0.0;
        for (int i = 0; i < grid.steps; ++i) bracket += (first.transpose() * p.B.row(i).transpose()).squaredNorm() * grid.dt();
        out[0] = std::exp(2.0 * M(grid.steps, 0) - 2.0 * bracket);
    });
    return one_sided("exponential_supermartingale", "E exp(2 N_T - 2 <N>_T) <= 1", table.column_estimate(0), Estimate{1.0, 0.0, 0});
}

ConvergenceReport refinement_convergence(const Model& model, const MonteCarloSpec& spec, int halvings)
{
    if (halvings < 1) throw std::invalid_argument("need at least one halving");
    const int levels = halvings + 2;
    const int fine = spec.steps << (levels - 1);
    const int n = model.n();
    const int d = model.d();
    auto table = run_replicas(spec.replicas, static_cast<std::size_t>(levels - 1), [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        const double sd = std::sqrt(spec.T / fine);
        Table inc(fine, n + d);
        for (int i = 0; i < fine; ++i)
            for (int j = 0; j < n + d; ++j) inc(i, j) = sd * rng.normal();
        std::vector<Vec> endpoints;
        for (int level = 0; level < levels; ++level) {
            const int steps = spec.steps << level;
            const int block = fine / steps;
            Table coarse = Table::Zero(steps, n + d);
            for (int i = 0; i < fine; ++i) coarse.row(i / block) += inc.row(i);
            const DrivingPath p = driving_from_increments(TimeGrid(spec.T, steps), coarse, n);
            endpoints.push_back(ito_area(model, p).row(steps).transpose());
        }
        for (int level = 0; level + 1 < levels; ++level)
            out[static_cast<std::size_t>(level)] = (endpoints[static_cast<std::size_t>(level)] - endpoints[static_cast<std::size_t>(level) + 1]).squaredNorm();
    });
    ConvergenceReport rep{{}, {}, true};
    for (int level = 0; level + 1 < levels; ++level) rep.rms_gaps.push_back(std::sqrt(table.column_estimate(static_cast<std::size_t>(level)).mean));
    const double threshold = std::numbers::sqrt2 * 0.8;
    for (std::size_t i = 0; i + 1 < rep.rms_gaps.size(); ++i) {
        rep.ratios.push_back(rep.rms_gaps[i] / rep.rms_gaps[i + 1]);
        if (!(rep.ratios.back() >= threshold)) rep.pass = false;
    }
    return rep;
}

ProjectionTrend projection_convergence(const Model& model, const std::vector<int>& sizes, const MonteCarloSpec& spec)
{
    const TimeGrid grid(spec.T, spec.steps);
    const std::size_t k = sizes.size();
    auto table = run_replicas(spec.replicas, k, [&](std::size_t r, std::span<double> out) {
        NormalStream rng = stream(spec, r);
        const GPath g = simulate_g(model, grid, rng);
        for (std::size_t s = 0; s < k; ++s) {
            const Projection proj = project_g(model, g, sizes[s]);
            double worst = 0.0;
            for (int i = 0; i <= grid.steps; ++i) {
                const double v = banach_norm(model, subtract(g.at(i), proj.projected.at(i)));
                worst = std::max(worst, v * v);
            }
            out[s] = worst;
        }
    });
    ProjectionTrend trend{sizes, {}, true, true};
    for (std::size_t s = 0; s < k; ++s) {
        trend.max_sq_gap.push_back(table.column_estimate(s));
        if (s > 0 && !(trend.max_sq_gap[s].mean < trend.max_sq_gap[s - 1].mean)) trend.strictly_decreasing = false;
    }
    NormalStream rng = stream(spec, 0);
    const DrivingPath p = sample_driving(model, grid, rng);
    for (int m : sizes) trend.identity_exact = trend.identity_exact && projection_identity_exact(model, p, m);
    return trend;
}

std::vector<CheckRecord> basis_rotation_check(const Model& model, const MonteCarloSpec& spec)
{
    const int n = model.n();
    NormalStream setup(spec.seed, 0, StreamTag::setup);
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = setup.normal();
    const Mat R = Eigen::HouseholderQR<Mat>(G).householderQ();
    const TimeGrid grid(spec.T, spec.steps);
    auto run = [&](StreamTag tag, bool rotate) {
        return run_replicas(spec.replicas, 2, [&, tag, rotate](std::size_t r, std::span<double> out) {
            NormalStream rng = stream(spec, r, tag);
            DrivingPath p = sample_driving(model, grid, rng);
            if (rotate) p.B = p.B * R.transpose();
            const double m2 = centre_norm_sq(ito_area(model, p), grid.steps);
            out[0] = m2;
            out[1] = m2 * m2;
        });
    };
    const auto plain = run(StreamTag::lhs, false);
    const auto rotated = run(StreamTag::rhs, true);
    return {two_sided("rotated_basis_second_moment", "M_T independent of the basis of H (second moment)", plain.column_estimate(0),
                      rotated.column_estimate(0)),
            two_sided("rotated_basis_fourth_moment", "M_T independent of the basis of H (fourth moment)", plain.column_estimate(1),
                      rotated.column_estimate(1))};
}

CheckRecord domination_check(const Model& model, int m, const MonteCarloSpec& spec)
{
    if (m < 1 || m > model.n()) throw std::invalid_argument("projection size out of range");
    const TimeGrid grid(spec.T, spec.steps);
    auto run = [&](StreamTag tag, bool project) {
        return run_replicas(spec.replicas, 1, [&, tag, project](std::size_t r, std::span<double> out) {
            NormalStream rng = stream(spec, r, tag);
            Vec w = sample_driving(model, grid, rng).B.row(grid.steps).transpose();
            if (project) w.tail(model.n() - m).setZero();
            const double v = w_norm(model, w);
            out[0] = v * v;
        });
    };
    const auto smaller = run(StreamTag::lhs, true);
    const auto larger = run(StreamTag::rhs, false);
    return one_sided("gaussian_domination", "smaller covariance gives smaller monotone moments", smaller.column_estimate(0),
                     larger.column_estimate(0));
}

} // namespace hlab

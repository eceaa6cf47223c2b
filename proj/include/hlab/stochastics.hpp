#pragma once

#include "hlab/group.hpp"
#include "hlab/replicas.hpp"
#include "hlab/rng.hpp"
#include "hlab/stats.hpp"

#include <cstdint>
#include <vector>

namespace hlab {

using Table = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct TimeGrid {
    double T = 1.0;
    int steps = 1;

    TimeGrid() = default;
    TimeGrid(double horizon, int step_count);

    double dt() const { return T / steps; }
    double time(int i) const { return T * i / steps; }
    // Index of a grid time; throws when t is not on the grid.
    int index_of(double t) const;
};

struct DrivingPath {
    TimeGrid grid;
    Table B;    // (steps + 1) x n
    Table B0;   // (steps + 1) x d
};

struct GPath {
    DrivingPath driving;
    Table M;    // Ito area, (steps + 1) x d
    Table C;    // centre coordinate B0 + M / 2

    GroupElement at(int i) const;
    GroupElement end() const { return at(driving.grid.steps); }
};

// Per step: n horizontal increments, then d centre increments.
DrivingPath sample_driving(const Model& model, const TimeGrid& grid, NormalStream& rng);
// Increments supplied explicitly: rows are steps, columns n then d.
DrivingPath driving_from_increments(const TimeGrid& grid, const Table& increments, int n);

Table ito_area(const Model& model, const DrivingPath& driving);
Table ito_area_midpoint(const Model& model, const DrivingPath& driving);
// max over components of |sum_i omega(dB_i, dB_i)| / 2.
double stratonovich_gap(const Model& model, const DrivingPath& driving);

GPath simulate_g(const Model& model, DrivingPath driving);
GPath simulate_g(const Model& model, const TimeGrid& grid, NormalStream& rng);

struct Projection {
    GPath projected;    // g_P on the first m coordinates (zero-padded to n)
    Table defect_c;     // centre part of g_P^{-1} pi_P(g), computed through the group law
    Table defect_sum;   // (1/2) sum [omega(B, dB) - omega(PB, PdB)]
    Table complement;   // (I - P) B
};

Projection project_g(const Model& model, const GPath& gpath, int m);
// Re-evaluates the projection identity in exact rational arithmetic from the
// same double-valued increments.
bool projection_identity_exact(const Model& model, const DrivingPath& driving, int m);

// Running Riemann sum of |omega(B, .)|^2_{H* x C}.
std::vector<double> quadratic_variation(const Model& model, const DrivingPath& driving);

struct MonteCarloSpec {
    double T = 1.0;
    int steps = 100;
    std::size_t replicas = 10000;
    std::uint64_t seed = 42;
};

CheckRecord area_variance_check(const Model& model, const MonteCarloSpec& spec);
CheckRecord quadratic_variation_check(const Model& model, const MonteCarloSpec& spec);
std::vector<CheckRecord> midpoint_gap_check(const Model& model, const MonteCarloSpec& spec);
std::vector<CheckRecord> driving_moment_checks(const Model& model, const MonteCarloSpec& spec);

struct CmkReport {
    CheckRecord record;
    double target;
};
CmkReport cmk_check(double lambda, const MonteCarloSpec& spec);

struct ExpMomentReport {
    CheckRecord record;
    double plain_mean;
    double log_mean;
    double bound;
    double k;
    double c_k;
};
// c(k) with -ln cos(x) / 2 <= c(k) x^2 on [0, k].
double log_cos_constant(double k);
ExpMomentReport exp_moment_area(const Model& model, double lambda, double gamma, const MonteCarloSpec& spec);
CheckRecord supermartingale_check(const Model& model, const MonteCarloSpec& spec);

struct ConvergenceReport {
    std::vector<double> rms_gaps;
    std::vector<double> ratios;
    bool pass;
};
ConvergenceReport refinement_convergence(const Model& model, const MonteCarloSpec& spec, int halvings);

struct ProjectionTrend {
    std::vector<int> sizes;
    std::vector<Estimate> max_sq_gap;
    bool strictly_decreasing;
    bool identity_exact;
};
ProjectionTrend projection_convergence(const Model& model, const std::vector<int>& sizes, const MonteCarloSpec& spec);

// Summary statistics of M_T under an orthogonal change of basis on H.
std::vector<CheckRecord> basis_rotation_check(const Model& model, const MonteCarloSpec& spec);
// E|P B(T)|_W^2 <= E|B(T)|_W^2 for the coordinate projection onto the first m coordinates.
CheckRecord domination_check(const Model& model, int m, const MonteCarloSpec& spec);

} // namespace hlab

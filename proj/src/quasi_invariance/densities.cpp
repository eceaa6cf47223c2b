#include "hlab/quasi_invariance.hpp"

#include <stdexcept>

namespace hlab {

namespace {

Vec area_anchor(const DrivingPath& p, int i, AreaRule rule)
{
    if (rule == AreaRule::midpoint) return 0.5 * (p.B.row(i) + p.B.row(i + 1)).transpose();
    return p.B.row(i).transpose();
}

void require_fit(const CMPath& k, const TimeGrid& grid)
{
    if (!k.fits(grid)) throw std::invalid_argument("path knots are not on the simulation grid");
}

} // namespace

DensityEvaluation log_ztilde(const Model& model, const CMPath& k, const GPath& g, AreaRule rule)
{
    const DrivingPath& p = g.driving;
    const TimeGrid& grid = p.grid;
    require_fit(k, grid);
    DensityEvaluation out;
    auto& [h_int, h_energy, c_int, c_energy] = out.components;
    const double dt = grid.dt();
    for (int i = 0; i < grid.steps; ++i) {
        const double t0 = grid.time(i);
        const double t1 = grid.time(i + 1);
        const AlgebraElement rate = k.slope(t0, t1);
        const Vec A = k.at(t0).A;
        const Vec dB = (p.B.row(i + 1) - p.B.row(i)).transpose();
        const Vec dB0 = (p.B0.row(i + 1) - p.B0.row(i)).transpose();
        const Vec u = rate.a + 0.5 * model.form(A - 2.0 * area_anchor(p, i, rule), rate.A);
        h_int += rate.A.dot(dB);
        h_energy -= 0.5 * rate.A.squaredNorm() * dt;
        c_int += u.dot(dB0);
        c_energy -= 0.5 * u.squaredNorm() * dt;
    }
    out.log_value = h_int + h_energy + c_int + c_energy;
    return out;
}

DensityEvaluation log_zeta(const Model& model, const AlgebraElement& h, const GPath& g, AreaRule rule)
{
    const DrivingPath& p = g.driving;
    const TimeGrid& grid = p.grid;
    const double T = grid.T;
    const double dt = grid.dt();
    DensityEvaluation out;
    auto& [h_int, h_energy, c_int, c_energy] = out.components;
    h_int = h.A.dot(p.B.row(grid.steps).transpose()) / T;
    h_energy = -h.A.squaredNorm() / (2.0 * T);
    for (int i = 0; i < grid.steps; ++i) {
        const Vec dB0 = (p.B0.row(i + 1) - p.B0.row(i)).transpose();
        const Vec v = h.a - model.form(area_anchor(p, i, rule), h.A);
        c_int += v.dot(dB0) / T;
        c_energy -= v.squaredNorm() * dt / (2.0 * T * T);
    }
    out.log_value = h_int + h_energy + c_int + c_energy;
    return out;
}

GPath left_shift_path(const Model& model, const CMPath& k, const GPath& g)
{
    GPath out = g;
    const TimeGrid& grid = g.driving.grid;
    for (int i = 0; i <= grid.steps; ++i) {
        const AlgebraElement ki = k.at(grid.time(i));
        const GroupElement moved = multiply(model, exp_map(ki), g.at(i));
        out.driving.B.row(i) = moved.w.transpose();
        out.C.row(i) = moved.c.transpose();
    }
    out.M = 2.0 * (out.C - out.driving.B0);
    return out;
}

double path_score(const Model& model, const CMPath& k, const GPath& g, AreaRule rule)
{
    const DrivingPath& p = g.driving;
    const TimeGrid& grid = p.grid;
    require_fit(k, grid);
    double z = 0.0;
    for (int i = 0; i < grid.steps; ++i) {
        const AlgebraElement rate = k.slope(grid.time(i), grid.time(i + 1));
        const Vec dB = (p.B.row(i + 1) - p.B.row(i)).transpose();
        const Vec dB0 = (p.B0.row(i + 1) - p.B0.row(i)).transpose();
        z += rate.A.dot(dB) + (rate.a - model.form(area_anchor(p, i, rule), rate.A)).dot(dB0);
    }
    return z;
}

double heat_score(const Model& model, const AlgebraElement& h, const GPath& g, AreaRule rule)
{
    const DrivingPath& p = g.driving;
    const TimeGrid& grid = p.grid;
    double z = h.A.dot(p.B.row(grid.steps).transpose());
    for (int i = 0; i < grid.steps; ++i) {
        const Vec dB0 = (p.B0.row(i + 1) - p.B0.row(i)).transpose();
        z += (h.a - model.form(area_anchor(p, i, rule), h.A)).dot(dB0);
    }
    return z / grid.T;
}

} // namespace hlab

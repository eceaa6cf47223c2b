#include "hlab/stochastics.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

namespace hlab {

TimeGrid::TimeGrid(double horizon, int step_count) : T(horizon), steps(step_count)
{
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("time horizon must be positive");
    if (step_count < 1) throw std::invalid_argument("grid needs at least one step");
}

int TimeGrid::index_of(double t) const
{
    const double x = t / T * steps;
    const double r = std::round(x);
    if (r < 0 || r > steps || std::abs(x - r) > 1e-9) throw std::invalid_argument("time is not on the grid");
    return static_cast<int>(r);
}

GroupElement GPath::at(int i) const
{
    return {driving.B.row(i).transpose(), C.row(i).transpose()};
}

DrivingPath sample_driving(const Model& model, const TimeGrid& grid, NormalStream& rng)
{
    const int n = model.n();
    const int d = model.d();
    Table increments(grid.steps, n + d);
    const double sd = std::sqrt(grid.dt());
    for (int i = 0; i < grid.steps; ++i)
        for (int j = 0; j < n + d; ++j) increments(i, j) = sd * rng.normal();
    return driving_from_increments(grid, increments, n);
}

DrivingPath driving_from_increments(const TimeGrid& grid, const Table& increments, int n)
{
    if (increments.rows() != grid.steps || increments.cols() < n) throw DimensionError("increment table does not match grid");
    const auto d = increments.cols() - n;
    DrivingPath p{grid, Table::Zero(grid.steps + 1, n), Table::Zero(grid.steps + 1, d)};
    for (int i = 0; i < grid.steps; ++i) {
        p.B.row(i + 1) = p.B.row(i) + increments.row(i).head(n);
        p.B0.row(i + 1) = p.B0.row(i) + increments.row(i).tail(d);
    }
    return p;
}

namespace {

void check_driving(const Model& model, const DrivingPath& driving)
{
    if (driving.B.cols() != model.n() || driving.B0.cols() != model.d() || driving.B.rows() != driving.grid.steps + 1)
        throw DimensionError("driving path does not conform to model");
}

// Running sum of omega(x_i, dB_i), where x_i is B at the left point or the midpoint.
Table area_sum(const Model& model, const DrivingPath& driving, bool midpoint)
{
    check_driving(model, driving);
    const int n = model.n();
    const int d = model.d();
    Table M = Table::Zero(driving.grid.steps + 1, d);
    Vec dB(n), x(n), out(d);
    for (int i = 0; i < driving.grid.steps; ++i) {
        dB = (driving.B.row(i + 1) - driving.B.row(i)).transpose();
        if (midpoint)
            x = 0.5 * (driving.B.row(i) + driving.B.row(i + 1)).transpose();
        else
            x = driving.B.row(i).transpose();
        model.apply(x.data(), dB.data(), out.data());
        M.row(i + 1) = M.row(i) + out.transpose();
    }
    return M;
}

} // namespace

Table ito_area(const Model& model, const DrivingPath& driving) { return area_sum(model, driving, false); }

Table ito_area_midpoint(const Model& model, const DrivingPath& driving) { return area_sum(model, driving, true); }

double stratonovich_gap(const Model& model, const DrivingPath& driving)
{
    check_driving(model, driving);
    Vec dB(model.n()), out(model.d());
    Vec total = Vec::Zero(model.d());
    for (int i = 0; i < driving.grid.steps; ++i) {
        dB = (driving.B.row(i + 1) - driving.B.row(i)).transpose();
        model.apply(dB.data(), dB.data(), out.data());
        total += out;
    }
    return 0.5 * total.cwiseAbs().maxCoeff();
}

GPath simulate_g(const Model& model, DrivingPath driving)
{
    Table M = ito_area(model, driving);
    Table C = driving.B0 + 0.5 * M;
    return {std::move(driving), std::move(M), std::move(C)};
}

GPath simulate_g(const Model& model, const TimeGrid& grid, NormalStream& rng)
{
    return simulate_g(model, sample_driving(model, grid, rng));
}

Projection project_g(const Model& model, const GPath& gpath, int m)
{
    const int n = model.n();
    if (m < 1 || m > n) throw std::invalid_argument("projection size out of range");
    const DrivingPath& full = gpath.driving;
    DrivingPath proj = full;
    proj.B.rightCols(n - m).setZero();
    GPath projected = simulate_g(model, proj);

    const int rows = full.grid.steps + 1;
    const int d = model.d();
    Table defect_c(rows, d);
    for (int i = 0; i < rows; ++i) {
        const GroupElement pi{projected.driving.B.row(i).transpose(), gpath.C.row(i).transpose()};
        defect_c.row(i) = multiply(model, inverse(projected.at(i)), pi).c.transpose();
    }
    Table defect_sum = Table::Zero(rows, d);
    Vec dB(n), dPB(n), full_out(d), proj_out(d);
    for (int i = 0; i + 1 < rows; ++i) {
        dB = (full.B.row(i + 1) - full.B.row(i)).transpose();
        dPB = (proj.B.row(i + 1) - proj.B.row(i)).transpose();
        const Vec B = full.B.row(i).transpose();
        const Vec PB = proj.B.row(i).transpose();
        model.apply(B.data(), dB.data(), full_out.data());
        model.apply(PB.data(), dPB.data(), proj_out.data());
        defect_sum.row(i + 1) = defect_sum.row(i) + 0.5 * (full_out - proj_out).transpose();
    }
    Table complement = full.B - proj.B;
    return {std::move(projected), std::move(defect_c), std::move(defect_sum), std::move(complement)};
}

bool projection_identity_exact(const Model& model, const DrivingPath& driving, int m)
{
    check_driving(model, driving);
    const int n = model.n();
    const int d = model.d();
    if (m < 1 || m > n) throw std::invalid_argument("projection size out of range");
    using Q = mpq_class;
    const mpq_class half(1, 2);
    std::vector<Q> B(static_cast<std::size_t>(n), Q(0)), PB(B), B0(static_cast<std::size_t>(d), Q(0));
    std::vector<Q> M(static_cast<std::size_t>(d), Q(0)), MP(M), sum(M), out(M), pout(M);
    std::vector<Q> dB(static_cast<std::size_t>(n)), dPB(dB);
    for (int i = 0; i < driving.grid.steps; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto u = static_cast<std::size_t>(j);
            dB[u] = Q(driving.B(i + 1, j)) - Q(driving.B(i, j));
            dPB[u] = j < m ? dB[u] : Q(0);
        }
        model.apply(B.data(), dB.data(), out.data());
        model.apply(PB.data(), dPB.data(), pout.data());
        for (std::size_t l = 0; l < static_cast<std::size_t>(d); ++l) {
            M[l] += out[l];
            MP[l] += pout[l];
            sum[l] += half * (out[l] - pout[l]);
            B0[l] += Q(driving.B0(i + 1, static_cast<int>(l))) - Q(driving.B0(i, static_cast<int>(l)));
        }
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
            B[j] += dB[j];
            PB[j] += dPB[j];
        }
        // g_P^{-1} pi_P(g) = (-PB, -C_P)(PB, C) through the group law.
        std::vector<Q> negPB(PB.size()), w_part(PB.size()), cross(static_cast<std::size_t>(d));
        for (std::size_t j = 0; j < PB.size(); ++j) {
            negPB[j] = -PB[j];
            w_part[j] = negPB[j] + PB[j];
        }
        model.apply(negPB.data(), PB.data(), cross.data());
        for (std::size_t l = 0; l < static_cast<std::size_t>(d); ++l) {
            const Q C = B0[l] + half * M[l];
            const Q CP = B0[l] + half * MP[l];
            const Q defect = -CP + C + half * cross[l];
            if (defect != sum[l]) return false;
        }
        for (const Q& x : w_part)
            if (x != 0) return false;
    }
    return true;
}

std::vector<double> quadratic_variation(const Model& model, const DrivingPath& driving)
{
    check_driving(model, driving);
    std::vector<double> qv(static_cast<std::size_t>(driving.grid.steps + 1), 0.0);
    const double dt = driving.grid.dt();
    for (int i = 0; i < driving.grid.steps; ++i) {
        const Vec B = driving.B.row(i).transpose();
        double s = 0.0;
        for (const Mat& W : model.omega()) s += (W.transpose() * B).squaredNorm();
        qv[static_cast<std::size_t>(i + 1)] = qv[static_cast<std::size_t>(i)] + s * dt;
    }
    return qv;
}

} // namespace hlab

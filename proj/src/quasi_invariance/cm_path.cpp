#include "hlab/calculus.hpp"
#include "hlab/quasi_invariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hlab {

namespace {

AlgebraElement lerp(const AlgebraElement& x, const AlgebraElement& y, double s)
{
    return {x.A + s * (y.A - x.A), x.a + s * (y.a - x.a)};
}

bool on_grid(const TimeGrid& grid, double t)
{
    try {
        grid.index_of(t);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

} // namespace

CMPath::CMPath(std::vector<double> times, std::vector<AlgebraElement> values) : times_(std::move(times)), values_(std::move(values))
{
    if (times_.size() < 2 || times_.size() != values_.size()) throw std::invalid_argument("path needs matching knots and values");
    if (times_.front() != 0.0) throw std::invalid_argument("path must start at time 0");
    if (values_.front().A.norm() != 0.0 || values_.front().a.norm() != 0.0) throw std::invalid_argument("path must start at 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1])) throw std::invalid_argument("knot times must increase");
}

CMPath CMPath::linear(const AlgebraElement& h, double T)
{
    return CMPath({0.0, T}, {AlgebraElement{Vec::Zero(h.A.size()), Vec::Zero(h.a.size())}, h});
}

CMPath CMPath::zero(const Model& model, double T)
{
    return linear(AlgebraElement::zero(model), T);
}

AlgebraElement CMPath::at(double t) const
{
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto i = static_cast<std::size_t>(it - times_.begin()) - 1;
    return lerp(values_[i], values_[i + 1], (t - times_[i]) / (times_[i + 1] - times_[i]));
}

AlgebraElement CMPath::slope(double t0, double t1) const
{
    const double mid = 0.5 * (t0 + t1);
    if (mid >= times_.back()) return {Vec::Zero(values_.front().A.size()), Vec::Zero(values_.front().a.size())};
    const auto it = std::upper_bound(times_.begin(), times_.end(), mid);
    const auto i = static_cast<std::size_t>(it - times_.begin()) - 1;
    const double span = times_[i + 1] - times_[i];
    return {(values_[i + 1].A - values_[i].A) / span, (values_[i + 1].a - values_[i].a) / span};
}

double CMPath::energy() const
{
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        const double span = times_[i + 1] - times_[i];
        e += ((values_[i + 1].A - values_[i].A).squaredNorm() + (values_[i + 1].a - values_[i].a).squaredNorm()) / span;
    }
    return e;
}

bool CMPath::fits(const TimeGrid& grid) const
{
    return std::all_of(times_.begin(), times_.end(), [&](double t) { return t > grid.T + 1e-12 || on_grid(grid, t); });
}

std::vector<GroupElement> path_points(const GPath& g)
{
    std::vector<GroupElement> pts;
    pts.reserve(static_cast<std::size_t>(g.driving.grid.steps + 1));
    for (int i = 0; i <= g.driving.grid.steps; ++i) pts.push_back(g.at(i));
    return pts;
}

double PathFunctional::evaluate(const TimeGrid& grid, const std::vector<GroupElement>& path) const
{
    double v = 1.0;
    for (std::size_t m = 0; m < factors.size(); ++m) v *= hlab::evaluate(factors[m], path[static_cast<std::size_t>(grid.index_of(times[m]))]);
    return v;
}

std::vector<Polynomial> PathFunctional::shift_derivatives(const Model& model, const CMPath& k) const
{
    std::vector<Polynomial> out;
    for (std::size_t m = 0; m < factors.size(); ++m) out.push_back(right_derivative(model, k.at(times[m]), factors[m]));
    return out;
}

double PathFunctional::shift_derivative(const std::vector<Polynomial>& derivatives, const TimeGrid& grid,
                                        const std::vector<GroupElement>& path) const
{
    std::vector<double> values;
    std::vector<double> derivs;
    for (std::size_t m = 0; m < factors.size(); ++m) {
        const GroupElement& g = path[static_cast<std::size_t>(grid.index_of(times[m]))];
        values.push_back(hlab::evaluate(factors[m], g));
        derivs.push_back(hlab::evaluate(derivatives[m], g));
    }
    double total = 0.0;
    for (std::size_t m = 0; m < factors.size(); ++m) {
        double term = derivs[m];
        for (std::size_t o = 0; o < factors.size(); ++o)
            if (o != m) term *= values[o];
        total += term;
    }
    return total;
}

} // namespace hlab

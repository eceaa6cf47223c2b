#include "hlab/geometry.hpp"
#include "hlab/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hlab {

namespace {

void check_path(const DiscretePath& path)
{
    if (path.points.size() < 2) throw std::invalid_argument("path needs at least two points");
    if (path.times.size() != path.points.size()) throw std::invalid_argument("path times and points differ in length");
    for (std::size_t i = 1; i < path.times.size(); ++i)
        if (!(path.times[i] > path.times[i - 1])) throw std::invalid_argument("path times must be strictly increasing");
}

// |dg - [base, dg]/2| for one piecewise-linear step.
double segment_length(const Model& model, const Vec& base_w, const GroupElement& from, const GroupElement& to, Vec& scratch)
{
    const Vec dw = to.w - from.w;
    model.apply(base_w.data(), dw.data(), scratch.data());
    const Vec dc = (to.c - from.c) - 0.5 * scratch;
    return std::sqrt(dw.squaredNorm() + dc.squaredNorm());
}

std::vector<double> uniform_times(std::size_t points)
{
    std::vector<double> t(points);
    for (std::size_t i = 0; i < points; ++i) t[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return t;
}

class KnotDescent {
public:
    KnotDescent(const Model& model, std::vector<GroupElement> points) : model_(model), points_(std::move(points)), scratch_(model.d()) {}

    double total() const
    {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < points_.size(); ++i) s += seg(i);
        return s;
    }

    // Returns (converged, sweeps).
    std::pair<bool, int> run(int iters, double step, double tol)
    {
        const auto n = static_cast<Eigen::Index>(model_.n());
        const auto dims = n + model_.d();
        int sweep = 0;
        for (; sweep < iters && step > tol; ++sweep) {
            bool improved = false;
            for (std::size_t k = 1; k + 1 < points_.size(); ++k)
                for (Eigen::Index coord = 0; coord < dims; ++coord) {
                    const double before = seg(k - 1) + seg(k);
                    double& x = coord < n ? points_[k].w(coord) : points_[k].c(coord - n);
                    const double original = x;
                    double best = before;
                    double best_x = original;
                    for (double sgn : {1.0, -1.0}) {
                        x = original + sgn * step;
                        const double trial = seg(k - 1) + seg(k);
                        if (trial < best) {
                            best = trial;
                            best_x = x;
                        }
                    }
                    x = best_x;
                    if (best < before - 1e-15 * std::max(1.0, before)) improved = true;
                }
            if (!improved) step *= 0.5;
        }
        return {step <= tol, sweep};
    }

    const std::vector<GroupElement>& points() const { return points_; }

private:
    double seg(std::size_t i) const { return segment_length(model_, points_[i].w, points_[i], points_[i + 1], scratch_); }

    const Model& model_;
    std::vector<GroupElement> points_;
    mutable Vec scratch_;
};

// Sample the loop gadgets of a cc_upper plan; loop_steps lists the step count of each active loop.
std::vector<GroupElement> gadget_points(const Model& model, const GroupElement& target, const CcUpper& plan, const std::vector<int>& loop_steps)
{
    std::size_t next = 0;
    std::vector<GroupElement> pts;
    pts.push_back(GroupElement::identity(model));
    GroupElement corner{target.w, Vec::Zero(model.d())};
    if (target.w.norm() > 0.0) pts.push_back(corner);
    for (const LoopGadget& loop : plan.loops) {
        if (loop.coefficient == 0.0) continue;
        const double r = std::sqrt(std::abs(loop.coefficient));
        const Vec A = (loop.coefficient < 0.0 ? -r : r) * Vec::Unit(model.n(), loop.first);
        const Vec B = r * Vec::Unit(model.n(), loop.second);
        const DiscretePath piece = horizontal_loop(model, A, B, loop_steps.at(next++));
        const GroupElement start = pts.back();
        for (std::size_t i = 1; i < piece.points.size(); ++i) pts.push_back(multiply(model, start, piece.points[i]));
    }
    // Land exactly on the target despite round-off in the accumulated products.
    pts.back() = target;
    return pts;
}

} // namespace

double path_length(const Model& model, const DiscretePath& path)
{
    check_path(path);
    Vec scratch(model.d());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i)
        total += segment_length(model, path.points[i].w, path.points[i], path.points[i + 1], scratch);
    return total;
}

double path_length_midpoint(const Model& model, const DiscretePath& path)
{
    check_path(path);
    Vec scratch(model.d());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        const Vec mid = 0.5 * (path.points[i].w + path.points[i + 1].w);
        total += segment_length(model, mid, path.points[i], path.points[i + 1], scratch);
    }
    return total;
}

DiscretePath straight_path(const GroupElement& x, const GroupElement& y, int segments)
{
    if (segments < 1) throw std::invalid_argument("need at least one segment");
    DiscretePath path;
    path.times = uniform_times(static_cast<std::size_t>(segments) + 1);
    for (int i = 0; i <= segments; ++i) {
        const double s = static_cast<double>(i) / segments;
        path.points.push_back(add(scale(1.0 - s, x), scale(s, y)));
    }
    path.points.back() = y;
    return path;
}

DiscretePath dilate_path(double lambda, const DiscretePath& path)
{
    DiscretePath out{path.times, {}};
    for (const GroupElement& g : path.points) out.points.push_back(dilate(lambda, g));
    return out;
}

DiscretePath left_translate_path(const Model& model, const GroupElement& x, const DiscretePath& path)
{
    DiscretePath out{path.times, {}};
    for (const GroupElement& g : path.points) out.points.push_back(multiply(model, x, g));
    return out;
}

double straight_line_bound(const Model& model, const GroupElement& x, const GroupElement& y, double c_constant)
{
    check_conforms(model, x);
    check_conforms(model, y);
    const double near = std::min(gcm_norm(x), gcm_norm(y));
    return (1.0 + 0.5 * c_constant * near) * gcm_norm(subtract(y, x));
}

double straight_line_bound(const Model& model, const GroupElement& x, const GroupElement& y)
{
    return straight_line_bound(model, x, y, compute_constants(model).c_constant);
}

DistanceEstimate optimize_distance(const Model& model, const GroupElement& x, const GroupElement& y, int segments, int iters)
{
    if (segments < 2) throw std::invalid_argument("optimize_distance needs at least two segments");
    check_conforms(model, x);
    check_conforms(model, y);
    const double tol = 1e-10;

    DistanceEstimate best;
    const DiscretePath straight = straight_path(x, y, segments);
    best.straight_length = path_length(model, straight);

    const double scale_hint = std::max(gcm_norm(subtract(y, x)), 1e-3);
    auto descend = [&](std::vector<GroupElement> start) {
        KnotDescent opt(model, std::move(start));
        const auto [converged, sweeps] = opt.run(iters, 0.25 * scale_hint / segments, tol * std::max(1.0, scale_hint));
        DistanceEstimate e;
        e.path.times = uniform_times(opt.points().size());
        e.path.points = opt.points();
        e.estimate = opt.total();
        e.converged = converged;
        e.sweeps = sweeps;
        return e;
    };

    best = [&] {
        DistanceEstimate e = descend(straight.points);
        e.straight_length = best.straight_length;
        return e;
    }();

    // Loop-based start when the form is total and enough knots remain.
    const GroupElement rel = multiply(model, inverse(x), y);
    if (!model.is_abelian() && form_rank(model) == model.d()) {
        const CcUpper plan = cc_upper(model, rel);
        int active = 0;
        for (const LoopGadget& loop : plan.loops) active += loop.coefficient != 0.0 ? 1 : 0;
        const int ray = rel.w.norm() > 0.0 ? 1 : 0;
        if (active > 0 && (segments - ray) / active >= 8) {
            std::vector<int> loop_steps(static_cast<std::size_t>(active), (segments - ray) / active);
            for (int extra = 0; extra < (segments - ray) % active; ++extra) ++loop_steps[static_cast<std::size_t>(extra)];
            {
                std::vector<GroupElement> start;
                for (const GroupElement& g : gadget_points(model, rel, plan, loop_steps)) start.push_back(multiply(model, x, g));
                start.front() = x;
                start.back() = y;
                DistanceEstimate e = descend(std::move(start));
                if (e.estimate < best.estimate) {
                    e.straight_length = best.straight_length;
                    e.seeded_from_loops = true;
                    best = std::move(e);
                }
            }
        }
    }
    return best;
}

DiscretePath horizontal_loop(const Model& model, const Vec& A, const Vec& B, int steps)
{
    if (steps < 8) throw std::invalid_argument("horizontal_loop needs at least 8 steps");
    if (A.size() != model.n() || B.size() != model.n()) throw DimensionError("loop generators must have length n");
    const Vec area = model.form(A, B);
    DiscretePath path;
    for (int k = 0; k <= steps; ++k) {
        const double t = 2.0 * std::numbers::pi * k / steps;
        path.times.push_back(t);
        // g(t) = (xi(t) - A, (t - sin t) omega(A, B) / 2) with xi = A cos t + B sin t.
        path.points.push_back({A * (std::cos(t) - 1.0) + B * std::sin(t), 0.5 * (t - std::sin(t)) * area});
    }
    path.points.back() = {Vec::Zero(model.n()), std::numbers::pi * area};
    return path;
}

DiscretePath horizontal_lift(const Model& model, const std::vector<double>& times, const std::vector<Vec>& w_points, const Vec& c0)
{
    if (times.size() != w_points.size() || times.size() < 2) throw std::invalid_argument("need matching times and at least two points");
    DiscretePath path{times, {}};
    Vec c = c0;
    Vec scratch(model.d());
    path.points.push_back({w_points.front(), c});
    for (std::size_t i = 0; i + 1 < w_points.size(); ++i) {
        const Vec dw = w_points[i + 1] - w_points[i];
        model.apply(w_points[i].data(), dw.data(), scratch.data());
        c += 0.5 * scratch;
        path.points.push_back({w_points[i + 1], c});
    }
    return path;
}

CcUpper cc_upper(const Model& model, const GroupElement& target)
{
    check_conforms(model, target);
    const int n = model.n();
    const int d = model.d();
    CcUpper out;
    out.horizontal_part = target.w.norm();
    out.value = out.horizontal_part;

    std::vector<std::pair<int, int>> chosen;
    Mat images(d, 0);
    for (int i = 0; i < n && static_cast<int>(chosen.size()) < d; ++i)
        for (int j = i + 1; j < n && static_cast<int>(chosen.size()) < d; ++j) {
            Mat trial(d, images.cols() + 1);
            trial << images, model.form(Vec::Unit(n, i), Vec::Unit(n, j));
            Eigen::ColPivHouseholderQR<Mat> qr(trial);
            qr.setThreshold(1e-10);
            if (qr.rank() == trial.cols()) {
                images = std::move(trial);
                chosen.emplace_back(i, j);
            }
        }
    if (static_cast<int>(chosen.size()) < d) throw std::domain_error("form not total");

    const Vec coeffs = (std::numbers::pi * images).colPivHouseholderQr().solve(target.c);
    for (int l = 0; l < d; ++l) {
        out.loops.push_back({chosen[static_cast<std::size_t>(l)].first, chosen[static_cast<std::size_t>(l)].second, coeffs(l)});
        // Each loop has orthonormal generators scaled by sqrt|coefficient|, so its length is 2 pi sqrt|coefficient|.
        out.value += 2.0 * std::numbers::pi * std::sqrt(std::abs(coeffs(l)));
    }
    return out;
}

DiscretePath cc_gadget_path(const Model& model, const GroupElement& target, const CcUpper& plan, int steps_per_loop)
{
    DiscretePath path;
    std::vector<int> loop_steps;
    for (const LoopGadget& loop : plan.loops)
        if (loop.coefficient != 0.0) loop_steps.push_back(steps_per_loop);
    path.points = gadget_points(model, target, plan, loop_steps);
    path.times = uniform_times(path.points.size());
    return path;
}

double rho_squared(const Model& model, const GroupElement& g)
{
    check_conforms(model, g);
    return model.w_weights().dot(g.w.cwiseAbs2()) + g.c.norm();
}

HorizontalFlag is_horizontal(const Model& model, const DiscretePath& path)
{
    check_path(path);
    HorizontalFlag flag;
    Vec scratch(model.d());
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        const Vec dw = path.points[i + 1].w - path.points[i].w;
        model.apply(path.points[i].w.data(), dw.data(), scratch.data());
        const double defect = ((path.points[i + 1].c - path.points[i].c) - 0.5 * scratch).norm() / (path.times[i + 1] - path.times[i]);
        flag.max_center_defect = std::max(flag.max_center_defect, defect);
    }
    return flag;
}

} // namespace hlab

#pragma once

#include "hlab/group.hpp"

#include <vector>

namespace hlab {

struct DiscretePath {
    std::vector<double> times;
    std::vector<GroupElement> points;

    std::size_t size() const { return points.size(); }
};

struct HorizontalFlag {
    double max_center_defect = 0.0;
};

// Sum over steps of |dg - [g_i, dg]/2|, the exact length of the
// piecewise-linear interpolant.
double path_length(const Model& model, const DiscretePath& path);
double path_length_midpoint(const Model& model, const DiscretePath& path);

DiscretePath straight_path(const GroupElement& x, const GroupElement& y, int segments);
DiscretePath dilate_path(double lambda, const DiscretePath& path);
DiscretePath left_translate_path(const Model& model, const GroupElement& x, const DiscretePath& path);

double straight_line_bound(const Model& model, const GroupElement& x, const GroupElement& y, double c_constant);
double straight_line_bound(const Model& model, const GroupElement& x, const GroupElement& y);

struct DistanceEstimate {
    double estimate = 0.0;
    double straight_length = 0.0;
    DiscretePath path;
    bool converged = false;
    int sweeps = 0;
    bool seeded_from_loops = false;
};

// Coordinate descent over the interior knots of a piecewise-linear path. Starts
// from the straight line and, when the form is total and the knot budget allows,
// also from the loop construction behind cc_upper; the shorter result wins.
DistanceEstimate optimize_distance(const Model& model, const GroupElement& x, const GroupElement& y, int segments, int iters);

DiscretePath horizontal_loop(const Model& model, const Vec& A, const Vec& B, int steps);
// Exactly horizontal path over the given w-points: c_{i+1} = c_i + omega(w_i, dw_i)/2.
DiscretePath horizontal_lift(const Model& model, const std::vector<double>& times, const std::vector<Vec>& w_points, const Vec& c0);

struct LoopGadget {
    int first;
    int second;
    double coefficient;   // centre contribution = coefficient * pi * omega(e_first, e_second)
};

struct CcUpper {
    double value = 0.0;
    double horizontal_part = 0.0;
    std::vector<LoopGadget> loops;
};

// Throws std::domain_error("form not total") when {omega(e_i, e_j)} does not span R^d.
CcUpper cc_upper(const Model& model, const GroupElement& target);
// Ray to (A, 0) followed by the loops, each sampled with the given step count.
DiscretePath cc_gadget_path(const Model& model, const GroupElement& target, const CcUpper& plan, int steps_per_loop);

double rho_squared(const Model& model, const GroupElement& g);
HorizontalFlag is_horizontal(const Model& model, const DiscretePath& path);

} // namespace hlab

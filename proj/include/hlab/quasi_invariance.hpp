#pragma once

#include "hlab/polynomial.hpp"
#include "hlab/stochastics.hpp"

#include <array>
#include <string>
#include <vector>

namespace hlab {

// Piecewise-linear finite-energy path in g_CM, zero at time 0.
class CMPath {
public:
    CMPath(std::vector<double> times, std::vector<AlgebraElement> values);
    // t -> (t / T) h on [0, T].
    static CMPath linear(const AlgebraElement& h, double T);
    static CMPath zero(const Model& model, double T);

    AlgebraElement at(double t) const;
    // Derivative on the segment containing [t0, t1]; the interval must not straddle a knot.
    AlgebraElement slope(double t0, double t1) const;
    double energy() const;
    const std::vector<double>& times() const { return times_; }
    const std::vector<AlgebraElement>& values() const { return values_; }
    // Every knot lies on the grid.
    bool fits(const TimeGrid& grid) const;

private:
    std::vector<double> times_;
    std::vector<AlgebraElement> values_;
};

// Product of cylinder polynomials evaluated at fixed grid times.
struct PathFunctional {
    std::string name;
    std::vector<double> times;
    std::vector<Polynomial> factors;

    double evaluate(const TimeGrid& grid, const std::vector<GroupElement>& path) const;
    // Factor-wise derivatives d/ds f_m((s k(t_m)) g) at s = 0.
    std::vector<Polynomial> shift_derivatives(const Model& model, const CMPath& k) const;
    // d/ds F((s k) g) at s = 0 from the factor-wise derivatives.
    double shift_derivative(const std::vector<Polynomial>& derivatives, const TimeGrid& grid, const std::vector<GroupElement>& path) const;
};

std::vector<GroupElement> path_points(const GPath& g);

// Where B is read inside the centre drift term of the densities. The left point
// is the plain Ito discretization; the step midpoint makes the discrete change
// of measure exact for the pointwise left shift.
enum class AreaRule { left_point, midpoint };

struct DensityEvaluation {
    double log_value = 0.0;
    // H stochastic integral, H energy, C stochastic integral, C energy.
    std::array<double, 4> components{};
};

DensityEvaluation log_ztilde(const Model& model, const CMPath& k, const GPath& g, AreaRule rule = AreaRule::left_point);
DensityEvaluation log_zeta(const Model& model, const AlgebraElement& h, const GPath& g, AreaRule rule = AreaRule::left_point);
// Pointwise k(t) g(t); B0 is kept and M is rebuilt so that C = B0 + M / 2.
GPath left_shift_path(const Model& model, const CMPath& k, const GPath& g);

// Derivative at s = 0 of log Z~ for the path s k.
double path_score(const Model& model, const CMPath& k, const GPath& g, AreaRule rule = AreaRule::left_point);
// Same for k(t) = (t / T) h.
double heat_score(const Model& model, const AlgebraElement& h, const GPath& g, AreaRule rule = AreaRule::left_point);

struct QiSpec {
    MonteCarloSpec mc;
    AreaRule rule = AreaRule::left_point;
};

CheckRecord ztilde_normalization(const Model& model, const CMPath& k, const QiSpec& spec);
CheckRecord zeta_normalization(const Model& model, const AlgebraElement& h, const QiSpec& spec);

CheckRecord path_qi_check(const Model& model, const CMPath& k, const PathFunctional& F, const QiSpec& spec);
CheckRecord heat_qi_check(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec);
CheckRecord right_qi_check(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec);

CheckRecord ibp_path(const Model& model, const CMPath& k, const PathFunctional& F, const QiSpec& spec);
CheckRecord ibp_heat(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec);
CheckRecord ibp_heat_left(const Model& model, const AlgebraElement& h, const Polynomial& f, const std::string& label, const QiSpec& spec);
// Leibniz rule for the left-invariant derivative (exact) and the resulting
// adjoint relation for the gradient (Monte Carlo).
std::vector<CheckRecord> gradient_adjoint_check(const Model& model, const AlgebraElement& h, const Polynomial& u, const Polynomial& v,
                                                const QiSpec& spec);

struct QiCase {
    std::string name;
    AlgebraElement h;
    Polynomial f;
};
// Six (h, f) pairs used for the dual-estimator checks.
std::vector<QiCase> qi_case_suite(const Model& model);

// (1 - e^{-kT}) / k, equal to T at k = 0.
double lsi_time_factor(double k, double T);

struct NamedTest {
    std::string name;
    Polynomial f;
};

// E f(h g(T)) <= exp(c(k(omega) T) (p - 1) d^2 / (2T)) (E f^q(g(T)))^{1/q}.
std::vector<CheckRecord> lp_bound_dual_check(const Model& model, const AlgebraElement& h, double p, const std::vector<NamedTest>& tests,
                                             const MonteCarloSpec& spec, double distance);
std::vector<NamedTest> lp_test_suite(const Model& model);
// Distance estimate fed into the bound: the shortest path found by the optimizer.
double lp_distance(const Model& model, const AlgebraElement& h);

// Ent(f^2) <= 2 ((1 - e^{-kT}) / k) E|grad f|^2, with x log x := 0 at 0. Passes
// when the point margin is positive.
CheckRecord lsi_check(const Model& model, const NamedTest& f, const MonteCarloSpec& spec);
std::vector<NamedTest> lsi_test_suite(const Model& model);

struct MomentProbe {
    std::vector<std::size_t> sizes;
    std::vector<LogMeanExp> estimates;
    bool stable = false;
    CheckRecord record;
};
MomentProbe density_moment_probe(const Model& model, const CMPath& k, double p, const QiSpec& spec);

} // namespace hlab

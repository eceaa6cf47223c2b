#pragma once

#include "hlab/polynomial.hpp"
#include "hlab/stochastics.hpp"

#include <string>
#include <vector>

namespace hlab {

// Endpoints g(T) of independent group Brownian motions, with their areas M_T.
struct EndpointSample {
    std::vector<GroupElement> elements;
    std::vector<Vec> areas;
    TimeGrid grid;
    std::uint64_t seed = 0;

    std::size_t size() const { return elements.size(); }
};

EndpointSample sample_nu(const Model& model, const MonteCarloSpec& spec, StreamTag tag = StreamTag::generic);

struct NamedPolynomial {
    std::string name;
    Polynomial f;
};

// nu_T(f) from one sample set against f(e) + (1/2) int_0^T nu_t(Lf) dt from
// another, the time integral by the trapezoid rule over `intervals` snapshots.
CheckRecord heat_equation_check(const Model& model, const NamedPolynomial& f, const MonteCarloSpec& spec, int intervals = 16);

// Fixed suite of eight polynomials of degree at most four.
std::vector<NamedPolynomial> heat_polynomial_suite(const Model& model);

// Paired comparison of f(g) and f(g^{-1}) on one sample.
std::vector<CheckRecord> inversion_check(const Model& model, const EndpointSample& sample, const std::vector<NamedPolynomial>& fs);

struct ExpRhoReport {
    std::vector<std::size_t> sizes;     // N/4, N/2, N
    std::vector<LogMeanExp> estimates;
    bool stable = false;
    CheckRecord record;
};
ExpRhoReport exp_rho_moment(const Model& model, double epsilon, const EndpointSample& sample);

// Endpoint moments of |M_T|: p = 2 against its closed form and p = 4 against
// the hypercontractive bound for second-chaos variables.
std::vector<CheckRecord> moment_report(const Model& model, const EndpointSample& sample);

struct GrowthReport {
    double p;
    std::vector<double> times;
    std::vector<double> moments;
    double slope;
    CheckRecord record;
};
// Regression slope of log E|M_T|^p against log T.
GrowthReport moment_growth(const Model& model, double p, const std::vector<double>& times, const MonteCarloSpec& spec);

// g(T) against g(1) with w and B0 scaled by sqrt T and the area by T, through
// first and second moments.
std::vector<CheckRecord> scaling_check(const Model& model, const MonteCarloSpec& spec);

} // namespace hlab

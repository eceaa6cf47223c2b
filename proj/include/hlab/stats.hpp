#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hlab {

struct Estimate {
    double mean = 0.0;
    double se = 0.0;
    std::size_t count = 0;
};

// Mean and standard error, summed in index order.
Estimate estimate(std::span<const double> values);

// Log-domain mean of exp(values): log of the average, computed with a max shift.
struct LogMeanExp {
    double log_mean;
    double mean;     // exp(log_mean), may overflow to inf
    double se;       // delta-method standard error of mean
    double log_se;   // standard error of log_mean
};
LogMeanExp log_mean_exp(std::span<const double> log_values);

// One executed identity or inequality check.
struct CheckRecord {
    std::string name;
    std::string anchor;
    double lhs = 0.0;
    double rhs = 0.0;
    double se_lhs = 0.0;
    double se_rhs = 0.0;
    double margin = 0.0;
    std::string rule;
    bool pass = false;
};

// |lhs - rhs| <= k * sqrt(se_lhs^2 + se_rhs^2).
CheckRecord two_sided(std::string name, std::string anchor, Estimate lhs, Estimate rhs, double k = 4.0);
// Exact oracle on one side.
CheckRecord against_value(std::string name, std::string anchor, Estimate lhs, double target, double k = 4.0);
// lhs <= rhs + k * sqrt(se_lhs^2 + se_rhs^2).
CheckRecord one_sided(std::string name, std::string anchor, Estimate lhs, Estimate rhs, double k = 4.0);
// Deterministic comparison |lhs - rhs| <= tol.
CheckRecord exact(std::string name, std::string anchor, double lhs, double rhs, double tol);

} // namespace hlab

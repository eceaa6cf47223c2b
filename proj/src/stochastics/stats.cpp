#include "hlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hlab {

namespace {

// Neumaier compensated sum, in index order.
template <class Fn>
double compensated_sum(std::span<const double> values, Fn term)
{
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        const double x = term(v);
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + carry;
}

} // namespace

Estimate estimate(std::span<const double> values)
{
    Estimate e;
    e.count = values.size();
    if (values.empty()) return e;
    e.mean = compensated_sum(values, [](double v) { return v; }) / static_cast<double>(values.size());
    if (values.size() < 2) return e;
    const double ss = compensated_sum(values, [&](double v) { return (v - e.mean) * (v - e.mean); });
    e.se = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
    return e;
}

LogMeanExp log_mean_exp(std::span<const double> log_values)
{
    if (log_values.empty()) return {-std::numeric_limits<double>::infinity(), 0.0, 0.0, 0.0};
    const double shift = *std::max_element(log_values.begin(), log_values.end());
    std::vector<double> scaled;
    scaled.reserve(log_values.size());
    for (double v : log_values) scaled.push_back(std::exp(v - shift));
    const Estimate e = estimate(scaled);
    LogMeanExp out{};
    out.log_mean = shift + std::log(e.mean);
    out.mean = std::exp(out.log_mean);
    out.log_se = e.mean > 0.0 ? e.se / e.mean : 0.0;
    out.se = out.mean * out.log_se;
    return out;
}

namespace {

std::string describe(const char* op, double k)
{
    std::ostringstream s;
    s << op << " within " << k << " SE";
    return s.str();
}

} // namespace

CheckRecord two_sided(std::string name, std::string anchor, Estimate lhs, Estimate rhs, double k)
{
    CheckRecord r{std::move(name), std::move(anchor), lhs.mean, rhs.mean, lhs.se, rhs.se, 0.0, describe("|lhs-rhs|", k), false};
    const double se = std::hypot(lhs.se, rhs.se);
    r.margin = k * se - std::abs(lhs.mean - rhs.mean);
    r.pass = std::isfinite(r.margin) && r.margin >= 0.0;
    return r;
}

CheckRecord against_value(std::string name, std::string anchor, Estimate lhs, double target, double k)
{
    return two_sided(std::move(name), std::move(anchor), lhs, Estimate{target, 0.0, 0}, k);
}

CheckRecord one_sided(std::string name, std::string anchor, Estimate lhs, Estimate rhs, double k)
{
    CheckRecord r{std::move(name), std::move(anchor), lhs.mean, rhs.mean, lhs.se, rhs.se, 0.0, describe("lhs<=rhs", k), false};
    r.margin = rhs.mean - lhs.mean + k * std::hypot(lhs.se, rhs.se);
    r.pass = std::isfinite(r.margin) && r.margin >= 0.0;
    return r;
}

CheckRecord exact(std::string name, std::string anchor, double lhs, double rhs, double tol)
{
    std::ostringstream rule;
    rule << "|lhs-rhs| <= " << tol;
    CheckRecord r{std::move(name), std::move(anchor), lhs, rhs, 0.0, 0.0, 0.0, rule.str(), false};
    r.margin = tol - std::abs(lhs - rhs);
    r.pass = std::isfinite(r.margin) && r.margin >= 0.0;
    return r;
}

} // namespace hlab

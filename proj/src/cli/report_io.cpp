#include "hlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hlab {

using nlohmann::json;

namespace {

// Non-finite values become null in JSON.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_number(double x)
{
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string report_json(const Report& report)
{
    json checks = json::array();
    for (const CheckRecord& r : report.records) {
        checks.push_back({{"name", r.name},
                          {"anchor", r.anchor},
                          {"lhs", number(r.lhs)},
                          {"rhs", number(r.rhs)},
                          {"se_lhs", number(r.se_lhs)},
                          {"se_rhs", number(r.se_rhs)},
                          {"stderr", number(std::hypot(r.se_lhs, r.se_rhs))},
                          {"margin", number(r.margin)},
                          {"tolerance_rule", r.rule},
                          {"pass", r.pass}});
    }
    const json doc{{"environment", report.environment}, {"checks", checks}, {"pass", report.pass()}};
    return doc.dump(2) + "\n";
}

std::string report_csv(const Report& report)
{
    std::ostringstream out;
    out << "name,anchor,lhs,rhs,se_lhs,se_rhs,margin,tolerance_rule,pass\n";
    for (const CheckRecord& r : report.records) {
        out << csv_field(r.name) << ',' << csv_field(r.anchor) << ',' << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ','
            << csv_number(r.se_lhs) << ',' << csv_number(r.se_rhs) << ',' << csv_number(r.margin) << ',' << csv_field(r.rule) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string format_report(const Report& report, const std::string& format)
{
    if (format == "json") return report_json(report);
    if (format == "csv") return report_csv(report);
    throw ConfigError("unknown output format: " + format);
}

} // namespace hlab

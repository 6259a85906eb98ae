#include "sps/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sps {

IdentityReport make_report(std::string name, std::map<std::string, double> params,
                           double residual, double tolerance) {
  IdentityReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  return r;
}

void sort_reports(std::vector<IdentityReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const IdentityReport& a, const IdentityReport& b) {
                     if (a.name != b.name) return a.name < b.name;
                     return a.params < b.params;
                   });
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const IdentityReport& r) { return r.pass; });
}

std::size_t count_failures(const std::vector<IdentityReport>& reports) {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(),
                    [](const IdentityReport& r) { return !r.pass; }));
}

namespace {

std::string format_value(double v) {
  // Integer-valued parameters print without a decimal point.
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_params(const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [key, value] : params) {
    if (!out.empty()) out += ", ";
    out += key + "=" + format_value(value);
  }
  return out;
}

}  // namespace

std::string render_text(const std::vector<IdentityReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.params.empty()) os << " (" << format_params(r.params) << ")";
    char buf[64];
    std::snprintf(buf, sizeof(buf), " residual=%.3e tol=%.3e", r.residual, r.tolerance);
    os << buf << "\n";
  }
  return os.str();
}

std::string render_json(const std::vector<IdentityReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json item;
    item["name"] = r.name;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.params) params[key] = value;
    item["params"] = params;
    item["residual"] = r.residual;
    item["tolerance"] = r.tolerance;
    item["pass"] = r.pass;
    arr.push_back(item);
  }
  return arr.dump(2);
}

}  // namespace sps

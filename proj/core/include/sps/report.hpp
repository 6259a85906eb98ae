#pragma once

#include <map>
#include <string>
#include <vector>

namespace sps {

// Outcome of one numerical identity check. The residual measures the defect
// of the identity (typically an operator norm of a difference) and the check
// passes when the residual stays within the tolerance. Exact integer checks
// report residual 0 on success and the integer defect magnitude on failure.
struct IdentityReport {
  std::string name;
  std::map<std::string, double> params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

IdentityReport make_report(std::string name, std::map<std::string, double> params,
                           double residual, double tolerance);

// Orders reports by name and then by parameter values so that rendered
// output is stable across runs.
void sort_reports(std::vector<IdentityReport>& reports);

bool all_pass(const std::vector<IdentityReport>& reports);

std::size_t count_failures(const std::vector<IdentityReport>& reports);

// One line per check, e.g. "[PASS] gee_gram (m=3) residual=1.2e-12 tol=1e-09".
std::string render_text(const std::vector<IdentityReport>& reports);

// JSON array with deterministic key order, suitable for machine consumption.
std::string render_json(const std::vector<IdentityReport>& reports);

}  // namespace sps

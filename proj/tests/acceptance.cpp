// Acceptance gate: one timed criterion per line, process exit code equal to
// the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "sps/fusion.hpp"
#include "sps/kk.hpp"
#include "sps/linalg.hpp"
#include "sps/ncpoly.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/su2.hpp"
#include "sps/system.hpp"
#include "sps/toeplitz.hpp"

using namespace sps;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

bool clean(const std::vector<IdentityReport>& reports) {
  return !reports.empty() && all_pass(reports);
}

// Full registry sweep over n in {1..6} up to degree forty, exact integer
// identities, under one second.
bool c01() {
  for (int n = 1; n <= 6; ++n) {
    if (!clean(verify_sequence_identities(n, 40))) return false;
  }
  return true;
}

// Constructed fiber dimensions equal the recurrence values.
bool c02() {
  const std::vector<std::pair<int, int>> cases = {{1, 8}, {2, 5}, {3, 4}};
  for (const auto& [n, top] : cases) {
    SubproductSystem sys = build_system(n, top);
    const std::vector<Int> dims = dim_sequence(n, top);
    if (sys.max_degree() != top) return false;
    for (int m = 0; m <= top; ++m) {
      if (Int(static_cast<long long>(sys.dim(m))) != dims[m]) return false;
    }
  }
  return true;
}

// The joint invariant subspace of the doubled action is the determinant
// line for the irreducible action, and its dimension follows the squared
// multiplicities for reducible actions.
bool c03() {
  const std::vector<SU2Element> samples = sample_set(4, 7);
  for (int n = 1; n <= 3; ++n) {
    const SymmetricRealization real = symmetric_basis(n);
    std::vector<Mat> reps;
    for (const SU2Element& g : samples) reps.push_back(irrep_matrix(real, g));
    const Mat q = determinant_subspace(reps);
    if (q.cols() != 1) return false;
    const Vec delta = determinant_vector(n);
    const Mat line = q * q.adjoint();
    const Mat target = delta * delta.adjoint();
    if (op_norm(line - target) > 1e-9) return false;
  }

  const SymmetricRealization real_one = symmetric_basis(1);
  const SymmetricRealization real_two = symmetric_basis(2);
  std::vector<Mat> twice_small, mixed, twice_large;
  for (const SU2Element& g : samples) {
    const Mat r1 = irrep_matrix(real_one, g);
    const Mat r2 = irrep_matrix(real_two, g);
    twice_small.push_back(block_diag(r1, r1));
    mixed.push_back(block_diag(r1, r2));
    twice_large.push_back(block_diag(r2, r2));
  }
  struct PatternCase {
    std::vector<Mat>* reps;
    std::vector<int> multiplicities;
  };
  std::vector<PatternCase> patterns = {
      {&twice_small, {2}}, {&mixed, {1, 1}}, {&twice_large, {0, 2}}};
  for (const auto& pattern : patterns) {
    const Mat q = determinant_subspace(*pattern.reps);
    const Int expected = determinant_dimension(pattern.multiplicities);
    if (Int(static_cast<long long>(q.cols())) != expected) return false;
  }
  return true;
}

// Fibers of the generated ideal against the constructed system.
bool c04() {
  for (int n = 1; n <= 2; ++n) {
    if (!clean(verify_ideal_correspondence(n, 5))) return false;
  }
  return true;
}

// Fusion unitaries: unitarity, equivariance over five Haar samples and the
// exact dimension split.
bool c05() {
  {
    SubproductSystem sys = build_system(1, 6);
    FusionMaps fusion(sys);
    if (!clean(verify_fusion(fusion, 6, sample_set(5, 7)))) return false;
  }
  {
    SubproductSystem sys = build_system(2, 4);
    FusionMaps fusion(sys);
    if (!clean(verify_fusion(fusion, 4, sample_set(5, 7)))) return false;
  }
  return true;
}

// Structure map registry over every in-range instance.
bool c06() {
  const std::vector<std::pair<int, int>> cases = {{1, 8}, {2, 5}, {3, 4}};
  const std::vector<SU2Element> samples = sample_set(3, 7);
  for (const auto& [n, top] : cases) {
    SubproductSystem sys = build_system(n, top);
    if (!clean(verify_axioms(sys, top))) return false;
    if (!clean(verify_equivariance(sys, samples))) return false;
  }
  return true;
}

// Creation operator identities, including the norm decay closed form and the
// weighted commutator bound.
bool c07() {
  {
    SubproductSystem sys = build_system(1, 6);
    FusionMaps fusion(sys);
    ToeplitzOps ops(fusion, 6);
    if (!clean(verify_toeplitz(ops, sample_set(3, 7)))) return false;
  }
  {
    SubproductSystem sys = build_system(2, 4);
    FusionMaps fusion(sys);
    ToeplitzOps ops(fusion, 4);
    if (!clean(verify_toeplitz(ops, sample_set(3, 7)))) return false;
  }
  return true;
}

// Doubled shift window: block defects, spectra, homotopy and transport.
bool c08() {
  {
    SubproductSystem sys = build_system(1, 10);
    FusionMaps fusion(sys);
    ToeplitzOps ops(fusion, 10);
    if (!clean(verify_kk(ops, 5))) return false;
  }
  {
    SubproductSystem sys = build_system(2, 6);
    FusionMaps fusion(sys);
    ToeplitzOps ops(fusion, 6);
    if (!clean(verify_kk(ops, 3))) return false;
  }
  return true;
}

// Boundary K groups from the integer connecting map, sub-millisecond each.
bool c09() {
  for (int n = 1; n <= 10; ++n) {
    const GysinSummary g = gysin_k_theory(n);
    if (g.euler_total != 1 - n) return false;
    if (n == 1) {
      if (g.k_zero.rank != 1 || g.k_one.rank != 1) return false;
      if (!g.k_zero.torsion.empty() || !g.k_one.torsion.empty()) return false;
    } else {
      if (g.k_zero.rank != 0 || g.k_one.rank != 0) return false;
      if (!g.k_one.torsion.empty()) return false;
      if (n == 2) {
        if (!g.k_zero.torsion.empty()) return false;
      } else {
        if (g.k_zero.torsion.size() != 1) return false;
        if (g.k_zero.torsion[0] != n - 1) return false;
      }
    }
  }
  const auto start = Clock::now();
  const int rounds = 100;
  for (int r = 0; r < rounds; ++r) {
    for (int n = 1; n <= 10; ++n) {
      const GysinSummary g = gysin_k_theory(n);
      if (g.euler_total != 1 - n) return false;
    }
  }
  const double per_call = seconds_since(start) / (rounds * 10);
  return per_call < 1e-3;
}

// End to end command line sweep with machine readable output.
bool c10() {
  const std::string cmd =
      std::string(SPS_CLI_PATH) + " --json verify --n 2 --max-degree 4 --all 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return false;
  std::string output;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return false;
  const auto parsed = nlohmann::json::parse(output, nullptr, false);
  if (!parsed.is_array()) return false;
  return parsed.size() >= 40;
}

struct Criterion {
  const char* label;
  bool (*run)();
  double budget_seconds;  // 0 disables the time check
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"c01 sequence identity sweep", c01, 1.0},
      {"c02 fiber dimensions match the recurrence", c02, 60.0},
      {"c03 determinant subspace location and size", c03, 0.0},
      {"c04 ideal fiber correspondence", c04, 0.0},
      {"c05 fusion unitaries", c05, 0.0},
      {"c06 structure map registry", c06, 0.0},
      {"c07 creation operator identities", c07, 0.0},
      {"c08 doubled shift window", c08, 300.0},
      {"c09 boundary k groups", c09, 0.0},
      {"c10 command line verify sweep", c10, 180.0},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = Clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = criterion.run();
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
    const double secs = seconds_since(start);
    if (ok && criterion.budget_seconds > 0.0 && secs > criterion.budget_seconds) {
      ok = false;
      note = "over time budget";
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.label << " ("
              << std::fixed << std::setprecision(2) << secs << "s)";
    if (!note.empty()) std::cout << "  " << note;
    std::cout << "\n" << std::flush;
  }
  std::cout << "criteria: " << criteria.size() << "  failures: " << failures
            << "\n";
  return failures;
}

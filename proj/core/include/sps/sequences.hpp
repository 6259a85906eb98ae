#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sps/report.hpp"

namespace sps {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Fiber dimensions and derived quantities for a fixed n. The dimension
// sequence follows d_0 = 1, d_1 = n + 1, d_m = d_1 d_{m-1} - d_{m-2} and we
// use the convention d_{-1} = 0 throughout.
struct SequencePack {
  int n = 0;
  int max_degree = 0;
  std::vector<Int> d;   // d[m] for 0 <= m <= max_degree
  std::vector<Int> mu;  // mu[m] = d_m d_{m-1} / d_1 for 0 <= m <= max_degree

  const Int& dim(int m) const;
  // Dimension with the d_{-1} = 0 convention extended to all m < 0.
  Int dim_or_zero(int m) const;
  const Int& mu_at(int m) const;
  double dim_d(int m) const;
  double mu_d(int m) const;
};

SequencePack make_sequences(int n, int max_degree);

std::vector<Int> dim_sequence(int n, int max_degree);

// Limit of the ratios d_{m-1} / d_m, the smaller root of
// x^2 - (n+1) x + 1 = 0.
double gamma_limit(int n);

// Exact and floating point checks of the recurrence identities, the product
// and window identities, integrality and growth of mu, the telescoping sum
// and the monotone convergence of the dimension ratios.
std::vector<IdentityReport> verify_sequence_identities(int n, int max_degree);

}  // namespace sps

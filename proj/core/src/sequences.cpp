#include "sps/sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sps {

const Int& SequencePack::dim(int m) const {
  if (m < 0 || m > max_degree) {
    throw std::invalid_argument("dimension degree out of range: " + std::to_string(m));
  }
  return d[static_cast<std::size_t>(m)];
}

Int SequencePack::dim_or_zero(int m) const {
  if (m < 0) return Int(0);
  return dim(m);
}

const Int& SequencePack::mu_at(int m) const {
  if (m < 0 || m > max_degree) {
    throw std::invalid_argument("mu degree out of range: " + std::to_string(m));
  }
  return mu[static_cast<std::size_t>(m)];
}

double SequencePack::dim_d(int m) const {
  return m < 0 ? 0.0 : dim(m).convert_to<double>();
}

double SequencePack::mu_d(int m) const { return mu_at(m).convert_to<double>(); }

SequencePack make_sequences(int n, int max_degree) {
  if (n < 1) throw std::invalid_argument("n must be a positive integer");
  if (max_degree < 0) throw std::invalid_argument("max_degree must be nonnegative");
  SequencePack pack;
  pack.n = n;
  pack.max_degree = max_degree;
  pack.d.resize(static_cast<std::size_t>(max_degree) + 1);
  pack.d[0] = 1;
  if (max_degree >= 1) pack.d[1] = n + 1;
  for (int m = 2; m <= max_degree; ++m) {
    pack.d[m] = Int(n + 1) * pack.d[m - 1] - pack.d[m - 2];
  }
  pack.mu.resize(static_cast<std::size_t>(max_degree) + 1);
  pack.mu[0] = 0;
  for (int m = 1; m <= max_degree; ++m) {
    const Int num = pack.d[m] * pack.d[m - 1];
    if (num % Int(n + 1) != 0) {
      throw std::logic_error("mu is not integral at degree " + std::to_string(m));
    }
    pack.mu[m] = num / Int(n + 1);
  }
  return pack;
}

std::vector<Int> dim_sequence(int n, int max_degree) {
  return make_sequences(n, max_degree).d;
}

double gamma_limit(int n) {
  const double t = static_cast<double>(n + 1);
  return (t - std::sqrt(t * t - 4.0)) / 2.0;
}

namespace {

double defect_magnitude(const Int& defect) {
  const Int a = abs(defect);
  return a.convert_to<double>();
}

}  // namespace

std::vector<IdentityReport> verify_sequence_identities(int n, int max_degree) {
  const SequencePack s = make_sequences(n, max_degree + 1);
  std::vector<IdentityReport> reports;
  const int M = max_degree;

  // d_m^2 - d_{m-1} d_{m+1} = 1 for all m >= 0.
  {
    Int worst = 0;
    for (int m = 0; m <= M; ++m) {
      Int defect = s.dim(m) * s.dim(m) - s.dim_or_zero(m - 1) * s.dim(m + 1) - 1;
      if (abs(defect) > abs(worst)) worst = defect;
    }
    reports.push_back(make_report("dim_unimodularity", {{"n", double(n)}, {"max", double(M)}},
                                  defect_magnitude(worst), 0.0));
  }

  // d_{k+m} = d_k d_m - d_{k-1} d_{m-1} for all k, m >= 0 with k + m <= M.
  {
    Int worst = 0;
    for (int k = 0; k <= M; ++k) {
      for (int m = 0; k + m <= M; ++m) {
        Int defect = s.dim(k + m) - s.dim(k) * s.dim(m) +
                     s.dim_or_zero(k - 1) * s.dim_or_zero(m - 1);
        if (abs(defect) > abs(worst)) worst = defect;
      }
    }
    reports.push_back(make_report("dim_product_splitting", {{"n", double(n)}, {"max", double(M)}},
                                  defect_magnitude(worst), 0.0));
  }

  // sum_{i=0}^l d_{k+m+2i} = d_{k+l} d_{m+l} - d_{k-1} d_{m-1}.
  {
    Int worst = 0;
    for (int k = 0; k <= M; ++k) {
      for (int m = 0; k + m <= M; ++m) {
        Int window = 0;
        for (int l = 0; k + m + 2 * l <= M; ++l) {
          window += s.dim(k + m + 2 * l);
          Int defect = window - s.dim(k + l) * s.dim(m + l) +
                       s.dim_or_zero(k - 1) * s.dim_or_zero(m - 1);
          if (abs(defect) > abs(worst)) worst = defect;
        }
      }
    }
    reports.push_back(make_report("dim_window_sum", {{"n", double(n)}, {"max", double(M)}},
                                  defect_magnitude(worst), 0.0));
  }

  // d_m^2 = mu_m + mu_{m+1} for all m >= 0.
  {
    Int worst = 0;
    for (int m = 0; m <= M; ++m) {
      Int defect = s.dim(m) * s.dim(m) - s.mu_at(m) - s.mu_at(m + 1);
      if (abs(defect) > abs(worst)) worst = defect;
    }
    reports.push_back(make_report("mu_pair_sum", {{"n", double(n)}, {"max", double(M)}},
                                  defect_magnitude(worst), 0.0));
  }

  // mu_{m+1} = ((n+1)^2 - 2) mu_m - mu_{m-1} + 1 for m >= 1, with the seeds
  // mu_1 = 1 and mu_2 = (n+1)^2 - 1.
  {
    Int worst = 0;
    if (M >= 1) {
      worst = s.mu_at(1) - 1;
      if (M >= 2) {
        Int defect = s.mu_at(2) - (Int(n + 1) * Int(n + 1) - 1);
        if (abs(defect) > abs(worst)) worst = defect;
      }
      const Int coeff = Int(n + 1) * Int(n + 1) - 2;
      for (int m = 1; m + 1 <= M; ++m) {
        Int defect = s.mu_at(m + 1) - coeff * s.mu_at(m) + s.mu_at(m - 1) - 1;
        if (abs(defect) > abs(worst)) worst = defect;
      }
    }
    reports.push_back(make_report("mu_recurrence", {{"n", double(n)}, {"max", double(M)}},
                                  defect_magnitude(worst), 0.0));
  }

  // gamma solves x^2 - (n+1) x + 1 = 0.
  {
    const double g = gamma_limit(n);
    const double defect = std::abs(g * g - double(n + 1) * g + 1.0);
    reports.push_back(make_report("gamma_quadratic", {{"n", double(n)}}, defect, 1e-12));
  }

  // The ratios d_{m-1}/d_m increase strictly towards gamma and the gaps
  // d_{m+1} - d_m stay at least one.
  {
    double worst = 0.0;
    const double g = gamma_limit(n);
    Rational prev(-1);
    bool ordered = true;
    for (int m = 1; m <= M + 1; ++m) {
      Rational ratio(s.dim(m - 1), s.dim(m));
      if (!(ratio > prev)) ordered = false;
      prev = ratio;
      const double r = ratio.convert_to<double>();
      if (r >= g + 1e-12) worst = std::max(worst, r - g);
      if (s.dim(m) - s.dim(m - 1) < 1) ordered = false;
    }
    if (!ordered) worst = std::max(worst, 1.0);
    reports.push_back(make_report("dim_ratio_monotone", {{"n", double(n)}, {"max", double(M)}},
                                  worst, 0.0));
  }

  // Telescoping: d_{m-1}/d_m = sum_{j=1}^m 1/(d_{j-1} d_j), checked as an
  // exact identity of rationals.
  {
    Int worst = 0;
    Rational acc(0);
    for (int m = 1; m <= M; ++m) {
      acc += Rational(1, s.dim(m - 1) * s.dim(m));
      Rational defect = Rational(s.dim(m - 1), s.dim(m)) - acc;
      if (defect != 0) worst = 1;
    }
    reports.push_back(make_report("dim_ratio_telescoping", {{"n", double(n)}, {"max", double(M)}},
                                  defect_magnitude(worst), 0.0));
  }

  return reports;
}

}  // namespace sps

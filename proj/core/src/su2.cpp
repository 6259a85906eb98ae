#include "sps/su2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sps {

Mat SU2Element::matrix() const {
  Mat g(2, 2);
  g(0, 0) = a;
  g(0, 1) = -std::conj(b);
  g(1, 0) = b;
  g(1, 1) = std::conj(a);
  return g;
}

SU2Element SU2Element::inverse() const { return SU2Element{std::conj(a), -b}; }

SU2Element su2_identity() { return SU2Element{}; }

SU2Element su2_product(const SU2Element& g, const SU2Element& h) {
  // Multiply the defining 2x2 matrices and read off the first column.
  SU2Element out;
  out.a = g.a * h.a - std::conj(g.b) * h.b;
  out.b = g.b * h.a + std::conj(g.a) * h.b;
  return out;
}

SU2Element z_rotation(double theta) {
  return SU2Element{Scalar(std::cos(theta), std::sin(theta)), Scalar(0.0, 0.0)};
}

SU2Element x_rotation(double theta) {
  return SU2Element{Scalar(std::cos(theta), 0.0), Scalar(0.0, std::sin(theta))};
}

HaarSampler::HaarSampler(std::uint64_t seed) : rng_(seed) {}

double HaarSampler::normal() {
  // Box-Muller on uniforms built from the raw bit stream, keeping the
  // sampler independent of library-specific distribution internals.
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  } while (u <= 0.0);
  const double v = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

SU2Element HaarSampler::next() {
  // A normalised pair of complex gaussians is Haar distributed on SU(2).
  while (true) {
    const Scalar a(normal(), normal());
    const Scalar b(normal(), normal());
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    if (norm > 1e-6) {
      return SU2Element{a / norm, b / norm};
    }
  }
}

std::vector<SU2Element> sample_set(int haar_count, std::uint64_t seed) {
  std::vector<SU2Element> out;
  out.push_back(z_rotation(1.0));
  out.push_back(x_rotation(std::numbers::sqrt2));
  HaarSampler sampler(seed);
  for (int i = 0; i < haar_count; ++i) out.push_back(sampler.next());
  return out;
}

SymmetricRealization symmetric_basis(int n) {
  if (n < 0 || n > 20) {
    throw std::invalid_argument("symmetric_basis supports 0 <= n <= 20");
  }
  TensorIndexer indexer(2, n);
  const std::int64_t dim = indexer.size();
  Mat basis = Mat::Zero(dim, n + 1);
  // Binomial coefficients C(n, k) for the normalisation 1/sqrt(C(n, k)).
  std::vector<double> binom(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    binom[k] = binom[k - 1] * double(n - k + 1) / double(k);
  }
  // Column k collects the words with k letters equal to one, so the basis
  // runs from f_0^n down to f_1^n and the diagonal weights descend.
  for (std::int64_t w = 0; w < dim; ++w) {
    const std::vector<int> letters = indexer.word(w);
    int ones = 0;
    for (int letter : letters) {
      if (letter == 1) ++ones;
    }
    basis(w, ones) = 1.0 / std::sqrt(binom[static_cast<std::size_t>(ones)]);
  }
  return SymmetricRealization{n, std::move(basis)};
}

Mat tensor_power(const Mat& g, int m) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < m; ++i) out = kron(out, g);
  return out;
}

Mat irrep_matrix(const SymmetricRealization& real, const SU2Element& g) {
  return real.basis.adjoint() * tensor_power(g.matrix(), real.n) * real.basis;
}

Mat sym_projector(const SymmetricRealization& real) {
  return real.basis * real.basis.adjoint();
}

Mat invariant_subspace(const std::vector<Mat>& unitaries, double rel_tol) {
  if (unitaries.empty()) {
    throw std::invalid_argument("invariant_subspace requires at least one unitary");
  }
  const Index dim = unitaries.front().rows();
  Mat stacked(dim, dim * static_cast<Index>(unitaries.size()));
  Index col = 0;
  for (const Mat& u : unitaries) {
    if (u.rows() != dim || u.cols() != dim) {
      throw std::invalid_argument("invariant_subspace: inconsistent dimensions");
    }
    stacked.middleCols(col, dim) = Mat(u - identity(dim)).adjoint();
    col += dim;
  }
  return onb_of_complement(stacked, rel_tol);
}

bool is_irreducible(const std::vector<Mat>& unitaries, double rel_tol) {
  if (unitaries.empty()) {
    throw std::invalid_argument("is_irreducible requires at least one unitary");
  }
  const Index dim = unitaries.front().rows();
  // X commutes with U exactly when (U^T kron I - I kron U) vec(X) = 0, with
  // vec stacking X column by column. Irreducibility is a one dimensional
  // joint kernel over the sample set.
  Mat stacked(dim * dim * static_cast<Index>(unitaries.size()), dim * dim);
  Index row = 0;
  for (const Mat& u : unitaries) {
    stacked.middleRows(row, dim * dim) =
        kron(u.transpose(), identity(dim)) - kron(identity(dim), u);
    row += dim * dim;
  }
  return kernel_onb(stacked, rel_tol).cols() == 1;
}

std::vector<IdentityReport> verify_representation(int n, int haar_count, std::uint64_t seed) {
  std::vector<IdentityReport> reports;
  const SymmetricRealization real = symmetric_basis(n);
  const std::vector<SU2Element> samples = sample_set(haar_count, seed);

  // The symmetric basis must be orthonormal and its projector idempotent.
  reports.push_back(make_report(
      "symmetric_basis_orthonormal", {{"n", double(n)}},
      residual_norm(real.basis.adjoint() * real.basis, identity(n + 1)), 1e-12));
  const Mat proj = sym_projector(real);
  reports.push_back(make_report("symmetrizer_idempotent", {{"n", double(n)}},
                                residual_norm(proj * proj, proj), 1e-12));

  double unitary_defect = 0.0;
  std::vector<Mat> reps;
  reps.reserve(samples.size());
  for (const SU2Element& g : samples) {
    Mat u = irrep_matrix(real, g);
    unitary_defect = std::max(unitary_defect,
                              residual_norm(u.adjoint() * u, identity(n + 1)));
    reps.push_back(std::move(u));
  }
  reports.push_back(make_report("irrep_unitarity",
                                {{"n", double(n)}, {"samples", double(samples.size())}},
                                unitary_defect, 1e-10));

  // Multiplicativity over consecutive sample pairs.
  double hom_defect = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const Mat lhs = irrep_matrix(real, su2_product(samples[i], samples[i + 1]));
    hom_defect = std::max(hom_defect, residual_norm(lhs, reps[i] * reps[i + 1]));
  }
  reports.push_back(make_report("irrep_multiplicative",
                                {{"n", double(n)}, {"samples", double(samples.size())}},
                                hom_defect, 1e-10));

  // The diagonal subgroup acts with the expected integer weights.
  {
    const double theta = 0.73;
    const Mat u = irrep_matrix(real, z_rotation(theta));
    Mat expected = Mat::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
      const double phase = theta * double(n - 2 * k);
      expected(k, k) = Scalar(std::cos(phase), std::sin(phase));
    }
    reports.push_back(make_report("irrep_weight_diagonal", {{"n", double(n)}},
                                  residual_norm(u, expected), 1e-10));
  }

  if (n >= 1) {
    const Mat fixed = invariant_subspace(reps);
    reports.push_back(make_report("irrep_no_fixed_vectors", {{"n", double(n)}},
                                  double(fixed.cols()), 0.0));
    reports.push_back(make_report("irrep_schur_commutant", {{"n", double(n)}},
                                  is_irreducible(reps) ? 0.0 : 1.0, 0.0));
  }
  return reports;
}

}  // namespace sps

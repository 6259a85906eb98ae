#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sps/linalg.hpp"
#include "sps/report.hpp"

namespace sps {

// Group element [[a, -conj(b)], [b, conj(a)]] with |a|^2 + |b|^2 = 1.
struct SU2Element {
  Scalar a{1.0, 0.0};
  Scalar b{0.0, 0.0};

  Mat matrix() const;
  SU2Element inverse() const;
};

SU2Element su2_identity();
SU2Element su2_product(const SU2Element& g, const SU2Element& h);

// Diagonal one-parameter subgroup diag(e^{i theta}, e^{-i theta}).
SU2Element z_rotation(double theta);
// Off-diagonal one-parameter subgroup [[cos, i sin], [i sin, cos]].
SU2Element x_rotation(double theta);

// Haar-distributed samples from a fixed seed. The generator is implemented
// directly on top of the mt19937_64 bit stream so that equal seeds give
// identical samples on every platform.
class HaarSampler {
 public:
  explicit HaarSampler(std::uint64_t seed);
  SU2Element next();

 private:
  double normal();
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Two fixed one-parameter subgroup elements at irrational angles followed by
// haar_count Haar samples.
std::vector<SU2Element> sample_set(int haar_count, std::uint64_t seed);

// Orthonormal basis of the symmetric subspace of (C^2)^{tensor n}. Column k
// is the normalised sum of the standard basis words containing exactly k
// letters equal to zero, realising the degree n irreducible representation.
struct SymmetricRealization {
  int n = 0;
  Mat basis;  // 2^n rows, n + 1 columns
};

SymmetricRealization symmetric_basis(int n);

Mat tensor_power(const Mat& g, int m);

// Representation matrix of g on the n + 1 dimensional irreducible space,
// computed by compressing the n-fold tensor power with the symmetric basis.
Mat irrep_matrix(const SymmetricRealization& real, const SU2Element& g);

// Orthogonal projection onto the symmetric subspace.
Mat sym_projector(const SymmetricRealization& real);

// Orthonormal basis of the joint fixed space of a family of unitaries.
Mat invariant_subspace(const std::vector<Mat>& unitaries, double rel_tol = 1e-9);

// A family of unitaries acts irreducibly exactly when its commutant is one
// dimensional.
bool is_irreducible(const std::vector<Mat>& unitaries, double rel_tol = 1e-9);

// Unitarity, multiplicativity, weight structure and irreducibility checks
// for the degree n representation.
std::vector<IdentityReport> verify_representation(int n, int haar_count, std::uint64_t seed);

}  // namespace sps

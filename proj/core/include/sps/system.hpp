#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/su2.hpp"

namespace sps {

// Standard subproduct system with one dimensional vacuum fiber, first fiber
// E_1 = C^{n+1} and higher fibers cut out by a homogeneous ideal. Fibers are
// kept in two coordinate regimes:
//  - ambient degrees m <= ambient_max() carry an isometric column basis of
//    E_m inside the tensor power H^{otimes m};
//  - degrees beyond the ambient window are defined recursively by seed
//    isometries E_m -> E_{m-1} (x) E_1 written in fiber coordinates, which
//    are installed one degree at a time via extend_with_seed.
// All structure maps are expressed in fiber coordinates, so consumers never
// touch the exponentially large ambient spaces directly.
class SubproductSystem {
 public:
  SubproductSystem(int n, std::vector<Mat> ambient_bases, Vec det_vector);

  int n() const { return n_; }
  int ambient_max() const { return ambient_max_; }
  int max_degree() const { return static_cast<int>(dims_.size()) - 1; }
  Index dim(int m) const;

  // References returned by basis and seed are invalidated by
  // extend_with_seed.
  const Mat& basis(int m) const;

  // Seed isometry E_m -> E_{m-1} (x) E_1 in fiber coordinates, m >= 1.
  const Mat& seed(int m) const;

  // Structure coisometry E_k (x) E_m -> E_{k+m} in fiber coordinates,
  // shaped d_{k+m} by d_k d_m. Results are cached; the cache is guarded so
  // concurrent first access is safe.
  const Mat& coisometry(int k, int m);

  // Adjoint of the structure coisometry, the inclusion E_{k+m} -> E_k (x) E_m.
  Mat inclusion(int k, int m);

  // Orthogonal projection of E_k (x) E_m onto the included copy of E_{k+m},
  // computed as inclusion times coisometry.
  Mat inclusion_projector(int k, int m);

  // Same projection computed without any degree k + m object: a vector lies
  // in the included copy exactly when every pairing with a determinant
  // vector inserted across the junction of the two factors vanishes. Only
  // available when the system carries a determinant vector.
  Mat straddle_projector(int k, int m);

  // Orthonormal columns spanning the orthogonal complement of the included
  // E_{k+m} inside E_k (x) E_m, computed from the junction conditions alone.
  // Empty when k or m is zero.
  Mat straddle_span(int k, int m);

  bool has_det_vector() const { return det_vector_.size() > 0; }
  const Vec& det_vector() const;

  // Installs the next degree beyond the current maximum from its seed
  // isometry, whose columns must be orthonormal.
  void extend_with_seed(const Mat& seed);

 private:
  Mat compute_coisometry(int k, int m);

  int n_ = 0;
  int ambient_max_ = 0;
  std::vector<Index> dims_;
  std::vector<Mat> bases_;
  std::vector<Mat> seeds_;  // seeds_[m] for 1 <= m <= max_degree()
  Vec det_vector_;
  std::map<std::pair<int, int>, Mat> coisometry_cache_;
  std::mutex cache_mutex_;
};

// Determinant vector of the degree n irreducible representation in the
// coordinates of E_1 (x) E_1, normalised to unit length.
Vec determinant_vector(int n);

// Ambient window that keeps the fiber construction cheap: the largest m with
// (n+1)^m <= 1024.
int ambient_cost_cap(int n);

// Builds the subproduct system of the determinant ideal with ambient bases
// up to min(max_degree, ambient_cost_cap(n)). Degrees beyond the ambient
// window are left for seed extension by the fusion layer. Throws a
// size-limit error when the requested ambient dimension exceeds the budget.
SubproductSystem build_system(int n, int max_degree);

// Joint invariant subspace of g (x) g over a sample set, realising the
// determinant of a (possibly reducible) unitary representation.
Mat determinant_subspace(const std::vector<Mat>& rep_samples, double rel_tol = 1e-9);

// Dimension of the determinant of a representation with the given
// multiplicity pattern, the sum of the squared multiplicities.
Int determinant_dimension(const std::vector<int>& multiplicities);

// Isometry, coassociativity, dimension and ideal-orthogonality checks.
std::vector<IdentityReport> verify_axioms(SubproductSystem& sys, int max_degree);

// Invariance of the fibers and of the determinant vector under the induced
// action of a sample set of group elements.
std::vector<IdentityReport> verify_equivariance(SubproductSystem& sys,
                                                const std::vector<SU2Element>& samples);

void save_system_json(SubproductSystem& sys, const std::string& path);
SubproductSystem load_system_json(const std::string& path);

}  // namespace sps

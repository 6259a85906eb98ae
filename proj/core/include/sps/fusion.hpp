#pragma once

#include <deque>
#include <vector>

#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/su2.hpp"
#include "sps/system.hpp"

namespace sps {

// Decomposition machinery for tensor products of fibers. All maps are in
// fiber coordinates of the underlying system, which is extended on demand
// beyond its ambient window through complement seeds.
class FusionMaps {
 public:
  explicit FusionMaps(SubproductSystem& sys);

  SubproductSystem& system() { return sys_; }
  const SequencePack& sequences();

  // Canonical map E_{m-1} -> E_m (x) E_1 with squared norm mu_m, built from
  // the determinant vector and the degree m seed; its image is the
  // orthocomplement of the included E_{m+1}.
  const Mat& gee(int m);
  // Mirrored map E_{m-1} -> E_1 (x) E_m.
  const Mat& gee_prime(int m);

  // Normalised isometries obtained from gee and gee_prime.
  Mat vee(int m);
  Mat vee_prime(int m);

  // Raising map E_k (x) E_m -> E_{k+1} (x) E_{m+1}: apply gee(k+1) on the
  // left factor and compress the middle pair into E_{m+1}.
  Mat sigma(int k, int m);

  // sigma applied j times to the included copy of E_{k+m} inside
  // E_k (x) E_m, landing in E_{k+j} (x) E_{m+j}.
  Mat sigma_power_iota(int k, int m, int j);

  // Unitary from the direct sum of E_{k+m-2j}, j = 0..min(k,m), onto
  // E_k (x) E_m. Block j is sigma_power_iota(k-j, m-j, j) times the closed
  // form normalisation.
  Mat fusion_unitary(int k, int m);
  double fusion_block_scale(int k, int m, int j);

  // Extends the underlying system degree by degree: the next seed is the
  // orthocomplement of the image of vee at the current top degree.
  void ensure_degree(int degree);

  // Action of a group element on the degree m fiber, computed recursively
  // through the seeds so it is available beyond the ambient window.
  Mat fiber_action(int m, const SU2Element& g);

 private:
  SubproductSystem& sys_;
  SequencePack seqs_;
  // Deques so that cached references stay valid while later degrees are
  // appended; callers hold these references across further gee calls.
  std::deque<Mat> gee_cache_;
  std::deque<Mat> gee_prime_cache_;
};

// Registry of identity checks for the fusion layer: pairing, gram,
// orthogonality and recursion properties of gee and gee_prime, the rank one
// corrections of the inclusion projectors, the gram recursion and shift
// relations of sigma, unitarity of the block decompositions, and
// equivariance of all maps over the provided samples.
std::vector<IdentityReport> verify_fusion(FusionMaps& fusion, int max_degree,
                                          const std::vector<SU2Element>& samples);

}  // namespace sps

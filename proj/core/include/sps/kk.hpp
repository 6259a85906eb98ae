#pragma once

#include <array>
#include <map>
#include <vector>

#include "sps/fusion.hpp"
#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/system.hpp"
#include "sps/toeplitz.hpp"

namespace sps {

// Integer matrices for the index-theoretic half of the module.
using IntMat = std::vector<std::vector<Int>>;

IntMat int_matrix_identity(int size);
IntMat int_matrix_product(const IntMat& a, const IntMat& b);
bool int_matrix_equal(const IntMat& a, const IntMat& b);

// Diagonalisation u * a * v = d over the integers with unimodular u, v and
// nonnegative diagonal entries, each dividing the next.
struct SmithForm {
  IntMat left;
  IntMat diagonal;
  IntMat right;
};

SmithForm smith_normal_form(const IntMat& a);

struct KTheoryGroup {
  Int rank = 0;
  std::vector<Int> torsion;  // invariant factors larger than one
};

// K-theory of the boundary algebra obtained from the long exact sequence:
// the connecting map on the even group is multiplication by the integer
// euler_total, and the groups are read off from its Smith form.
struct GysinSummary {
  int n = 0;
  std::vector<Int> euler_terms;
  Int euler_total = 0;
  KTheoryGroup k_zero;
  KTheoryGroup k_one;
};

GysinSummary gysin_k_theory(int n);

// Block maps of the doubled shift on the bidegree lattice. Top sites carry
// the left-right exchange built from edge inclusions, bottom sites carry the
// canonical isometries; the four maps move a site diagonally by one step.
class KkOps {
 public:
  KkOps(ToeplitzOps& ops, int kmax);

  int kmax() const { return kmax_; }
  ToeplitzOps& toeplitz() { return ops_; }
  FusionMaps& fusion() { return ops_.fusion(); }
  SubproductSystem& system() { return ops_.system(); }
  const SequencePack& sequences() const { return seqs_; }
  int n() const { return seqs_.n; }

  // (k, m) -> (k - 1, m + 1), defined for k >= 1.
  const Mat& v_tt(int k, int m);
  // (k, m) -> (k + 1, m + 1).
  const Mat& v_tb(int k, int m);
  // (k, m) -> (k - 1, m - 1), defined for k, m >= 1.
  const Mat& v_bt(int k, int m);
  // (k, m) -> (k + 1, m - 1), defined for m >= 1.
  const Mat& v_bb(int k, int m);

  Mat gamma_op(int k, int m);
  Mat delta_op(int k, int m);
  // Isometric polar factor of the up-diagonal map.
  Mat theta(int k, int m);

 private:
  const Mat& cache_block(int tag, int k, int m, Mat value);

  ToeplitzOps& ops_;
  int kmax_;
  SequencePack seqs_;
  std::map<std::array<int, 3>, Mat> cache_;
};

// Backward shift on a string of that length, the model of the doubled shift
// on one anti-diagonal of the inclusion lattice.
Mat truncated_shift(Index size);

// The rotation path joining the backward shift to the identity through the
// defect projections at the two string ends; unitary for every t and equal
// to the identity at t = pi / 2.
Mat scalar_homotopy(Index size, double t);

// Registry of the doubled-shift identities: isometry and coisometry defects
// concentrated at the lattice edges, cross terms between the two components,
// the creation-operator expansions of the four block maps, the shift action
// on included fibers and its projector intertwining, the spectra of the two
// positive defect operators with their resolvent bounds, the polar factor
// range identities, the gram closed forms along the straight-line path, the
// scalar rotation path on anti-diagonals, unitarity of the assembled
// homotopy, the conjugation identity between the two corner embeddings, and
// the transport of generators along the homotopy.
std::vector<IdentityReport> verify_kk(ToeplitzOps& ops, int kmax);

// Registry for the integer half: Smith form self checks on fixed samples and
// on the connecting maps, and the order identity for the resulting groups.
std::vector<IdentityReport> verify_gysin(int max_n);

}  // namespace sps

#pragma once

#include <map>
#include <vector>

#include "sps/fusion.hpp"
#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/su2.hpp"
#include "sps/system.hpp"

namespace sps {

// Degree window 0..top of the Fock space with offsets into the coordinates
// of the finite direct sum of fibers.
class FockWindow {
 public:
  FockWindow(SubproductSystem& sys, int top);

  int top() const { return top_; }
  Index dim(int m) const { return dims_.at(m); }
  Index offset(int m) const { return offsets_.at(m); }
  Index total() const { return total_; }

 private:
  int top_;
  std::vector<Index> dims_;
  std::vector<Index> offsets_;
  Index total_ = 0;
};

// Graded operator on a Fock window: block m maps degree m to degree
// m + shift. Blocks whose source or target degree falls outside the window
// are dropped when assembling the full matrix, which is exactly the
// truncation of the corresponding operator on the infinite Fock space.
struct GradedOperator {
  int shift = 0;
  std::map<int, Mat> blocks;

  Mat full(const FockWindow& window) const;
};

// Creation operators and diagonal operators of the Toeplitz algebra,
// realised degree by degree in fiber coordinates.
class ToeplitzOps {
 public:
  ToeplitzOps(FusionMaps& fusion, int top);

  FusionMaps& fusion() { return fusion_; }
  SubproductSystem& system() { return fusion_.system(); }
  int top() const { return top_; }
  int n() const { return fusion_.system().n(); }

  // Left creation by the basis vector e_j, block E_m -> E_{m+1}.
  Mat creation_block(int j, int m);
  // Left creation by a fiber vector xi in E_k coordinates, E_m -> E_{k+m}.
  Mat creation_block(const Vec& xi, int k, int m);
  // Right creation by e_j, block E_m -> E_{m+1}.
  Mat right_creation_block(int j, int m);

  // Eigenvalue of the dimension-ratio operator on E_m.
  double phi(int m);
  double phi_inverse(int m);

 private:
  FusionMaps& fusion_;
  int top_;
  SequencePack seqs_;
};

// Registry of blockwise Toeplitz identities: the coisometry expansions of
// the two edge compressions, the Toeplitz forms of the canonical
// isometries, the row and column sum relations, the adjoint exchange
// relation, the cascade overlap scalar and the closed form commutator
// norms with their dimension-weighted bounds, the approach of the
// dimension ratios to their limit, the special relations of the n = 1
// system, equivariance of creation operators, and norm contractivity of
// creation by sample fiber vectors.
std::vector<IdentityReport> verify_toeplitz(ToeplitzOps& ops,
                                            const std::vector<SU2Element>& samples);

}  // namespace sps

#include <cmath>
#include <vector>

#include <doctest.h>

#include "sps/fusion.hpp"
#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/su2.hpp"
#include "sps/system.hpp"

using namespace sps;

TEST_CASE("edge maps have the window gram and isometric normalisation") {
  SubproductSystem sys = build_system(2, 4);
  FusionMaps fusion(sys);
  const SequencePack& seqs = fusion.sequences();
  for (int m = 1; m <= 3; ++m) {
    const Mat& g = fusion.gee(m);
    CHECK(residual_norm(Mat(g.adjoint() * g),
                        Mat(seqs.mu_d(m) * identity(sys.dim(m - 1)))) < 1e-10);
    const Mat v = fusion.vee(m);
    CHECK(residual_norm(Mat(v.adjoint() * v), identity(sys.dim(m - 1))) < 1e-11);
  }
  // mu values for n = 2 freeze as 1, 8, 56.
  CHECK(seqs.mu_at(1) == 1);
  CHECK(seqs.mu_at(2) == 8);
  CHECK(seqs.mu_at(3) == 56);
}

TEST_CASE("degree one vee reproduces the determinant direction") {
  SubproductSystem sys = build_system(1, 3);
  FusionMaps fusion(sys);
  const Mat v = fusion.vee(1);
  REQUIRE(v.rows() == 4);
  REQUIRE(v.cols() == 1);
  const Vec delta = determinant_vector(1);
  // Equal up to a unimodular factor; here the convention makes them equal.
  CHECK((v.col(0) - delta).norm() < 1e-13);
}

TEST_CASE("fusion unitaries have the block dimensions of the sequence") {
  SubproductSystem sys1 = build_system(1, 4);
  FusionMaps fusion1(sys1);
  const Mat w = fusion1.fusion_unitary(2, 2);
  REQUIRE(w.rows() == 9);
  CHECK(residual_norm(Mat(w.adjoint() * w), identity(9)) < 1e-10);
  // d_2 d_2 = 9 splits as d_4 + d_2 + d_0 = 5 + 3 + 1.
  const SequencePack seqs = make_sequences(1, 4);
  Int total = 0;
  for (int j = 0; j <= 2; ++j) total += seqs.dim(4 - 2 * j);
  CHECK(total == 9);
  for (int j = 0; j <= 2; ++j) {
    CHECK(fusion1.fusion_block_scale(2, 2, j) > 0.0);
  }

  SubproductSystem sys2 = build_system(2, 4);
  FusionMaps fusion2(sys2);
  const Mat w2 = fusion2.fusion_unitary(2, 1);
  REQUIRE(w2.rows() == 24);
  CHECK(residual_norm(Mat(w2.adjoint() * w2), identity(24)) < 1e-10);
}

TEST_CASE("chain extension past the ambient cap keeps the axioms") {
  SubproductSystem sys = build_system(1, 10);
  FusionMaps fusion(sys);
  fusion.ensure_degree(12);
  CHECK(sys.max_degree() == 12);
  const SequencePack seqs = make_sequences(1, 12);
  for (int m = 0; m <= 12; ++m) {
    CHECK(Int(sys.dim(m)) == seqs.dim(m));
  }
  auto reports = verify_axioms(sys, 12);
  CHECK(!reports.empty());
  CHECK(all_pass(reports));
}

TEST_CASE("fusion registry passes for small windows") {
  SubproductSystem sys1 = build_system(1, 4);
  FusionMaps fusion1(sys1);
  auto reports1 = verify_fusion(fusion1, 4, sample_set(2, 17));
  CHECK(!reports1.empty());
  CHECK(all_pass(reports1));

  SubproductSystem sys2 = build_system(2, 3);
  FusionMaps fusion2(sys2);
  auto reports2 = verify_fusion(fusion2, 3, sample_set(2, 17));
  CHECK(!reports2.empty());
  CHECK(all_pass(reports2));
}

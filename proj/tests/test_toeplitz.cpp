#include <cmath>
#include <vector>

#include <doctest.h>

#include "sps/fusion.hpp"
#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/su2.hpp"
#include "sps/system.hpp"
#include "sps/toeplitz.hpp"

using namespace sps;

TEST_CASE("creation blocks reassemble the structure coisometries") {
  SubproductSystem sys = build_system(2, 4);
  FusionMaps fusion(sys);
  ToeplitzOps ops(fusion, 4);
  for (int m = 0; m <= 3; ++m) {
    const Mat co = sys.coisometry(1, m);
    for (int j = 0; j <= 2; ++j) {
      const Mat block = ops.creation_block(j, m);
      CHECK(residual_norm(block, co.middleCols(j * sys.dim(m), sys.dim(m))) == 0.0);
      Vec e = Vec::Zero(3);
      e(j) = 1.0;
      CHECK(residual_norm(ops.creation_block(e, 1, m), block) < 1e-14);
    }
  }
}

TEST_CASE("left and right creations commute") {
  SubproductSystem sys = build_system(2, 4);
  FusionMaps fusion(sys);
  ToeplitzOps ops(fusion, 4);
  for (int m = 0; m <= 2; ++m) {
    for (int i = 0; i <= 2; ++i) {
      for (int j = 0; j <= 2; ++j) {
        const Mat left_then_right =
            ops.right_creation_block(j, m + 1) * ops.creation_block(i, m);
        const Mat right_then_left =
            ops.creation_block(i, m + 1) * ops.right_creation_block(j, m);
        CHECK(residual_norm(left_then_right, right_then_left) < 1e-12);
      }
    }
  }
}

TEST_CASE("pair gram values for the smallest fiber") {
  SubproductSystem sys = build_system(1, 6);
  FusionMaps fusion(sys);
  ToeplitzOps ops(fusion, 6);
  for (int m = 0; m <= 5; ++m) {
    Mat gram = Mat::Zero(sys.dim(m), sys.dim(m));
    Mat row = Mat::Zero(sys.dim(m + 1), sys.dim(m + 1));
    for (int j = 0; j <= 1; ++j) {
      const Mat t = ops.creation_block(j, m);
      gram += t.adjoint() * t;
      row += t * t.adjoint();
    }
    const double expected = (2.0 + m) / (1.0 + m);
    CHECK(residual_norm(gram, Mat(expected * identity(sys.dim(m)))) < 1e-11);
    CHECK(residual_norm(row, identity(sys.dim(m + 1))) < 1e-11);
  }
  CHECK(std::abs(ops.phi(3) - 4.0 / 5.0) < 1e-14);
  CHECK(std::abs(ops.phi_inverse(3) - 5.0 / 4.0) < 1e-14);
}

TEST_CASE("toeplitz registry passes for small windows") {
  SubproductSystem sys = build_system(2, 3);
  FusionMaps fusion(sys);
  ToeplitzOps ops(fusion, 3);
  auto reports = verify_toeplitz(ops, sample_set(2, 23));
  CHECK(!reports.empty());
  CHECK(all_pass(reports));
}

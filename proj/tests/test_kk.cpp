#include <cmath>
#include <cstddef>
#include <vector>

#include <doctest.h>

#include "sps/fusion.hpp"
#include "sps/kk.hpp"
#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/system.hpp"
#include "sps/toeplitz.hpp"

using namespace sps;

namespace {

Int cofactor_det(const IntMat& a) {
  const std::size_t size = a.size();
  if (size == 1) return a[0][0];
  Int det = 0;
  Int sign = 1;
  for (std::size_t c = 0; c < size; ++c) {
    IntMat minor(size - 1, std::vector<Int>(size - 1));
    for (std::size_t r = 1; r < size; ++r) {
      std::size_t out = 0;
      for (std::size_t cc = 0; cc < size; ++cc) {
        if (cc == c) continue;
        minor[r - 1][out++] = a[r][cc];
      }
    }
    det += sign * a[0][c] * cofactor_det(minor);
    sign = -sign;
  }
  return det;
}

void check_smith(const IntMat& a) {
  SmithForm f = smith_normal_form(a);
  CHECK(int_matrix_equal(int_matrix_product(int_matrix_product(f.left, a), f.right),
                         f.diagonal));
  Int left_det = cofactor_det(f.left);
  Int right_det = cofactor_det(f.right);
  CHECK((left_det == 1 || left_det == -1));
  CHECK((right_det == 1 || right_det == -1));
  const std::size_t rows = f.diagonal.size();
  const std::size_t cols = f.diagonal[0].size();
  Int prev = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (r != c) CHECK(f.diagonal[r][c] == 0);
    }
    if (r < cols) {
      const Int& d = f.diagonal[r][r];
      CHECK(d >= 0);
      if (r > 0 && prev != 0) CHECK(d % prev == 0);
      if (r > 0 && prev == 0) CHECK(d == 0);
      prev = d;
    }
  }
}

}  // namespace

TEST_CASE("smith form matches known diagonals") {
  {
    IntMat a = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    SmithForm f = smith_normal_form(a);
    CHECK(f.diagonal[0][0] == 2);
    CHECK(f.diagonal[1][1] == 6);
    CHECK(f.diagonal[2][2] == 12);
    check_smith(a);
  }
  {
    IntMat a = {{1, 2}, {3, 4}};
    SmithForm f = smith_normal_form(a);
    CHECK(f.diagonal[0][0] == 1);
    CHECK(f.diagonal[1][1] == 2);
    check_smith(a);
  }
  {
    IntMat a = {{0, 0}, {0, 0}};
    SmithForm f = smith_normal_form(a);
    CHECK(f.diagonal[0][0] == 0);
    CHECK(f.diagonal[1][1] == 0);
    check_smith(a);
  }
  {
    IntMat a = {{6, 10, 15}};
    SmithForm f = smith_normal_form(a);
    CHECK(f.diagonal[0][0] == 1);
    CHECK(f.diagonal[0][1] == 0);
    CHECK(f.diagonal[0][2] == 0);
    check_smith(a);
  }
  {
    IntMat a = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    check_smith(a);
  }
  {
    IntMat a = {{4}, {6}};
    SmithForm f = smith_normal_form(a);
    CHECK(f.diagonal[0][0] == 2);
    CHECK(f.diagonal[1][0] == 0);
    check_smith(a);
  }
}

TEST_CASE("boundary k-theory table") {
  for (int n = 1; n <= 10; ++n) {
    GysinSummary g = gysin_k_theory(n);
    CHECK(g.euler_terms.size() == 3);
    CHECK(g.euler_terms[0] == 1);
    CHECK(g.euler_terms[1] == -(n + 1));
    CHECK(g.euler_terms[2] == 1);
    CHECK(g.euler_total == 1 - n);
    if (n == 1) {
      CHECK(g.k_zero.rank == 1);
      CHECK(g.k_one.rank == 1);
      CHECK(g.k_zero.torsion.empty());
    } else {
      CHECK(g.k_zero.rank == 0);
      CHECK(g.k_one.rank == 0);
      CHECK(g.k_one.torsion.empty());
      if (n == 2) {
        CHECK(g.k_zero.torsion.empty());
      } else {
        CHECK(g.k_zero.torsion.size() == 1);
        CHECK(g.k_zero.torsion[0] == n - 1);
      }
    }
  }
}

TEST_CASE("shift string and its rotation path") {
  const Mat s = truncated_shift(3);
  CHECK(s(0, 1) == Scalar(1.0, 0.0));
  CHECK(s(1, 2) == Scalar(1.0, 0.0));
  CHECK(std::abs(s(1, 0)) == 0.0);
  CHECK(std::abs(s(2, 2)) == 0.0);

  const double half_pi = 2.0 * std::atan(1.0);
  CHECK(residual_norm(scalar_homotopy(4, half_pi), identity(4)) < 1e-14);

  Mat start = -truncated_shift(4);
  start(3, 0) = Scalar(1.0, 0.0);
  CHECK(residual_norm(scalar_homotopy(4, 0.0), start) < 1e-14);

  CHECK(residual_norm(scalar_homotopy(1, 0.3), identity(1)) < 1e-14);

  for (Index size : {Index(2), Index(5), Index(8)}) {
    for (double t : {0.0, 0.3, 0.7, 1.2, half_pi}) {
      const Mat u = scalar_homotopy(size, t);
      CHECK(residual_norm(Mat(u.adjoint() * u), identity(size)) < 1e-12);
    }
  }
}

TEST_CASE("doubled shift registry on the smallest window") {
  SubproductSystem sys = build_system(2, 2);
  FusionMaps fusion(sys);
  ToeplitzOps ops(fusion, 2);
  auto reports = verify_kk(ops, 1);
  CHECK(reports.size() > 30);
  CHECK(all_pass(reports));
}

TEST_CASE("integer registry") {
  auto reports = verify_gysin(6);
  CHECK(!reports.empty());
  CHECK(all_pass(reports));
}

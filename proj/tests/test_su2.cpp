#include <cmath>
#include <vector>

#include <doctest.h>

#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/su2.hpp"

using namespace sps;

TEST_CASE("group elements are unitary and compose") {
  const SU2Element g = z_rotation(0.71);
  const SU2Element h = x_rotation(1.13);
  CHECK(residual_norm(Mat(g.matrix().adjoint() * g.matrix()), identity(2)) < 1e-14);
  const SU2Element gh = su2_product(g, h);
  CHECK(residual_norm(gh.matrix(), Mat(g.matrix() * h.matrix())) < 1e-14);
  const SU2Element ginv = g.inverse();
  CHECK(residual_norm(su2_product(g, ginv).matrix(), identity(2)) < 1e-14);
}

TEST_CASE("haar stream is deterministic in the seed") {
  const std::vector<SU2Element> a = sample_set(3, 42);
  const std::vector<SU2Element> b = sample_set(3, 42);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == 5);  // two fixed elements plus the Haar draws
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].a - b[i].a) == 0.0);
    CHECK(std::abs(a[i].b - b[i].b) == 0.0);
    const double norm = std::norm(a[i].a) + std::norm(a[i].b);
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
}

TEST_CASE("degree one representation is the defining one") {
  const SymmetricRealization real = symmetric_basis(1);
  for (const SU2Element& g : sample_set(2, 7)) {
    CHECK(residual_norm(irrep_matrix(real, g), g.matrix()) < 1e-13);
  }
}

TEST_CASE("representation is multiplicative and respects weights") {
  const SymmetricRealization real = symmetric_basis(3);
  const std::vector<SU2Element> samples = sample_set(2, 11);
  const SU2Element g = samples[2];
  const SU2Element h = samples[3];
  CHECK(residual_norm(irrep_matrix(real, su2_product(g, h)),
                      Mat(irrep_matrix(real, g) * irrep_matrix(real, h))) < 1e-12);

  // Diagonal rotations act diagonally with evenly spaced descending phases.
  const double theta = 0.37;
  const Mat u = irrep_matrix(real, z_rotation(theta));
  for (Index r = 0; r < u.rows(); ++r) {
    for (Index c = 0; c < u.cols(); ++c) {
      if (r != c) CHECK(std::abs(u(r, c)) < 1e-13);
    }
    CHECK(std::abs(std::abs(u(r, r)) - 1.0) < 1e-13);
  }
  CHECK(std::abs(u(0, 0) - std::polar(1.0, 3.0 * theta)) < 1e-12);
  for (Index r = 0; r + 1 < u.rows(); ++r) {
    const Scalar step = u(r + 1, r + 1) / u(r, r);
    CHECK(std::abs(step - std::polar(1.0, -2.0 * theta)) < 1e-12);
  }
}

TEST_CASE("symmetric projector has the irreducible dimension as trace") {
  const SymmetricRealization real = symmetric_basis(3);
  const Mat p = sym_projector(real);
  CHECK(std::abs(p.trace() - Scalar(4.0)) < 1e-12);
  CHECK(residual_norm(Mat(p * p), p) < 1e-12);
}

TEST_CASE("irreducibility detection") {
  const SymmetricRealization real = symmetric_basis(2);
  std::vector<Mat> irreducible;
  std::vector<Mat> reducible;
  for (const SU2Element& g : sample_set(4, 13)) {
    const Mat u = irrep_matrix(real, g);
    irreducible.push_back(u);
    Mat block = Mat::Zero(6, 6);
    block.topLeftCorner(3, 3) = u;
    block.bottomRightCorner(3, 3) = u;
    reducible.push_back(block);
  }
  CHECK(is_irreducible(irreducible));
  CHECK(!is_irreducible(reducible));
}

TEST_CASE("representation registry passes") {
  const auto reports = verify_representation(2, 3, 99);
  CHECK(!reports.empty());
  CHECK(all_pass(reports));
}

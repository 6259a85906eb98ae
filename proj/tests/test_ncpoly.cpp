#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "sps/linalg.hpp"
#include "sps/ncpoly.hpp"
#include "sps/report.hpp"
#include "sps/system.hpp"

using namespace sps;

TEST_CASE("parse and format invert each other") {
  const NcPolynomial det = determinant_polynomial(2);
  CHECK(det.is_homogeneous());
  CHECK(det.degree() == 2);
  const NcPolynomial round = parse_polynomial(format_polynomial(det), 2);
  CHECK(max_coefficient_distance(det, round) < 1e-15);

  const NcPolynomial mixed =
      parse_polynomial("1/2 x0 x1 + (0+1i) x1 x0 - 0.25 x0 x0", 1);
  const NcPolynomial mixed_round = parse_polynomial(format_polynomial(mixed), 1);
  CHECK(max_coefficient_distance(mixed, mixed_round) < 1e-15);
  const Vec coeffs = coefficient_vector(mixed, 2);
  REQUIRE(coeffs.size() == 4);
  CHECK(std::abs(coeffs(1) - Scalar(0.5)) < 1e-15);
  CHECK(std::abs(coeffs(2) - Scalar(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(coeffs(0) - Scalar(-0.25)) < 1e-15);
}

TEST_CASE("generator coefficients rescale the determinant vector") {
  for (int n = 1; n <= 3; ++n) {
    const Vec coeffs = coefficient_vector(determinant_polynomial(n), 2);
    const Vec target = std::sqrt(static_cast<double>(n + 1)) * determinant_vector(n);
    CHECK((coeffs - target).norm() < 1e-13);
  }
}

TEST_CASE("malformed input is rejected with a position") {
  CHECK_THROWS_AS(parse_polynomial("x3", 2), std::runtime_error);
  CHECK_THROWS_AS(parse_polynomial("x0 +", 1), std::runtime_error);
  CHECK_THROWS_AS(parse_polynomial("0.5.5 x0", 1), std::runtime_error);
  CHECK_THROWS_AS(parse_polynomial("y0", 1), std::runtime_error);
}

TEST_CASE("ideal components have the complementary dimensions") {
  const std::vector<NcPolynomial> gens = {determinant_polynomial(1)};
  const std::vector<Mat> comps = ideal_components(gens, 3);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0].cols() == 0);
  CHECK(comps[1].cols() == 0);
  CHECK(comps[2].cols() == 1);  // 4 ambient words minus d_2 = 3
  CHECK(comps[3].cols() == 4);  // 8 ambient words minus d_3 = 4
}

TEST_CASE("inhomogeneous or low degree generators are rejected") {
  const NcPolynomial linear = parse_polynomial("x0 + x1", 1);
  CHECK_THROWS_AS(system_from_ideal({linear}, 3), std::invalid_argument);
  const NcPolynomial mixed = parse_polynomial("x0 x1 + x0", 1);
  CHECK_THROWS_AS(system_from_ideal({mixed}, 3), std::invalid_argument);
}

TEST_CASE("ideal correspondence registry passes") {
  for (int n = 1; n <= 2; ++n) {
    const auto reports = verify_ideal_correspondence(n, 4);
    CHECK(!reports.empty());
    CHECK(all_pass(reports));
  }
}

#include <array>
#include <stdexcept>

#include <doctest.h>

#include "sps/linalg.hpp"

using namespace sps;

TEST_CASE("tensor indexer uses big endian words") {
  TensorIndexer idx(3, 3);
  CHECK(idx.size() == 27);
  const std::array<int, 3> word = {1, 2, 0};
  CHECK(idx.flat(word) == 15);
  CHECK(idx.word(15) == std::vector<int>{1, 2, 0});
  for (std::int64_t f = 0; f < idx.size(); ++f) {
    CHECK(idx.flat(idx.word(f)) == f);
  }
}

TEST_CASE("kron matches the indexer convention") {
  Vec e0 = Vec::Zero(2);
  e0(0) = 1.0;
  Vec e1 = Vec::Zero(2);
  e1(1) = 1.0;
  Mat prod = kron(Mat(e0), Mat(e1));
  REQUIRE(prod.rows() == 4);
  CHECK(std::abs(prod(1, 0) - Scalar(1.0)) < 1e-15);

  Mat a = Mat::Random(2, 3);
  Mat b = Mat::Random(3, 2);
  Mat c = Mat::Random(2, 2);
  CHECK(residual_norm(kron3(a, b, c), kron(kron(a, b), c)) < 1e-13);
}

TEST_CASE("structured kron products match the dense ones") {
  Mat a = Mat::Random(3, 4);
  Mat x = Mat::Random(4 * 5, 2);
  CHECK(residual_norm(apply_kron_right(a, 5, x), kron(a, identity(5)) * x) < 1e-12);
  Mat y = Mat::Random(5 * 4, 2);
  CHECK(residual_norm(apply_kron_left(5, a, y), kron(identity(5), a) * y) < 1e-12);
}

TEST_CASE("orthonormal bases of spans and complements") {
  Mat s(3, 2);
  s << Scalar(1), Scalar(2), Scalar(1), Scalar(2), Scalar(0), Scalar(0);
  Mat q = onb_of_span(s);
  REQUIRE(q.cols() == 1);
  CHECK(residual_norm(Mat(q.adjoint() * q), identity(1)) < 1e-14);
  CHECK(numerical_rank(s) == 1);

  Mat comp = onb_of_complement(s);
  REQUIRE(comp.cols() == 2);
  CHECK(op_norm(q.adjoint() * comp) < 1e-14);

  Mat row(1, 2);
  row << Scalar(1), Scalar(1);
  Mat ker = kernel_onb(row);
  REQUIRE(ker.cols() == 1);
  CHECK(op_norm(row * ker) < 1e-14);
}

TEST_CASE("psd square roots handle singular directions") {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 4.0;
  Mat root = sqrt_psd(a);
  CHECK(std::abs(root(0, 0) - Scalar(2.0)) < 1e-14);
  CHECK(std::abs(root(1, 1)) < 1e-14);
  Mat inv_root = inv_sqrt_psd(a);
  CHECK(std::abs(inv_root(0, 0) - Scalar(0.5)) < 1e-14);
  CHECK(std::abs(inv_root(1, 1)) < 1e-14);
}

TEST_CASE("norms and eigenvalues") {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = -4.0;
  CHECK(std::abs(op_norm(a) - 4.0) < 1e-13);
  const std::vector<double> eigs = hermitian_eigenvalues(a);
  REQUIRE(eigs.size() == 2);
  CHECK(std::abs(eigs[0] + 4.0) < 1e-13);
  CHECK(std::abs(eigs[1] - 3.0) < 1e-13);
  CHECK_THROWS_AS(residual_norm(identity(2), identity(3)), std::invalid_argument);
}

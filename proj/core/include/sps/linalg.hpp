#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sps {

using Scalar = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

// Hard cap on the entry count of any dense matrix we materialise. Requests
// beyond the cap throw instead of exhausting memory.
inline constexpr std::int64_t kEntryBudget = std::int64_t(1) << 26;

// Ambient tensor powers H^{otimes m} are only realised while their dimension
// stays within this budget; higher degrees must go through the recursive
// coordinate tower.
inline constexpr std::int64_t kAmbientBudget = 3'000'000;

// Addresses the standard basis of an m-fold tensor power of an a-dimensional
// space. Words are big endian: the first letter carries the largest stride,
// matching the ordering produced by kron on the factors left to right.
class TensorIndexer {
 public:
  TensorIndexer(int alphabet_size, int degree);

  std::int64_t flat(std::span<const int> word) const;
  std::vector<int> word(std::int64_t flat_index) const;

  std::int64_t size() const { return size_; }
  int alphabet() const { return alphabet_; }
  int degree() const { return degree_; }

 private:
  int alphabet_;
  int degree_;
  std::int64_t size_;
};

// Dense Kronecker product with budget guard.
Mat kron(const Mat& a, const Mat& b);
Mat kron3(const Mat& a, const Mat& b, const Mat& c);

// Computes (I_d otimes a) * x without materialising the Kronecker factor.
Mat apply_kron_left(Index id_dim, const Mat& a, const Mat& x);
// Computes (a otimes I_d) * x without materialising the Kronecker factor.
Mat apply_kron_right(const Mat& a, Index id_dim, const Mat& x);

Mat identity(Index n);

// Orthonormal basis of the column span. Columns with singular value below
// rel_tol times the largest singular value are discarded.
Mat onb_of_span(const Mat& s, double rel_tol = 1e-12);

// Orthonormal basis of the orthogonal complement of the column span inside
// the row space of s.
Mat onb_of_complement(const Mat& s, double rel_tol = 1e-12);

// Orthonormal basis of the kernel of s.
Mat kernel_onb(const Mat& s, double rel_tol = 1e-12);

Index numerical_rank(const Mat& s, double rel_tol = 1e-12);

// Square root and inverse square root of a positive semidefinite matrix.
// Eigenvalues below cut_tol are treated as absent; eigenvalues below -cut_tol
// or a non-hermitian input raise std::invalid_argument.
Mat sqrt_psd(const Mat& a, double cut_tol = 1e-12);
Mat inv_sqrt_psd(const Mat& a, double cut_tol = 1e-12);

std::vector<double> hermitian_eigenvalues(const Mat& a);

// Largest singular value. Exact for moderate sizes; for very large inputs a
// deterministic power iteration is used, which is accurate to a few percent
// and sufficient for order-of-magnitude residual comparisons.
double op_norm(const Mat& a);

double residual_norm(const Mat& a, const Mat& b);

}  // namespace sps

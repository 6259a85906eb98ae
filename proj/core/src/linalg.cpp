#include "sps/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace sps {

namespace {

void check_entry_budget(Index rows, Index cols) {
  const std::int64_t entries = std::int64_t(rows) * std::int64_t(cols);
  if (rows < 0 || cols < 0 || entries > kEntryBudget) {
    throw std::invalid_argument("matrix of size " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " exceeds the entry budget");
  }
}

}  // namespace

TensorIndexer::TensorIndexer(int alphabet_size, int degree)
    : alphabet_(alphabet_size), degree_(degree) {
  if (alphabet_size < 1 || degree < 0) {
    throw std::invalid_argument("TensorIndexer requires alphabet >= 1 and degree >= 0");
  }
  size_ = 1;
  for (int i = 0; i < degree; ++i) {
    if (size_ > kAmbientBudget / alphabet_size) {
      throw std::invalid_argument("tensor power dimension exceeds the ambient budget");
    }
    size_ *= alphabet_size;
  }
}

std::int64_t TensorIndexer::flat(std::span<const int> word) const {
  if (static_cast<int>(word.size()) != degree_) {
    throw std::invalid_argument("word length does not match the tensor degree");
  }
  std::int64_t idx = 0;
  for (int letter : word) {
    if (letter < 0 || letter >= alphabet_) {
      throw std::invalid_argument("letter out of range");
    }
    idx = idx * alphabet_ + letter;
  }
  return idx;
}

std::vector<int> TensorIndexer::word(std::int64_t flat_index) const {
  if (flat_index < 0 || flat_index >= size_) {
    throw std::invalid_argument("flat index out of range");
  }
  std::vector<int> letters(degree_);
  for (int pos = degree_ - 1; pos >= 0; --pos) {
    letters[pos] = static_cast<int>(flat_index % alphabet_);
    flat_index /= alphabet_;
  }
  return letters;
}

Mat kron(const Mat& a, const Mat& b) {
  check_entry_budget(a.rows() * b.rows(), a.cols() * b.cols());
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  out = Eigen::kroneckerProduct(a, b);
  return out;
}

Mat kron3(const Mat& a, const Mat& b, const Mat& c) { return kron(kron(a, b), c); }

Mat apply_kron_left(Index id_dim, const Mat& a, const Mat& x) {
  if (x.rows() != id_dim * a.cols()) {
    throw std::invalid_argument("apply_kron_left: row count mismatch");
  }
  check_entry_budget(id_dim * a.rows(), x.cols());
  Mat out(id_dim * a.rows(), x.cols());
  for (Index blk = 0; blk < id_dim; ++blk) {
    out.middleRows(blk * a.rows(), a.rows()) = a * x.middleRows(blk * a.cols(), a.cols());
  }
  return out;
}

Mat apply_kron_right(const Mat& a, Index id_dim, const Mat& x) {
  if (x.rows() != a.cols() * id_dim) {
    throw std::invalid_argument("apply_kron_right: row count mismatch");
  }
  check_entry_budget(a.rows() * id_dim, x.cols());
  Mat out = Mat::Zero(a.rows() * id_dim, x.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const Scalar aij = a(i, j);
      if (aij == Scalar(0)) continue;
      out.middleRows(i * id_dim, id_dim) += aij * x.middleRows(j * id_dim, id_dim);
    }
  }
  return out;
}

Mat identity(Index n) { return Mat::Identity(n, n); }

namespace {

// Shared SVD helper returning the decomposition together with the numerical
// rank at the requested relative cutoff. Jacobi rather than divide and
// conquer: the BDCSVD in Eigen 3.4.0 returns broken spectra for complex
// matrices once the small dimension reaches its blocking threshold, which
// the fiber recursion hits at moderate degree.
struct RankedSvd {
  Eigen::JacobiSVD<Mat> svd;
  Index rank = 0;
};

RankedSvd ranked_svd(const Mat& s, double rel_tol, unsigned options) {
  RankedSvd out;
  out.svd.compute(s, options);
  const auto& sv = out.svd.singularValues();
  if (sv.size() == 0) return out;
  const double cut = rel_tol * sv(0);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut && sv(i) > 0.0) ++out.rank;
  }
  return out;
}

}  // namespace

Mat onb_of_span(const Mat& s, double rel_tol) {
  if (s.cols() == 0 || s.rows() == 0) return Mat(s.rows(), 0);
  RankedSvd r = ranked_svd(s, rel_tol, Eigen::ComputeThinU);
  return r.svd.matrixU().leftCols(r.rank);
}

Mat onb_of_complement(const Mat& s, double rel_tol) {
  if (s.cols() == 0) return identity(s.rows());
  RankedSvd r = ranked_svd(s, rel_tol, Eigen::ComputeFullU);
  return r.svd.matrixU().rightCols(s.rows() - r.rank);
}

Mat kernel_onb(const Mat& s, double rel_tol) {
  if (s.rows() == 0) return identity(s.cols());
  if (s.cols() == 0) return Mat(0, 0);
  RankedSvd r = ranked_svd(s, rel_tol, Eigen::ComputeFullV);
  return r.svd.matrixV().rightCols(s.cols() - r.rank);
}

Index numerical_rank(const Mat& s, double rel_tol) {
  if (s.cols() == 0 || s.rows() == 0) return 0;
  return ranked_svd(s, rel_tol, 0).rank;
}

namespace {

Eigen::SelfAdjointEigenSolver<Mat> hermitian_eigs(const Mat& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("hermitian operation on a non-square matrix");
  }
  const double scale = a.norm();
  if ((a - a.adjoint()).norm() > 1e-10 * (1.0 + scale)) {
    throw std::invalid_argument("matrix is not hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es((a + Mat(a.adjoint())) / 2.0);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolver failed to converge");
  }
  return es;
}

}  // namespace

Mat sqrt_psd(const Mat& a, double cut_tol) {
  auto es = hermitian_eigs(a);
  Eigen::VectorXd vals = es.eigenvalues();
  if (vals.size() > 0 && vals(0) < -cut_tol) {
    throw std::invalid_argument("matrix has a negative eigenvalue beyond tolerance");
  }
  Eigen::VectorXd mapped = vals.unaryExpr(
      [cut_tol](double v) { return v > cut_tol ? std::sqrt(v) : 0.0; });
  return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

Mat inv_sqrt_psd(const Mat& a, double cut_tol) {
  auto es = hermitian_eigs(a);
  Eigen::VectorXd vals = es.eigenvalues();
  if (vals.size() > 0 && vals(0) < -cut_tol) {
    throw std::invalid_argument("matrix has a negative eigenvalue beyond tolerance");
  }
  Eigen::VectorXd mapped = vals.unaryExpr(
      [cut_tol](double v) { return v > cut_tol ? 1.0 / std::sqrt(v) : 0.0; });
  return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<double> hermitian_eigenvalues(const Mat& a) {
  auto es = hermitian_eigs(a);
  const Eigen::VectorXd& vals = es.eigenvalues();
  return std::vector<double>(vals.data(), vals.data() + vals.size());
}

namespace {

// Deterministic power iteration on the Gram matrix, used only above the
// exact-SVD size threshold. Two different start vectors guard against an
// unlucky orthogonal start.
double power_iteration_norm(const Mat& a) {
  const Index cols = a.cols();
  double best = 0.0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Vec v(cols);
    for (Index i = 0; i < cols; ++i) {
      const double phase = 0.7548776662 * static_cast<double>(i + 1 + attempt * 37);
      v(i) = Scalar(std::cos(phase), std::sin(phase));
    }
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 240; ++it) {
      Vec w = a.adjoint() * (a * v);
      const double norm = w.norm();
      if (norm == 0.0) break;
      lambda = norm;
      v = w / norm;
    }
    best = std::max(best, std::sqrt(lambda));
  }
  return best;
}

}  // namespace

double op_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Index small = std::min(a.rows(), a.cols());
  if (small <= 1200) {
    // Largest eigenvalue of the Gram matrix on the smaller side. The
    // self adjoint solver is reliable where the 3.4.0 BDCSVD is not, and
    // squaring costs nothing at the accuracy the norm checks need.
    Mat gram;
    if (a.rows() >= a.cols()) {
      gram.noalias() = a.adjoint() * a;
    } else {
      gram.noalias() = a * a.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
  }
  return power_iteration_norm(a);
}

double residual_norm(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("residual_norm: shape mismatch");
  }
  return op_norm(Mat(a - b));
}

}  // namespace sps

#include "sps/toeplitz.hpp"

#include <cmath>
#include <stdexcept>

namespace sps {

namespace {

double parity_sign(long exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

std::map<std::string, double> params_m(int m) {
  return {{"m", static_cast<double>(m)}};
}

}  // namespace

FockWindow::FockWindow(SubproductSystem& sys, int top) : top_(top) {
  if (top < 0 || top > sys.max_degree()) {
    throw std::invalid_argument("Fock window exceeds the available degrees");
  }
  dims_.reserve(top + 1);
  offsets_.reserve(top + 1);
  for (int m = 0; m <= top; ++m) {
    offsets_.push_back(total_);
    dims_.push_back(sys.dim(m));
    total_ += sys.dim(m);
  }
}

Mat GradedOperator::full(const FockWindow& window) const {
  Mat out = Mat::Zero(window.total(), window.total());
  for (const auto& [m, block] : blocks) {
    const int target = m + shift;
    if (m < 0 || m > window.top() || target < 0 || target > window.top()) {
      continue;
    }
    if (block.rows() != window.dim(target) || block.cols() != window.dim(m)) {
      throw std::invalid_argument("graded block has the wrong shape");
    }
    out.block(window.offset(target), window.offset(m), window.dim(target),
              window.dim(m)) = block;
  }
  return out;
}

ToeplitzOps::ToeplitzOps(FusionMaps& fusion, int top) : fusion_(fusion), top_(top) {
  if (top < 1) {
    throw std::invalid_argument("Toeplitz window needs at least degree one");
  }
  fusion_.ensure_degree(top);
  seqs_ = make_sequences(system().n(), top + 2);
}

Mat ToeplitzOps::creation_block(int j, int m) {
  SubproductSystem& sys = system();
  const int h = sys.n() + 1;
  if (j < 0 || j >= h) {
    throw std::invalid_argument("creation index out of range");
  }
  const Index d = sys.dim(m);
  return sys.coisometry(1, m).middleCols(static_cast<Index>(j) * d, d);
}

Mat ToeplitzOps::creation_block(const Vec& xi, int k, int m) {
  SubproductSystem& sys = system();
  if (xi.size() != sys.dim(k)) {
    throw std::invalid_argument("fiber vector has the wrong length");
  }
  const Mat lift = kron(Mat(xi), identity(sys.dim(m)));
  return sys.coisometry(k, m) * lift;
}

Mat ToeplitzOps::right_creation_block(int j, int m) {
  SubproductSystem& sys = system();
  const int h = sys.n() + 1;
  if (j < 0 || j >= h) {
    throw std::invalid_argument("creation index out of range");
  }
  const Mat& co = sys.coisometry(m, 1);
  Mat out(sys.dim(m + 1), sys.dim(m));
  for (Index c = 0; c < sys.dim(m); ++c) {
    out.col(c) = co.col(c * h + j);
  }
  return out;
}

double ToeplitzOps::phi(int m) { return seqs_.dim_d(m) / seqs_.dim_d(m + 1); }

double ToeplitzOps::phi_inverse(int m) {
  return seqs_.dim_d(m + 1) / seqs_.dim_d(m);
}

namespace {

// Left creation blocks assembled back into the edge coisometry, checking the
// bookkeeping between the two indexings.
void check_compression_expansions(ToeplitzOps& ops, double tol,
                                  std::vector<IdentityReport>& out) {
  SubproductSystem& sys = ops.system();
  const int h = sys.n() + 1;
  for (int m = 0; m + 1 <= ops.top(); ++m) {
    const Index d = sys.dim(m);
    Mat left(sys.dim(m + 1), h * d);
    for (int j = 0; j < h; ++j) {
      left.middleCols(static_cast<Index>(j) * d, d) = ops.creation_block(j, m);
    }
    out.push_back(make_report("left_compression_expansion", params_m(m),
                              residual_norm(left, sys.coisometry(1, m)), tol));

    Mat right(sys.dim(m + 1), d * h);
    for (int j = 0; j < h; ++j) {
      const Mat block = ops.right_creation_block(j, m);
      for (Index c = 0; c < d; ++c) {
        right.col(c * h + j) = block.col(c);
      }
    }
    out.push_back(make_report("right_compression_expansion", params_m(m),
                              residual_norm(right, sys.coisometry(m, 1)), tol));
  }
}

// The canonical isometries written as alternating sums of creation blocks
// against the opposite tensor factor.
void check_isometry_creation_forms(ToeplitzOps& ops, double tol,
                                   std::vector<IdentityReport>& out) {
  SubproductSystem& sys = ops.system();
  FusionMaps& fusion = ops.fusion();
  const int n = sys.n();
  const int h = n + 1;
  for (int m = 1; m <= ops.top(); ++m) {
    const double ratio = std::sqrt(ops.phi(m - 1));
    Mat e = Mat::Zero(h, 1);

    Mat right_sum = Mat::Zero(sys.dim(m) * h, sys.dim(m - 1));
    for (int j = 0; j < h; ++j) {
      e.setZero();
      e(j, 0) = 1.0;
      right_sum += parity_sign(n - j) *
                   kron(ops.right_creation_block(n - j, m - 1), e);
    }
    out.push_back(make_report("right_isometry_creation_form", params_m(m),
                              residual_norm(fusion.vee(m), ratio * right_sum),
                              tol));

    Mat left_sum = Mat::Zero(h * sys.dim(m), sys.dim(m - 1));
    for (int j = 0; j < h; ++j) {
      e.setZero();
      e(j, 0) = 1.0;
      left_sum += parity_sign(j) * kron(e, ops.creation_block(n - j, m - 1));
    }
    out.push_back(make_report("left_isometry_creation_form", params_m(m),
                              residual_norm(fusion.vee_prime(m), ratio * left_sum),
                              tol));
  }
}

// Row sum, alternating determinant sum, adjoint exchange and column Gram
// relations between creation blocks.
void check_algebra_relations(ToeplitzOps& ops, double tol,
                             std::vector<IdentityReport>& out) {
  SubproductSystem& sys = ops.system();
  const int n = sys.n();
  const int h = n + 1;

  for (int m = 1; m <= ops.top(); ++m) {
    Mat sum = Mat::Zero(sys.dim(m), sys.dim(m));
    for (int j = 0; j < h; ++j) {
      const Mat block = ops.creation_block(j, m - 1);
      sum += block * block.adjoint();
    }
    out.push_back(make_report("creation_row_sum", params_m(m),
                              residual_norm(sum, identity(sys.dim(m))), tol));
  }

  for (int m = 0; m + 2 <= ops.top(); ++m) {
    Mat sum = Mat::Zero(sys.dim(m + 2), sys.dim(m));
    for (int i = 0; i < h; ++i) {
      sum += parity_sign(i) * (ops.creation_block(i, m + 1) *
                               ops.creation_block(n - i, m));
    }
    out.push_back(
        make_report("determinant_relation", params_m(m), op_norm(sum), tol));
  }

  for (int m = 0; m + 1 <= ops.top(); ++m) {
    const double ratio = (m >= 1) ? ops.phi(m - 1) : 0.0;
    double worst = 0.0;
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < h; ++j) {
        const Mat lhs =
            ops.creation_block(i, m).adjoint() * ops.creation_block(j, m);
        Mat rhs = Mat::Zero(sys.dim(m), sys.dim(m));
        if (i == j) {
          rhs = identity(sys.dim(m));
        }
        if (m >= 1) {
          rhs += parity_sign(i + j + 1) * ratio *
                 (ops.creation_block(n - i, m - 1) *
                  ops.creation_block(n - j, m - 1).adjoint());
        }
        worst = std::max(worst, residual_norm(lhs, rhs));
      }
    }
    out.push_back(make_report("adjoint_exchange", params_m(m), worst, tol));
  }

  for (int m = 0; m + 1 <= ops.top(); ++m) {
    Mat sum = Mat::Zero(sys.dim(m), sys.dim(m));
    for (int j = 0; j < h; ++j) {
      const Mat block = ops.creation_block(j, m);
      sum += block.adjoint() * block;
    }
    out.push_back(make_report(
        "creation_column_gram", params_m(m),
        residual_norm(sum, ops.phi_inverse(m) * identity(sys.dim(m))), tol));
  }
}

// Overlap of consecutive canonical isometries and the closed form of the
// resulting commutator norms, including the dimension-weighted bound that is
// uniform in the interpolation exponent.
void check_cascade_and_commutators(ToeplitzOps& ops, double tol,
                                   std::vector<IdentityReport>& out) {
  SubproductSystem& sys = ops.system();
  FusionMaps& fusion = ops.fusion();
  const int h = sys.n() + 1;
  const SequencePack& seqs = fusion.sequences();

  for (int m = 2; m <= ops.top(); ++m) {
    const double dm1 = seqs.dim_d(m - 1);
    const double scale = std::sqrt(1.0 - 1.0 / (dm1 * dm1));

    const Mat inner = apply_kron_right(sys.inclusion(1, m - 1), h, fusion.vee(m));
    const Mat cascade = sys.coisometry(1, m - 2) *
                        apply_kron_left(h, fusion.vee(m - 1).adjoint(), inner);
    out.push_back(make_report(
        "isometry_cascade_overlap", params_m(m),
        residual_norm(cascade, scale * identity(sys.dim(m - 1))), tol));

    const Mat other =
        apply_kron_left(h, fusion.vee(m - 1), sys.inclusion(1, m - 2));
    const double norm = op_norm(inner - other);
    const double closed = std::sqrt(2.0 * (1.0 - scale));
    out.push_back(make_report("isometry_commutator_norm", params_m(m),
                              std::abs(norm - closed), tol));
  }

  for (int m = 0; m + 1 <= ops.top(); ++m) {
    const double dm = seqs.dim_d(m);
    for (int j = 0; j < h; ++j) {
      const Mat block1 =
          apply_kron_right(ops.creation_block(j, m).adjoint(), h,
                           fusion.vee(m + 1));
      Mat block2 = Mat::Zero(sys.dim(m) * h, sys.dim(m));
      if (m >= 1) {
        block2 = fusion.vee(m) * ops.creation_block(j, m - 1).adjoint();
      }
      std::map<std::string, double> params = {{"j", static_cast<double>(j)},
                                              {"m", static_cast<double>(m)}};
      out.push_back(make_report("weighted_commutator_bound", params,
                                dm * op_norm(block1 - block2),
                                std::sqrt(2.0)));
    }
  }
}

// The dimension ratios increase towards their limit, so the gap sequence is
// positive and decreasing; this is the numerical trace of the compactness of
// the ratio operator minus its limit.
void check_ratio_decay(ToeplitzOps& ops, std::vector<IdentityReport>& out) {
  const double tol = 1e-12;
  const double gamma = gamma_limit(ops.n());
  for (int m = 0; m + 1 <= ops.top(); ++m) {
    out.push_back(make_report("ratio_below_limit", params_m(m),
                              std::max(0.0, ops.phi(m) - gamma), tol));
  }
  for (int m = 0; m + 2 <= ops.top(); ++m) {
    const double gap = gamma - ops.phi(m);
    const double next = gamma - ops.phi(m + 1);
    out.push_back(make_report("ratio_gap_decreasing", params_m(m),
                              std::max(0.0, next - gap), tol));
  }
}

// Special shape of the n = 1 algebra: the two creation operators commute,
// their column Gram is a function of the degree, the adjoint exchange
// collapses to a rank-one correction with coefficient 1 / (m + 1), and the
// row sum is a projection defect of rank one at the vacuum.
void check_pair_relations(ToeplitzOps& ops, double tol,
                          std::vector<IdentityReport>& out) {
  SubproductSystem& sys = ops.system();
  for (int m = 0; m + 2 <= ops.top(); ++m) {
    const Mat lhs = ops.creation_block(0, m + 1) * ops.creation_block(1, m);
    const Mat rhs = ops.creation_block(1, m + 1) * ops.creation_block(0, m);
    out.push_back(make_report("pair_commutation", params_m(m),
                              residual_norm(lhs, rhs), tol));
  }
  for (int m = 0; m + 1 <= ops.top(); ++m) {
    Mat sum = Mat::Zero(sys.dim(m), sys.dim(m));
    for (int j = 0; j < 2; ++j) {
      const Mat block = ops.creation_block(j, m);
      sum += block.adjoint() * block;
    }
    const double value =
        (2.0 + static_cast<double>(m)) / (1.0 + static_cast<double>(m));
    out.push_back(make_report("pair_column_gram", params_m(m),
                              residual_norm(sum, value * identity(sys.dim(m))),
                              tol));
  }
  for (int m = 0; m + 1 <= ops.top(); ++m) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Mat flipped = Mat::Zero(sys.dim(m), sys.dim(m));
        if (m >= 1) {
          flipped = ops.creation_block(j, m - 1) *
                    ops.creation_block(i, m - 1).adjoint();
        }
        const Mat lhs = ops.creation_block(i, m).adjoint() *
                            ops.creation_block(j, m) -
                        flipped;
        Mat rhs = -flipped;
        if (i == j) {
          rhs += identity(sys.dim(m));
        }
        rhs /= 1.0 + static_cast<double>(m);
        worst = std::max(worst, residual_norm(lhs, rhs));
      }
    }
    out.push_back(make_report("pair_normality_exchange", params_m(m), worst, tol));
  }
  for (int m = 1; m <= ops.top(); ++m) {
    Mat sum = Mat::Zero(sys.dim(m), sys.dim(m));
    for (int j = 0; j < 2; ++j) {
      const Mat block = ops.creation_block(j, m - 1);
      sum += block * block.adjoint();
    }
    out.push_back(make_report("pair_row_purity", params_m(m),
                              residual_norm(sum, identity(sys.dim(m))), tol));
  }
}

// Conjugating a creation block by the fiber actions equals creation by the
// rotated vector.
void check_creation_equivariance(ToeplitzOps& ops,
                                 const std::vector<SU2Element>& samples,
                                 std::vector<IdentityReport>& out) {
  const double tol = 1e-8;
  SubproductSystem& sys = ops.system();
  FusionMaps& fusion = ops.fusion();
  const int h = sys.n() + 1;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    std::vector<Mat> reps(ops.top() + 1);
    reps[0] = identity(1);
    reps[1] = fusion.fiber_action(1, samples[s]);
    for (int m = 2; m <= ops.top(); ++m) {
      reps[m] = sys.seed(m).adjoint() * kron(reps[m - 1], reps[1]) * sys.seed(m);
    }
    for (int m = 0; m + 1 <= ops.top(); ++m) {
      double worst = 0.0;
      for (int j = 0; j < h; ++j) {
        const Mat lhs = reps[m + 1] * ops.creation_block(j, m);
        const Mat rhs =
            ops.creation_block(Vec(reps[1].col(j)), 1, m) * reps[m];
        worst = std::max(worst, residual_norm(lhs, rhs));
      }
      std::map<std::string, double> params = {
          {"m", static_cast<double>(m)}, {"sample", static_cast<double>(s)}};
      out.push_back(make_report("creation_equivariance", params, worst, tol));
    }
  }
}

// Creation by a unit fiber vector is a contraction on every block.
void check_creation_contraction(ToeplitzOps& ops, double tol,
                                std::vector<IdentityReport>& out) {
  SubproductSystem& sys = ops.system();
  for (int k = 1; k <= 2 && k < ops.top(); ++k) {
    const Index d = sys.dim(k);
    std::vector<Vec> vectors;
    vectors.push_back(Vec::Constant(d, Scalar(1.0, 0.0)));
    Vec ramp(d);
    for (Index c = 0; c < d; ++c) {
      ramp(c) = Scalar(static_cast<double>(c + 1),
                       (c % 2 == 0) ? 0.5 : -0.5);
    }
    vectors.push_back(ramp);
    for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
      const Vec xi = vectors[idx] / vectors[idx].norm();
      double sup = 0.0;
      for (int m = 0; m + k <= ops.top(); ++m) {
        sup = std::max(sup, op_norm(ops.creation_block(xi, k, m)));
      }
      std::map<std::string, double> params = {
          {"k", static_cast<double>(k)}, {"sample", static_cast<double>(idx)}};
      out.push_back(make_report("creation_contraction", params,
                                std::max(0.0, sup - 1.0), tol));
    }
  }
}

}  // namespace

std::vector<IdentityReport> verify_toeplitz(ToeplitzOps& ops,
                                            const std::vector<SU2Element>& samples) {
  const double tol = 1e-9;
  std::vector<IdentityReport> out;
  check_compression_expansions(ops, tol, out);
  check_isometry_creation_forms(ops, tol, out);
  check_algebra_relations(ops, tol, out);
  check_cascade_and_commutators(ops, tol, out);
  check_ratio_decay(ops, out);
  if (ops.n() == 1) {
    check_pair_relations(ops, tol, out);
  }
  check_creation_equivariance(ops, samples, out);
  check_creation_contraction(ops, tol, out);
  sort_reports(out);
  return out;
}

}  // namespace sps

#include "sps/fusion.hpp"

#include <cmath>
#include <stdexcept>

namespace sps {

namespace {

double parity_sign(long exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

double dim_ratio(const SequencePack& s, int num_a, int num_b, int den_a, int den_b) {
  return s.dim_or_zero(num_a).convert_to<double>() * s.dim_or_zero(num_b).convert_to<double>() /
         (s.dim_or_zero(den_a).convert_to<double>() * s.dim_or_zero(den_b).convert_to<double>());
}

}  // namespace

FusionMaps::FusionMaps(SubproductSystem& sys)
    : sys_(sys), seqs_(make_sequences(sys.n(), sys.max_degree() + 2)) {}

const SequencePack& FusionMaps::sequences() { return seqs_; }

const Mat& FusionMaps::gee(int m) {
  if (m < 1 || m > sys_.max_degree()) throw std::invalid_argument("gee degree out of range");
  if (gee_cache_.size() <= static_cast<std::size_t>(m)) gee_cache_.resize(m + 1);
  Mat& slot = gee_cache_[m];
  if (slot.size() > 0) return slot;
  const Index h = sys_.n() + 1;
  if (m == 1) {
    slot = sys_.det_vector();
    return slot;
  }
  // Insert the determinant vector after the fiber and compress the first
  // pair through the degree m seed. The rank one insertion makes the image
  // land inside E_m (x) E_1 after scaling by d_{m-1}.
  const Index dm1 = sys_.dim(m - 1);
  Mat inserted = kron(identity(dm1), Mat(sys_.det_vector()));
  double scale = parity_sign(static_cast<long>(sys_.n() + 1) * (m - 1)) *
                 seqs_.dim_d(m - 1);
  slot = scale * apply_kron_right(sys_.seed(m).adjoint(), h, inserted);
  return slot;
}

const Mat& FusionMaps::gee_prime(int m) {
  if (m < 1 || m > sys_.max_degree()) throw std::invalid_argument("gee degree out of range");
  if (gee_prime_cache_.size() <= static_cast<std::size_t>(m)) gee_prime_cache_.resize(m + 1);
  Mat& slot = gee_prime_cache_[m];
  if (slot.size() > 0) return slot;
  const Index h = sys_.n() + 1;
  if (m == 1) {
    slot = sys_.det_vector();
    return slot;
  }
  const Index dm1 = sys_.dim(m - 1);
  Mat inserted = kron(Mat(sys_.det_vector()), identity(dm1));
  double scale = parity_sign(static_cast<long>(sys_.n() + 1) * (m - 1)) *
                 seqs_.dim_d(m - 1);
  Mat left_inc = sys_.inclusion(1, m - 1);
  slot = scale * apply_kron_left(h, left_inc.adjoint(), inserted);
  return slot;
}

Mat FusionMaps::vee(int m) {
  double scale = parity_sign(static_cast<long>(sys_.n() + 1) * (m - 1)) /
                 std::sqrt(seqs_.mu_d(m));
  return scale * gee(m);
}

Mat FusionMaps::vee_prime(int m) {
  double scale = parity_sign(static_cast<long>(sys_.n() + 1) * (m - 1)) /
                 std::sqrt(seqs_.mu_d(m));
  return scale * gee_prime(m);
}

Mat FusionMaps::sigma(int k, int m) {
  if (k < 0 || m < 0) throw std::invalid_argument("sigma degrees out of range");
  Mat lifted = kron(gee(k + 1), identity(sys_.dim(m)));
  return apply_kron_left(sys_.dim(k + 1), sys_.coisometry(1, m), lifted);
}

Mat FusionMaps::sigma_power_iota(int k, int m, int j) {
  if (j < 0) throw std::invalid_argument("power must be nonnegative");
  Mat x = sys_.inclusion(k, m);
  for (int i = 0; i < j; ++i) x = sigma(k + i, m + i) * x;
  return x;
}

double FusionMaps::fusion_block_scale(int k, int m, int j) {
  double scale = 1.0;
  for (int i = 1; i <= j; ++i) {
    double depleted = 1.0 - dim_ratio(seqs_, k - j, m - j - 1, k - j + i, m - j + i - 1);
    scale /= std::sqrt(seqs_.mu_d(k - j + i) * depleted);
  }
  return scale;
}

Mat FusionMaps::fusion_unitary(int k, int m) {
  if (k < 0 || m < 0) throw std::invalid_argument("fusion degrees out of range");
  const int l = std::min(k, m);
  Index total = 0;
  for (int j = 0; j <= l; ++j) total += sys_.dim(k + m - 2 * j);
  Mat w(sys_.dim(k) * sys_.dim(m), total);
  Index at = 0;
  for (int j = 0; j <= l; ++j) {
    Mat block = (j == 0) ? sys_.inclusion(k, m)
                         : Mat(fusion_block_scale(k, m, j) * sigma_power_iota(k - j, m - j, j));
    w.middleCols(at, block.cols()) = block;
    at += block.cols();
  }
  return w;
}

void FusionMaps::ensure_degree(int degree) {
  if (degree + 2 > seqs_.max_degree) seqs_ = make_sequences(sys_.n(), degree + 2);
  while (sys_.max_degree() < degree) {
    const int m = sys_.max_degree();
    Mat next_seed = onb_of_complement(vee(m));
    const Index expected = seqs_.dim(m + 1).convert_to<Index>();
    if (next_seed.cols() != expected) {
      throw std::runtime_error("seed extension produced a wrong fiber dimension");
    }
    sys_.extend_with_seed(next_seed);
  }
}

Mat FusionMaps::fiber_action(int m, const SU2Element& g) {
  if (m < 0 || m > sys_.max_degree()) throw std::invalid_argument("degree out of range");
  Mat u = irrep_matrix(symmetric_basis(sys_.n()), g);
  if (m == 0) return Mat::Constant(1, 1, Scalar(1.0));
  Mat rep = u;
  for (int i = 2; i <= m; ++i) {
    rep = sys_.seed(i).adjoint() * kron(rep, u) * sys_.seed(i);
  }
  return rep;
}

std::vector<IdentityReport> verify_fusion(FusionMaps& fusion, int max_degree,
                                          const std::vector<SU2Element>& samples) {
  const double tol = 1e-9;
  const double equivariance_tol = 1e-8;
  fusion.ensure_degree(max_degree);
  SubproductSystem& sys = fusion.system();
  const int n = sys.n();
  const Index h = n + 1;
  SequencePack seqs = make_sequences(n, max_degree + 2);
  Mat dcol = sys.det_vector();
  std::vector<IdentityReport> reports;
  auto pd = [](int v) { return static_cast<double>(v); };

  for (int m = 1; m <= max_degree; ++m) {
    const Mat& g = fusion.gee(m);
    const Mat& gp = fusion.gee_prime(m);
    const Index dm = sys.dim(m);
    const Index dm1 = sys.dim(m - 1);
    const double pair_sign = parity_sign(static_cast<long>(n + 1) * m + 1);

    reports.push_back(make_report("gee_gram", {{"m", pd(m)}},
                                  residual_norm(g.adjoint() * g, seqs.mu_d(m) * identity(dm1)),
                                  tol));
    reports.push_back(make_report("gee_prime_gram", {{"m", pd(m)}},
                                  residual_norm(gp.adjoint() * gp, seqs.mu_d(m) * identity(dm1)),
                                  tol));

    {
      Mat lhs = kron(g, identity(h)).adjoint() * kron(identity(dm), Mat(dcol));
      Mat rhs = pair_sign * (seqs.dim_d(m - 1) / seqs.dim_d(1)) * sys.seed(m);
      reports.push_back(
          make_report("gee_delta_pairing", {{"m", pd(m)}}, residual_norm(lhs, rhs), tol));
    }
    {
      Mat lhs = kron(identity(h), gp).adjoint() * kron(Mat(dcol), identity(dm));
      Mat rhs = pair_sign * (seqs.dim_d(m - 1) / seqs.dim_d(1)) * sys.inclusion(1, m - 1);
      reports.push_back(
          make_report("gee_prime_delta_pairing", {{"m", pd(m)}}, residual_norm(lhs, rhs), tol));
    }

    if (m + 1 <= max_degree) {
      reports.push_back(make_report("gee_orthogonal_to_inclusion", {{"m", pd(m)}},
                                    op_norm(sys.seed(m + 1).adjoint() * g), tol));
      reports.push_back(make_report("gee_prime_orthogonal_to_inclusion", {{"m", pd(m)}},
                                    op_norm(sys.coisometry(1, m) * gp), tol));
      {
        Mat y = apply_kron_right(sys.seed(m + 1), h, fusion.gee(m + 1));
        Mat lhs = apply_kron_right(g.adjoint(), h, y);
        reports.push_back(
            make_report("gee_step_orthogonality", {{"m", pd(m)}}, op_norm(lhs), tol));
      }
      {
        Mat y = apply_kron_left(h, sys.inclusion(1, m), fusion.gee_prime(m + 1));
        Mat lhs = apply_kron_left(h, gp.adjoint(), y);
        reports.push_back(
            make_report("gee_prime_step_orthogonality", {{"m", pd(m)}}, op_norm(lhs), tol));
      }
    }

    if (m >= 2) {
      const double rec_sign = parity_sign(static_cast<long>(n + 1) * (m - 1));
      {
        Mat lhs = apply_kron_right(sys.seed(m), h, g);
        Mat rhs = apply_kron_right(fusion.gee(m - 1), h, sys.seed(m - 1)) +
                  rec_sign * seqs.dim_d(m - 1) * kron(identity(dm1), Mat(dcol));
        reports.push_back(
            make_report("gee_recursion", {{"m", pd(m)}}, residual_norm(lhs, rhs), tol));
      }
      {
        Mat lhs = apply_kron_left(h, sys.inclusion(1, m - 1), gp);
        Mat rhs = apply_kron_left(h, fusion.gee_prime(m - 1), sys.inclusion(1, m - 2)) +
                  rec_sign * seqs.dim_d(m - 1) * kron(Mat(dcol), identity(dm1));
        reports.push_back(
            make_report("gee_prime_recursion", {{"m", pd(m)}}, residual_norm(lhs, rhs), tol));
      }
      {
        Mat lhs = sys.inclusion_projector(m - 1, 1);
        Mat rhs = identity(dm1 * h) +
                  pair_sign * (seqs.dim_d(1) / seqs.dim_d(m - 1)) *
                      (kron(fusion.gee(m - 1), dcol.adjoint()) *
                       kron(sys.seed(m - 1), identity(h)));
        reports.push_back(
            make_report("projector_correction", {{"m", pd(m)}}, residual_norm(lhs, rhs), tol));
      }
      {
        Mat lhs = sys.inclusion_projector(1, m - 1);
        Mat rhs = identity(h * dm1) +
                  pair_sign * (seqs.dim_d(1) / seqs.dim_d(m - 1)) *
                      (kron(dcol.adjoint(), fusion.gee_prime(m - 1)) *
                       kron(identity(h), sys.inclusion(1, m - 2)));
        reports.push_back(make_report("projector_correction_left", {{"m", pd(m)}},
                                      residual_norm(lhs, rhs), tol));
      }
    }

    {
      Mat lifted = kron(g, identity(h));
      Mat lhs = pair_sign * (seqs.dim_d(1) / seqs.dim_d(m - 1)) *
                apply_kron_left(dm, dcol.adjoint(), lifted);
      reports.push_back(make_report("iota_star_right_factorization", {{"m", pd(m)}},
                                    residual_norm(lhs, sys.coisometry(m - 1, 1)), tol));
    }
    {
      Mat lifted = kron(identity(h), gp);
      Mat lhs = pair_sign * (seqs.dim_d(1) / seqs.dim_d(m - 1)) *
                apply_kron_right(dcol.adjoint(), dm, lifted);
      reports.push_back(make_report("iota_star_left_factorization", {{"m", pd(m)}},
                                    residual_norm(lhs, sys.coisometry(1, m - 1)), tol));
    }

    if (m + 1 <= max_degree) {
      {
        Mat u(dm * h, sys.dim(m + 1) + dm1);
        u.leftCols(sys.dim(m + 1)) = sys.seed(m + 1);
        u.rightCols(dm1) = fusion.vee(m);
        double defect = residual_norm(u.adjoint() * u, identity(u.cols())) +
                        residual_norm(u * u.adjoint(), identity(u.rows()));
        reports.push_back(make_report("iota_vee_unitary", {{"m", pd(m)}}, defect, tol));
      }
      {
        Mat u(h * dm, sys.dim(m + 1) + dm1);
        u.leftCols(sys.dim(m + 1)) = sys.inclusion(1, m);
        u.rightCols(dm1) = fusion.vee_prime(m);
        double defect = residual_norm(u.adjoint() * u, identity(u.cols())) +
                        residual_norm(u * u.adjoint(), identity(u.rows()));
        reports.push_back(make_report("iota_vee_prime_unitary", {{"m", pd(m)}}, defect, tol));
      }
    }
  }

  for (int k = 0; k <= max_degree; ++k) {
    for (int m = 0; k + m + 2 <= max_degree; ++m) {
      Mat s = fusion.sigma(k, m);
      Mat lhs = s.adjoint() * s;
      Mat rhs = dim_ratio(seqs, k, k + m + 1, 1, m) * identity(sys.dim(k) * sys.dim(m));
      if (k >= 1 && m >= 1) {
        Mat prev = fusion.sigma(k - 1, m - 1);
        rhs += dim_ratio(seqs, k, m - 1, k - 1, m) * (prev * prev.adjoint());
      }
      reports.push_back(make_report("sigma_gram_recursion", {{"k", pd(k)}, {"m", pd(m)}},
                                    residual_norm(lhs, rhs), tol));
    }
  }

  for (int k = 1; k <= max_degree; ++k) {
    for (int m = 1; k + m <= max_degree; ++m) {
      double defect = op_norm(fusion.sigma(k - 1, m - 1).adjoint() * sys.inclusion(k, m));
      reports.push_back(
          make_report("sigma_star_iota", {{"k", pd(k)}, {"m", pd(m)}}, defect, tol));
    }
  }

  for (int j = 1; 2 * j <= max_degree; ++j) {
    for (int k = 0; k + 2 * j <= max_degree; ++k) {
      for (int m = 0; k + m + 2 * j <= max_degree; ++m) {
        {
          // Chain of j raising steps from (k, m), then one lowering step.
          Mat power = identity(sys.dim(k) * sys.dim(m));
          for (int i = 0; i < j; ++i) power = fusion.sigma(k + i, m + i) * power;
          Mat lhs = fusion.sigma(k + j - 1, m + j - 1).adjoint() * power;
          double c1 = seqs.mu_d(k + j) *
                      (1.0 - dim_ratio(seqs, k, m - 1, k + j, m + j - 1));
          Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
          {
            Mat lower = identity(sys.dim(k) * sys.dim(m));
            for (int i = 0; i < j - 1; ++i) lower = fusion.sigma(k + i, m + i) * lower;
            rhs += c1 * lower;
          }
          if (k >= 1 && m >= 1) {
            double c2 = dim_ratio(seqs, m - 1, k + j - 1, k - 1, m + j - 1);
            Mat down = fusion.sigma(k - 1, m - 1).adjoint();
            Mat chain = down;
            for (int i = 0; i < j; ++i) chain = fusion.sigma(k - 1 + i, m - 1 + i) * chain;
            rhs += c2 * chain;
          }
          reports.push_back(make_report("sigma_shift_recursion",
                                        {{"k", pd(k)}, {"m", pd(m)}, {"j", pd(j)}},
                                        residual_norm(lhs, rhs), tol));
        }
        {
          Mat y = fusion.sigma_power_iota(k, m, j);
          Mat z = y;
          for (int i = j; i >= 1; --i) z = fusion.sigma(k + i - 1, m + i - 1).adjoint() * z;
          double scale = 1.0;
          for (int i = 1; i <= j; ++i) {
            scale *= seqs.mu_d(k + i) * (1.0 - dim_ratio(seqs, k, m - 1, k + i, m + i - 1));
          }
          reports.push_back(make_report("sigma_power_iota_scaling",
                                        {{"k", pd(k)}, {"m", pd(m)}, {"j", pd(j)}},
                                        residual_norm(z, scale * sys.inclusion(k, m)), tol));
        }
      }
    }
  }

  for (int k = 1; k <= max_degree; ++k) {
    for (int m = 1; k + m <= max_degree; ++m) {
      Int exact = seqs.dim(k) * seqs.dim(m);
      for (int j = 0; j <= std::min(k, m); ++j) exact -= seqs.dim(k + m - 2 * j);
      reports.push_back(make_report("fusion_dimension", {{"k", pd(k)}, {"m", pd(m)}},
                                    std::abs(exact.convert_to<double>()), 0.0));
      Mat w = fusion.fusion_unitary(k, m);
      double defect = residual_norm(w.adjoint() * w, identity(w.cols())) +
                      residual_norm(w * w.adjoint(), identity(w.rows()));
      reports.push_back(
          make_report("fusion_unitary", {{"k", pd(k)}, {"m", pd(m)}}, defect, tol));
    }
  }

  const SymmetricRealization real = symmetric_basis(n);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const double sd = static_cast<double>(s);
    Mat u = irrep_matrix(real, samples[s]);
    std::vector<Mat> rep(max_degree + 1);
    rep[0] = Mat::Constant(1, 1, Scalar(1.0));
    if (max_degree >= 1) rep[1] = u;
    for (int m = 2; m <= max_degree; ++m) {
      rep[m] = sys.seed(m).adjoint() * kron(rep[m - 1], u) * sys.seed(m);
    }
    for (int m = 2; m <= max_degree; ++m) {
      reports.push_back(make_report("fiber_action_unitary", {{"m", pd(m)}, {"sample", sd}},
                                    residual_norm(rep[m].adjoint() * rep[m], identity(sys.dim(m))),
                                    tol));
    }
    for (int m = 1; m <= max_degree; ++m) {
      const Mat& g = fusion.gee(m);
      reports.push_back(make_report("gee_equivariance", {{"m", pd(m)}, {"sample", sd}},
                                    residual_norm(kron(rep[m], u) * g, g * rep[m - 1]),
                                    equivariance_tol));
    }
    for (int k = 1; k <= max_degree; ++k) {
      for (int m = 1; k + m <= max_degree; ++m) {
        Mat w = fusion.fusion_unitary(k, m);
        Mat lhs = kron(rep[k], rep[m]) * w;
        Mat rhs(w.rows(), w.cols());
        Index at = 0;
        for (int j = 0; j <= std::min(k, m); ++j) {
          const Mat& block = rep[k + m - 2 * j];
          rhs.middleCols(at, block.cols()) = w.middleCols(at, block.cols()) * block;
          at += block.cols();
        }
        reports.push_back(make_report("fusion_equivariance",
                                      {{"k", pd(k)}, {"m", pd(m)}, {"sample", sd}},
                                      residual_norm(lhs, rhs), equivariance_tol));
      }
    }
  }

  sort_reports(reports);
  return reports;
}

}  // namespace sps

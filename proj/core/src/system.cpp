#include "sps/system.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace sps {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

double orthonormality_defect(const Mat& a) {
  return residual_norm(a.adjoint() * a, identity(a.cols()));
}

}  // namespace

SubproductSystem::SubproductSystem(int n, std::vector<Mat> ambient_bases, Vec det_vector)
    : n_(n), det_vector_(std::move(det_vector)) {
  require(n_ >= 1, "fiber parameter must be at least 1");
  require(ambient_bases.size() >= 2, "need ambient bases for degrees 0 and 1 at least");
  ambient_max_ = static_cast<int>(ambient_bases.size()) - 1;
  const Index h = n_ + 1;
  require(ambient_bases[0].rows() == 1 && ambient_bases[0].cols() == 1 &&
              std::abs(ambient_bases[0](0, 0) - Scalar(1.0)) < 1e-12,
          "degree 0 basis must be the scalar 1");
  require(residual_norm(ambient_bases[1], identity(h)) < 1e-12,
          "degree 1 basis must be the identity coordinates");
  Index ambient_rows = 1;
  for (int m = 0; m <= ambient_max_; ++m) {
    const Mat& b = ambient_bases[m];
    require(b.rows() == ambient_rows, "ambient basis row count must be (n+1)^m");
    require(b.cols() >= 1 && b.cols() <= b.rows(), "ambient basis has invalid column count");
    require(orthonormality_defect(b) < 1e-8, "ambient basis columns must be orthonormal");
    dims_.push_back(b.cols());
    ambient_rows *= h;
  }
  if (det_vector_.size() > 0) {
    require(det_vector_.size() == h * h, "determinant vector must live in degree 2");
    require(std::abs(det_vector_.norm() - 1.0) < 1e-10, "determinant vector must be unit length");
  }
  bases_ = std::move(ambient_bases);

  seeds_.resize(ambient_max_ + 1);
  for (int m = 1; m <= ambient_max_; ++m) {
    seeds_[m] = apply_kron_right(bases_[m - 1].adjoint(), h, bases_[m]);
  }
}

Index SubproductSystem::dim(int m) const {
  require(m >= 0 && m <= max_degree(), "degree out of range");
  return dims_[m];
}

const Mat& SubproductSystem::basis(int m) const {
  require(m >= 0 && m <= ambient_max_, "ambient basis only exists up to the ambient window");
  return bases_[m];
}

const Mat& SubproductSystem::seed(int m) const {
  require(m >= 1 && m <= max_degree(), "seed degree out of range");
  return seeds_[m];
}

const Mat& SubproductSystem::coisometry(int k, int m) {
  require(k >= 0 && m >= 0 && k + m <= max_degree(), "coisometry degrees out of range");
  const auto key = std::make_pair(k, m);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = coisometry_cache_.find(key);
    if (it != coisometry_cache_.end()) return it->second;
  }
  Mat value = compute_coisometry(k, m);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = coisometry_cache_.emplace(key, std::move(value)).first;
  return it->second;
}

Mat SubproductSystem::compute_coisometry(int k, int m) {
  if (k == 0) return identity(dim(m));
  if (m == 0) return identity(dim(k));
  if (m == 1) return seed(k + 1).adjoint();
  if (k + m <= ambient_max_) {
    return bases_[k + m].adjoint() * kron(bases_[k], bases_[m]);
  }
  // Peel one tensor factor off the right: include into E_k (x) E_{m-1} (x) E_1
  // through the seed of degree k + m, then compress the right pair back into
  // E_m. Coassociativity makes this the inclusion adjoint again.
  Mat inc_prev = coisometry(k, m - 1).adjoint();
  Mat z = apply_kron_right(inc_prev, n_ + 1, seed(k + m));
  Mat inc = apply_kron_left(dim(k), seed(m).adjoint(), z);
  return inc.adjoint();
}

Mat SubproductSystem::inclusion(int k, int m) { return coisometry(k, m).adjoint(); }

Mat SubproductSystem::inclusion_projector(int k, int m) {
  Mat inc = inclusion(k, m);
  return inc * inc.adjoint();
}

Mat SubproductSystem::straddle_span(int k, int m) {
  require(k >= 0 && m >= 0, "projector degrees out of range");
  if (k == 0 || m == 0) {
    require(k + m <= max_degree(), "projector degrees out of range");
    return Mat::Zero(dim(k + m), 0);
  }
  require(k <= max_degree() && m <= max_degree(), "projector degrees out of range");
  require(has_det_vector(), "straddle projector needs a determinant vector");
  const Index h = n_ + 1;
  const Mat& sk = seed(k);
  Mat left_inc = coisometry(1, m - 1).adjoint();
  const Index dk = dim(k);
  const Index dm = dim(m);
  const Index dk1 = dim(k - 1);
  const Index dm1 = dim(m - 1);
  // A vector of E_k (x) E_m lies in the included E_{k+m} exactly when every
  // contraction of the determinant vector across the junction vanishes. The
  // contraction against basis slot (b1, b2) reads the b1 strand of the right
  // seed of E_k and the b2 strand of the left inclusion of E_m.
  Mat cond = Mat::Zero(dk1 * dm1, dk * dm);
  for (Index b1 = 0; b1 < h; ++b1) {
    Mat a(dk1, dk);
    for (Index r = 0; r < dk1; ++r) a.row(r) = sk.row(r * h + b1);
    for (Index b2 = 0; b2 < h; ++b2) {
      Scalar coeff = std::conj(det_vector_(b1 * h + b2));
      if (std::abs(coeff) < 1e-15) continue;
      Mat b(dm1, dm);
      for (Index r = 0; r < dm1; ++r) b.row(r) = left_inc.row(b2 * dm1 + r);
      cond.noalias() += coeff * kron(a, b);
    }
  }
  Mat q = onb_of_span(cond.adjoint());
  if (q.cols() != cond.rows()) {
    throw std::runtime_error("straddle condition matrix lost rank");
  }
  return q;
}

Mat SubproductSystem::straddle_projector(int k, int m) {
  if (k == 0 || m == 0) {
    require(k >= 0 && m >= 0 && k + m <= max_degree(),
            "projector degrees out of range");
    return identity(dim(k + m));
  }
  Mat q = straddle_span(k, m);
  Mat p = identity(dim(k) * dim(m));
  p.noalias() -= q * q.adjoint();
  return p;
}

const Vec& SubproductSystem::det_vector() const {
  require(has_det_vector(), "system carries no determinant vector");
  return det_vector_;
}

void SubproductSystem::extend_with_seed(const Mat& seed) {
  const Index rows = dims_.back() * (n_ + 1);
  require(seed.rows() == rows, "seed row count must match previous fiber tensor E_1");
  require(seed.cols() >= 1 && seed.cols() <= rows, "seed has invalid column count");
  require(orthonormality_defect(seed) < 1e-8, "seed columns must be orthonormal");
  dims_.push_back(seed.cols());
  seeds_.push_back(seed);
}

Vec determinant_vector(int n) {
  if (n < 1) throw std::invalid_argument("fiber parameter must be at least 1");
  const Index h = n + 1;
  Vec d = Vec::Zero(h * h);
  const double scale = 1.0 / std::sqrt(static_cast<double>(h));
  for (Index k = 0; k <= n; ++k) {
    d(k * h + (n - k)) = Scalar((k % 2 == 0) ? scale : -scale, 0.0);
  }
  return d;
}

int ambient_cost_cap(int n) {
  if (n < 1) throw std::invalid_argument("fiber parameter must be at least 1");
  const Index h = n + 1;
  int m = 0;
  Index rows = 1;
  while (rows * h <= 1024) {
    rows *= h;
    ++m;
  }
  return m;
}

SubproductSystem build_system(int n, int max_degree) {
  if (n < 1) throw std::invalid_argument("fiber parameter must be at least 1");
  if (max_degree < 1) throw std::invalid_argument("maximum degree must be at least 1");
  const Index h = n + 1;
  const int ambient = std::min(max_degree, std::max(2, ambient_cost_cap(n)));
  double ambient_rows = std::pow(static_cast<double>(h), ambient);
  if (ambient_rows > static_cast<double>(kAmbientBudget)) {
    throw std::runtime_error("ambient dimension exceeds the size budget");
  }
  SequencePack seqs = make_sequences(n, ambient);

  std::vector<Mat> bases;
  bases.push_back(Mat::Constant(1, 1, Scalar(1.0)));
  bases.push_back(identity(h));
  Vec det = determinant_vector(n);
  if (ambient >= 2) {
    Mat det_col = det;
    bases.push_back(onb_of_complement(det_col));
  }
  for (int m = 3; m <= ambient; ++m) {
    // The degree m fiber is the intersection of E_{m-1} (x) H with
    // H (x) E_{m-1}, because the cutting ideal is generated in degree 2.
    // Solve for the intersection inside the right-anchored copy.
    Mat u = kron(bases[m - 1], identity(h));
    Mat v = kron(identity(h), bases[m - 1]);
    Mat defect = u - v * (v.adjoint() * u);
    Mat c = kernel_onb(defect);
    const Index expected = seqs.dim(m).convert_to<Index>();
    if (c.cols() != expected) {
      throw std::runtime_error("fiber dimension mismatch in the intersection recursion");
    }
    bases.push_back(u * c);
  }
  return SubproductSystem(n, std::move(bases), std::move(det));
}

Mat determinant_subspace(const std::vector<Mat>& rep_samples, double rel_tol) {
  if (rep_samples.empty()) throw std::invalid_argument("need at least one sample");
  std::vector<Mat> doubled;
  doubled.reserve(rep_samples.size());
  for (const Mat& u : rep_samples) doubled.push_back(kron(u, u));
  return invariant_subspace(doubled, rel_tol);
}

Int determinant_dimension(const std::vector<int>& multiplicities) {
  Int total = 0;
  for (int k : multiplicities) {
    if (k < 0) throw std::invalid_argument("multiplicities must be nonnegative");
    total += Int(k) * Int(k);
  }
  return total;
}

std::vector<IdentityReport> verify_axioms(SubproductSystem& sys, int max_degree) {
  const double tol = 1e-10;
  const int top = std::min(max_degree, sys.max_degree());
  const int n = sys.n();
  const Index h = n + 1;
  SequencePack seqs = make_sequences(n, top);
  std::vector<IdentityReport> reports;

  for (int m = 0; m <= top; ++m) {
    double defect = std::abs(static_cast<double>(sys.dim(m)) - seqs.dim_d(m));
    reports.push_back(make_report("fiber_dimension", {{"m", static_cast<double>(m)}}, defect, 0.0));
  }

  for (int m = 1; m <= top; ++m) {
    const Mat& s = sys.seed(m);
    reports.push_back(make_report("seed_isometry", {{"m", static_cast<double>(m)}},
                                  residual_norm(s.adjoint() * s, identity(s.cols())), tol));
  }

  for (int k = 1; k < top; ++k) {
    for (int m = 1; k + m <= top; ++m) {
      const Mat& co = sys.coisometry(k, m);
      reports.push_back(make_report("inclusion_isometry",
                                    {{"k", static_cast<double>(k)}, {"m", static_cast<double>(m)}},
                                    residual_norm(co * co.adjoint(), identity(co.rows())), tol));
    }
  }

  for (int k = 1; k < top; ++k) {
    for (int l = 1; k + l < top; ++l) {
      for (int m = 1; k + l + m <= top; ++m) {
        Mat a = apply_kron_right(sys.inclusion(k, l), sys.dim(m), sys.inclusion(k + l, m));
        Mat b = apply_kron_left(sys.dim(k), sys.inclusion(l, m), sys.inclusion(k, l + m));
        reports.push_back(make_report("coassociativity",
                                      {{"k", static_cast<double>(k)},
                                       {"l", static_cast<double>(l)},
                                       {"m", static_cast<double>(m)}},
                                      residual_norm(a, b), tol));
      }
    }
  }

  const int ambient_top = std::min(top, sys.ambient_max());
  for (int k = 1; k < ambient_top; ++k) {
    for (int m = 1; k + m <= ambient_top; ++m) {
      Mat lifted = kron(sys.basis(k), sys.basis(m)) * sys.inclusion(k, m);
      reports.push_back(make_report("ambient_inclusion",
                                    {{"k", static_cast<double>(k)}, {"m", static_cast<double>(m)}},
                                    residual_norm(lifted, sys.basis(k + m)), tol));
    }
  }

  if (sys.has_det_vector()) {
    Mat det_col = sys.det_vector();
    for (int m = 2; m <= ambient_top; ++m) {
      double worst = 0.0;
      for (int i = 0; i + 2 <= m; ++i) {
        Index left = 1, right = 1;
        for (int j = 0; j < i; ++j) left *= h;
        for (int j = 0; j < m - 2 - i; ++j) right *= h;
        Mat shifted = kron(identity(left), kron(det_col, identity(right)));
        worst = std::max(worst, op_norm(sys.basis(m).adjoint() * shifted));
      }
      reports.push_back(
          make_report("ideal_orthogonality", {{"m", static_cast<double>(m)}}, worst, tol));
    }
  }

  sort_reports(reports);
  return reports;
}

std::vector<IdentityReport> verify_equivariance(SubproductSystem& sys,
                                                const std::vector<SU2Element>& samples) {
  const double tol = 1e-9;
  std::vector<IdentityReport> reports;
  const int top = sys.ambient_max();
  const SymmetricRealization real = symmetric_basis(sys.n());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    Mat u = irrep_matrix(real, samples[s]);
    const double sd = static_cast<double>(s);
    if (sys.has_det_vector()) {
      Vec moved = kron(u, u) * sys.det_vector();
      reports.push_back(make_report("determinant_invariance", {{"sample", sd}},
                                    (moved - sys.det_vector()).norm(), tol));
    }
    for (int m = 2; m <= top; ++m) {
      Mat power = tensor_power(u, m);
      const Mat& b = sys.basis(m);
      Mat moved = power * b;
      double invariance = residual_norm(moved, b * (b.adjoint() * moved));
      reports.push_back(make_report("fiber_invariance", {{"m", static_cast<double>(m)}, {"sample", sd}},
                                    invariance, tol));
      Mat compressed = b.adjoint() * moved;
      reports.push_back(make_report("fiber_action_unitary",
                                    {{"m", static_cast<double>(m)}, {"sample", sd}},
                                    residual_norm(compressed.adjoint() * compressed, identity(b.cols())),
                                    tol));
    }
  }
  sort_reports(reports);
  return reports;
}

void save_system_json(SubproductSystem& sys, const std::string& path) {
  nlohmann::ordered_json root;
  root["n"] = sys.n();
  root["M"] = sys.ambient_max();
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (int m = 0; m <= sys.ambient_max(); ++m) {
    const Mat& b = sys.basis(m);
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (Index c = 0; c < b.cols(); ++c) {
      nlohmann::ordered_json col = nlohmann::ordered_json::array();
      for (Index r = 0; r < b.rows(); ++r) {
        col.push_back({b(r, c).real(), b(r, c).imag()});
      }
      cols.push_back(std::move(col));
    }
    all.push_back(std::move(cols));
  }
  root["bases"] = std::move(all);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << root.dump(2) << "\n";
}

SubproductSystem load_system_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("invalid system file: ") + e.what());
  }
  if (!root.is_object() || !root.contains("n") || !root.contains("M") || !root.contains("bases")) {
    throw std::runtime_error("system file must contain n, M and bases");
  }
  const int n = root["n"].get<int>();
  const int top = root["M"].get<int>();
  if (n < 1 || top < 1) throw std::runtime_error("system file has invalid parameters");
  const auto& all = root["bases"];
  if (!all.is_array() || static_cast<int>(all.size()) != top + 1) {
    throw std::runtime_error("system file must list one basis per degree");
  }
  const Index h = n + 1;
  Index rows = 1;
  std::vector<Mat> bases;
  for (int m = 0; m <= top; ++m) {
    const auto& cols = all[m];
    if (!cols.is_array() || cols.empty()) {
      throw std::runtime_error("system file basis must be a nonempty column list");
    }
    Mat b(rows, static_cast<Index>(cols.size()));
    for (Index c = 0; c < b.cols(); ++c) {
      const auto& col = cols[c];
      if (!col.is_array() || static_cast<Index>(col.size()) != rows) {
        throw std::runtime_error("system file column has wrong length");
      }
      for (Index r = 0; r < rows; ++r) {
        const auto& entry = col[r];
        if (!entry.is_array() || entry.size() != 2) {
          throw std::runtime_error("system file entries must be [re, im] pairs");
        }
        b(r, c) = Scalar(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    bases.push_back(std::move(b));
    rows *= h;
  }
  return SubproductSystem(n, std::move(bases), determinant_vector(n));
}

}  // namespace sps

#include "sps/kk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace sps {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pinned ceiling for the dimension-weighted creation commutators of the
// up-diagonal map; empirical boundedness witness, set above the observed
// range of the weighted norms.
constexpr double kCommutatorWeightBound = 4.0;

double parity_sign(long exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

std::map<std::string, double> params_km(int k, int m) {
  return {{"k", static_cast<double>(k)}, {"m", static_cast<double>(m)}};
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

IntMat int_matrix_identity(int size) {
  IntMat out(size, std::vector<Int>(size, 0));
  for (int i = 0; i < size; ++i) out[i][i] = 1;
  return out;
}

IntMat int_matrix_product(const IntMat& a, const IntMat& b) {
  require(!a.empty() && !b.empty() && a[0].size() == b.size(),
          "integer matrix shapes do not match");
  IntMat out(a.size(), std::vector<Int>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) {
        out[i][j] += a[i][l] * b[l][j];
      }
    }
  }
  return out;
}

bool int_matrix_equal(const IntMat& a, const IntMat& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

SmithForm smith_normal_form(const IntMat& a) {
  const int rows = static_cast<int>(a.size());
  require(rows > 0, "empty integer matrix");
  const int cols = static_cast<int>(a[0].size());
  for (const auto& row : a) {
    require(static_cast<int>(row.size()) == cols, "ragged integer matrix");
  }

  SmithForm f;
  f.left = int_matrix_identity(rows);
  f.right = int_matrix_identity(cols);
  f.diagonal = a;
  IntMat& d = f.diagonal;

  auto swap_rows = [&](int i, int j) {
    std::swap(d[i], d[j]);
    std::swap(f.left[i], f.left[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < rows; ++r) std::swap(d[r][i], d[r][j]);
    for (int r = 0; r < cols; ++r) std::swap(f.right[r][i], f.right[r][j]);
  };
  auto add_row = [&](int dst, int src, const Int& c) {
    for (int j = 0; j < cols; ++j) d[dst][j] += c * d[src][j];
    for (int j = 0; j < rows; ++j) f.left[dst][j] += c * f.left[src][j];
  };
  auto add_col = [&](int dst, int src, const Int& c) {
    for (int r = 0; r < rows; ++r) d[r][dst] += c * d[r][src];
    for (int r = 0; r < cols; ++r) f.right[r][dst] += c * f.right[r][src];
  };

  const int steps = std::min(rows, cols);
  for (int t = 0; t < steps; ++t) {
    // Bring the smallest remaining nonzero entry to the pivot seat.
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i) {
      for (int j = t; j < cols; ++j) {
        if (d[i][j] == 0) continue;
        if (pr < 0 || abs(d[i][j]) < abs(d[pr][pc])) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr < 0) break;
    if (pr != t) swap_rows(pr, t);
    if (pc != t) swap_cols(pc, t);

    while (true) {
      bool dirty = false;
      for (int i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        add_row(i, t, -(d[i][t] / d[t][t]));
        if (d[i][t] != 0) {
          swap_rows(i, t);
          dirty = true;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        add_col(j, t, -(d[t][j] / d[t][t]));
        if (d[t][j] != 0) {
          swap_cols(j, t);
          dirty = true;
        }
      }
      if (dirty) continue;

      // Pivot now clears its row and column; force it to divide the rest of
      // the submatrix before moving on.
      bool fixed = false;
      for (int i = t + 1; i < rows && !fixed; ++i) {
        for (int j = t + 1; j < cols && !fixed; ++j) {
          if (d[i][j] % d[t][t] != 0) {
            add_row(t, i, 1);
            fixed = true;
          }
        }
      }
      if (!fixed) break;
    }

    if (d[t][t] < 0) {
      for (int j = 0; j < cols; ++j) d[t][j] = -d[t][j];
      for (int j = 0; j < rows; ++j) f.left[t][j] = -f.left[t][j];
    }
  }
  return f;
}

GysinSummary gysin_k_theory(int n) {
  require(n >= 1, "fiber parameter must be at least 1");
  GysinSummary g;
  g.n = n;
  // Alternating classes of the finite resolution: vacuum line, generator
  // module, determinant line. The determinant line is trivial, so the
  // connecting map multiplies by the integer total.
  g.euler_terms = {Int(1), Int(-(n + 1)), Int(1)};
  g.euler_total = 0;
  for (const Int& term : g.euler_terms) g.euler_total += term;

  SmithForm f = smith_normal_form(IntMat{{g.euler_total}});
  const Int& pivot = f.diagonal[0][0];
  const int rank_of_map = (pivot == 0) ? 0 : 1;
  g.k_zero.rank = 1 - rank_of_map;
  if (pivot > 1) g.k_zero.torsion.push_back(pivot);
  g.k_one.rank = 1 - rank_of_map;
  return g;
}

KkOps::KkOps(ToeplitzOps& ops, int kmax) : ops_(ops), kmax_(kmax) {
  require(kmax >= 1, "lattice window needs at least one step");
  require(ops.top() >= 2 * kmax,
          "lattice window needs system degrees up to twice its size");
  seqs_ = make_sequences(system().n(), 2 * kmax + 3);
}

const Mat& KkOps::cache_block(int tag, int k, int m, Mat value) {
  return cache_.emplace(std::array<int, 3>{tag, k, m}, std::move(value))
      .first->second;
}

const Mat& KkOps::v_tt(int k, int m) {
  auto it = cache_.find({0, k, m});
  if (it != cache_.end()) return it->second;
  require(k >= 1, "top-top block needs a positive left degree");
  SubproductSystem& sys = system();
  Mat block = apply_kron_left(
      sys.dim(k - 1), sys.coisometry(1, m),
      kron(sys.inclusion(k - 1, 1), identity(sys.dim(m))));
  return cache_block(0, k, m, std::move(block));
}

const Mat& KkOps::v_tb(int k, int m) {
  auto it = cache_.find({1, k, m});
  if (it != cache_.end()) return it->second;
  SubproductSystem& sys = system();
  Mat block = apply_kron_left(sys.dim(k + 1), sys.coisometry(1, m),
                              kron(fusion().vee(k + 1), identity(sys.dim(m))));
  return cache_block(1, k, m, std::move(block));
}

const Mat& KkOps::v_bt(int k, int m) {
  auto it = cache_.find({2, k, m});
  if (it != cache_.end()) return it->second;
  require(k >= 1 && m >= 1, "bottom-top block needs positive degrees");
  const double scale = std::sqrt(seqs_.dim_d(k) / seqs_.dim_d(k - 1)) *
                       std::sqrt(seqs_.dim_d(m - 1) / seqs_.dim_d(m));
  Mat block = scale * v_tb(k - 1, m - 1).adjoint();
  return cache_block(2, k, m, std::move(block));
}

const Mat& KkOps::v_bb(int k, int m) {
  auto it = cache_.find({3, k, m});
  if (it != cache_.end()) return it->second;
  require(m >= 1, "bottom-bottom block needs a positive right degree");
  const double scale = parity_sign(n()) *
                       std::sqrt(seqs_.dim_d(k) / seqs_.dim_d(k + 1)) *
                       std::sqrt(seqs_.dim_d(m - 1) / seqs_.dim_d(m));
  Mat block = scale * v_tt(k + 1, m - 1).adjoint();
  return cache_block(3, k, m, std::move(block));
}

Mat KkOps::gamma_op(int k, int m) {
  const Mat& b = v_tb(k, m);
  return b.adjoint() * b;
}

Mat KkOps::delta_op(int k, int m) {
  const Mat& b = v_bt(k, m);
  return b.adjoint() * b;
}

Mat KkOps::theta(int k, int m) { return v_tb(k, m) * inv_sqrt_psd(gamma_op(k, m)); }

Mat truncated_shift(Index size) {
  Mat s = Mat::Zero(size, size);
  for (Index k = 1; k < size; ++k) s(k - 1, k) = Scalar(1.0, 0.0);
  return s;
}

Mat scalar_homotopy(Index size, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  const Mat sh = truncated_shift(size);
  const Mat sh_adj = sh.adjoint();

  // The adjoint shift is nilpotent, so the geometric series for the
  // resolvent terminates.
  Mat inv = Mat::Zero(size, size);
  Mat power = identity(size);
  double coef = 1.0;
  for (Index p = 0; p < size; ++p) {
    inv += coef * power;
    power = sh_adj * power;
    coef *= c;
  }

  Mat left = s * (sh * sh_adj);
  left(size - 1, size - 1) += 1.0;
  Mat right = s * (sh_adj * sh);
  right(0, 0) += 1.0;
  return -c * sh + left * inv * right;
}

namespace {

// Offsets of the doubled bidegree window inside one flat coordinate space.
// Component 0 holds the top copy of every site (k, m), component 1 the
// bottom copy.
struct DoubledWindow {
  SubproductSystem& sys;
  int kmax;
  std::vector<std::vector<std::vector<Index>>> offsets;
  Index total = 0;

  DoubledWindow(SubproductSystem& s, int km) : sys(s), kmax(km) {
    offsets.assign(2, std::vector<std::vector<Index>>(
                          kmax + 1, std::vector<Index>(kmax + 1, 0)));
    for (int comp = 0; comp < 2; ++comp) {
      for (int k = 0; k <= kmax; ++k) {
        for (int m = 0; m <= kmax; ++m) {
          offsets[comp][k][m] = total;
          total += sys.dim(k) * sys.dim(m);
        }
      }
    }
  }

  Index offset(int comp, int k, int m) const { return offsets[comp][k][m]; }
  Index site_dim(int k, int m) const { return sys.dim(k) * sys.dim(m); }
};

void place_block(Mat& full, const DoubledWindow& dw, int ct, int kt, int mt,
                 int cs, int ks, int ms, const Mat& block) {
  full.block(dw.offset(ct, kt, mt), dw.offset(cs, ks, ms), block.rows(),
             block.cols()) += block;
}

Mat build_w_full(KkOps& kk, const DoubledWindow& dw) {
  const int kmax = dw.kmax;
  Mat w = Mat::Zero(dw.total, dw.total);
  for (int k = 1; k <= kmax; ++k) {
    for (int m = 0; m + 1 <= kmax; ++m) {
      place_block(w, dw, 0, k - 1, m + 1, 0, k, m, kk.v_tt(k, m));
    }
  }
  for (int k = 1; k <= kmax; ++k) {
    for (int m = 1; m <= kmax; ++m) {
      place_block(w, dw, 1, k - 1, m - 1, 0, k, m, kk.v_bt(k, m));
    }
  }
  for (int k = 0; k + 1 <= kmax; ++k) {
    for (int m = 0; m + 1 <= kmax; ++m) {
      place_block(w, dw, 0, k + 1, m + 1, 1, k, m, kk.v_tb(k, m));
    }
  }
  for (int k = 0; k + 1 <= kmax; ++k) {
    for (int m = 1; m <= kmax; ++m) {
      place_block(w, dw, 1, k + 1, m - 1, 1, k, m, kk.v_bb(k, m));
    }
  }
  return w;
}

// Identity columns of the listed sites, used to restrict every full-matrix
// identity to inputs whose compositions never touch the truncation edge.
Mat site_columns(const DoubledWindow& dw,
                 const std::vector<std::array<int, 3>>& sites) {
  Index cols = 0;
  for (const auto& s : sites) cols += dw.site_dim(s[1], s[2]);
  Mat x = Mat::Zero(dw.total, cols);
  Index at = 0;
  for (const auto& s : sites) {
    const Index d = dw.site_dim(s[1], s[2]);
    x.block(dw.offset(s[0], s[1], s[2]), at, d, d) = identity(d);
    at += d;
  }
  return x;
}

// Orthonormal columns spanning the included fibers at the listed top sites.
Mat lattice_columns(const DoubledWindow& dw,
                    const std::vector<std::array<int, 2>>& sites) {
  Index cols = 0;
  for (const auto& s : sites) cols += dw.sys.dim(s[0] + s[1]);
  Mat x = Mat::Zero(dw.total, cols);
  Index at = 0;
  for (const auto& s : sites) {
    Mat inc = dw.sys.inclusion(s[0], s[1]);
    x.block(dw.offset(0, s[0], s[1]), at, inc.rows(), inc.cols()) = inc;
    at += inc.cols();
  }
  return x;
}

// Generator adjoint on the left leg of both components.
Mat apply_mid(KkOps& kk, const DoubledWindow& dw, int j, const Mat& x) {
  SubproductSystem& sys = dw.sys;
  Mat y = Mat::Zero(x.rows(), x.cols());
  for (int comp = 0; comp < 2; ++comp) {
    for (int k = 1; k <= dw.kmax; ++k) {
      for (int m = 0; m <= dw.kmax; ++m) {
        const Mat block = x.middleRows(dw.offset(comp, k, m), dw.site_dim(k, m));
        y.middleRows(dw.offset(comp, k - 1, m), dw.site_dim(k - 1, m)) +=
            apply_kron_right(kk.toeplitz().creation_block(j, k - 1).adjoint(),
                             sys.dim(m), block);
      }
    }
  }
  return y;
}

// Generator adjoint on the right leg of the top component.
Mat apply_right_adjoint(KkOps& kk, const DoubledWindow& dw, int j, const Mat& x) {
  SubproductSystem& sys = dw.sys;
  Mat y = Mat::Zero(x.rows(), x.cols());
  for (int k = 0; k <= dw.kmax; ++k) {
    for (int m = 1; m <= dw.kmax; ++m) {
      const Mat block = x.middleRows(dw.offset(0, k, m), dw.site_dim(k, m));
      y.middleRows(dw.offset(0, k, m - 1), dw.site_dim(k, m - 1)) +=
          apply_kron_left(sys.dim(k),
                          kk.toeplitz().creation_block(j, m - 1).adjoint(),
                          block);
    }
  }
  return y;
}

// Projection onto the top sites with vanishing left degree.
Mat apply_corner(const DoubledWindow& dw, const Mat& x) {
  Mat y = Mat::Zero(x.rows(), x.cols());
  for (int m = 0; m <= dw.kmax; ++m) {
    const Index at = dw.offset(0, 0, m);
    y.middleRows(at, dw.site_dim(0, m)) = x.middleRows(at, dw.site_dim(0, m));
  }
  return y;
}

// Conjugate of the doubled representation by the corner isometry pair,
// applied column by column.
Mat apply_conjugated(KkOps& kk, const DoubledWindow& dw, int j, const Mat& x) {
  SubproductSystem& sys = dw.sys;
  FusionMaps& fusion = kk.fusion();
  const int h = sys.n() + 1;
  const int kmax = dw.kmax;

  std::vector<Mat> base_tt(kmax + 1), base_tb(kmax + 1), base_bt(kmax + 1),
      base_bb(kmax + 1);
  for (int k = 2; k <= kmax; ++k) {
    Mat step = apply_kron_right(kk.toeplitz().creation_block(j, k - 2).adjoint(),
                                h, sys.inclusion(k - 1, 1));
    base_tt[k] = sys.coisometry(k - 2, 1) * step;
    base_bt[k] = Mat();
    if (k >= 3) base_bt[k] = fusion.vee(k - 2).adjoint() * step;
  }
  for (int k = 0; k + 1 <= kmax; ++k) {
    Mat step = apply_kron_right(kk.toeplitz().creation_block(j, k).adjoint(), h,
                                fusion.vee(k + 1));
    base_tb[k] = sys.coisometry(k, 1) * step;
  }
  for (int k = 1; k <= kmax; ++k) {
    Mat step = apply_kron_right(kk.toeplitz().creation_block(j, k).adjoint(), h,
                                fusion.vee(k + 1));
    base_bb[k] = fusion.vee(k).adjoint() * step;
  }

  Mat y = Mat::Zero(x.rows(), x.cols());
  for (int m = 0; m <= kmax; ++m) {
    for (int k = 2; k <= kmax; ++k) {
      const Mat block = x.middleRows(dw.offset(0, k, m), dw.site_dim(k, m));
      y.middleRows(dw.offset(0, k - 1, m), dw.site_dim(k - 1, m)) +=
          apply_kron_right(base_tt[k], sys.dim(m), block);
      if (k >= 3) {
        y.middleRows(dw.offset(1, k - 3, m), dw.site_dim(k - 3, m)) +=
            apply_kron_right(base_bt[k], sys.dim(m), block);
      }
    }
    for (int k = 0; k + 1 <= kmax; ++k) {
      const Mat block = x.middleRows(dw.offset(1, k, m), dw.site_dim(k, m));
      y.middleRows(dw.offset(0, k + 1, m), dw.site_dim(k + 1, m)) +=
          apply_kron_right(base_tb[k], sys.dim(m), block);
    }
    for (int k = 1; k <= kmax; ++k) {
      const Mat block = x.middleRows(dw.offset(1, k, m), dw.site_dim(k, m));
      y.middleRows(dw.offset(1, k - 1, m), dw.site_dim(k - 1, m)) +=
          apply_kron_right(base_bb[k], sys.dim(m), block);
    }
  }
  return y;
}

// Frozen doubled shift off the included fibers plus the rotation path on
// them.
Mat build_h_full(KkOps& kk, const DoubledWindow& dw, double t) {
  SubproductSystem& sys = dw.sys;
  const int kmax = dw.kmax;
  Mat h = Mat::Zero(dw.total, dw.total);

  for (int k = 1; k <= kmax; ++k) {
    for (int m = 1; m <= kmax; ++m) {
      Mat off = identity(dw.site_dim(k, m)) - sys.inclusion_projector(k, m);
      if (m + 1 <= kmax) {
        place_block(h, dw, 0, k - 1, m + 1, 0, k, m, Mat(kk.v_tt(k, m) * off));
      }
      place_block(h, dw, 1, k - 1, m - 1, 0, k, m, Mat(kk.v_bt(k, m) * off));
    }
  }
  for (int k = 0; k + 1 <= kmax; ++k) {
    for (int m = 0; m + 1 <= kmax; ++m) {
      place_block(h, dw, 0, k + 1, m + 1, 1, k, m, kk.v_tb(k, m));
    }
  }
  for (int k = 0; k + 1 <= kmax; ++k) {
    for (int m = 1; m <= kmax; ++m) {
      place_block(h, dw, 1, k + 1, m - 1, 1, k, m, kk.v_bb(k, m));
    }
  }

  for (int total_deg = 0; total_deg <= kmax; ++total_deg) {
    const Mat u = scalar_homotopy(total_deg + 1, t);
    for (int kc = 0; kc <= total_deg; ++kc) {
      Mat inc_c = sys.inclusion(kc, total_deg - kc);
      for (int kr = 0; kr <= total_deg; ++kr) {
        const Scalar coef = u(kr, kc);
        if (std::abs(coef) < 1e-15) continue;
        Mat inc_r = sys.inclusion(kr, total_deg - kr);
        place_block(h, dw, 0, kr, total_deg - kr, 0, kc, total_deg - kc,
                    Mat(coef * (inc_r * inc_c.adjoint())));
      }
    }
  }
  return h;
}

void check_block_defects(KkOps& kk, std::vector<IdentityReport>& out) {
  const double tol = 1e-10;
  const int kmax = kk.kmax();
  SubproductSystem& sys = kk.system();

  for (int k = 0; k <= kmax; ++k) {
    for (int m = 0; m <= kmax; ++m) {
      const Index d = sys.dim(k) * sys.dim(m);

      if (k >= 1) {
        Mat acc = kk.v_tt(k, m).adjoint() * kk.v_tt(k, m);
        if (m >= 1) acc += kk.v_bt(k, m).adjoint() * kk.v_bt(k, m);
        out.push_back(make_report("isometry_defect_top", params_km(k, m),
                                  residual_norm(acc, identity(d)), tol));
      }

      {
        Mat acc = kk.v_tb(k, m).adjoint() * kk.v_tb(k, m);
        if (m >= 1) acc += kk.v_bb(k, m).adjoint() * kk.v_bb(k, m);
        out.push_back(make_report("isometry_defect_bottom", params_km(k, m),
                                  residual_norm(acc, identity(d)), tol));
      }

      if (k >= 2) {
        Mat acc = kk.v_tt(k, m).adjoint() * kk.v_tb(k - 2, m);
        if (m >= 1) acc += kk.v_bt(k, m).adjoint() * kk.v_bb(k - 2, m);
        out.push_back(make_report("isometry_cross", params_km(k, m),
                                  op_norm(acc), tol));
      }

      if (m >= 1 && k + 1 <= kmax) {
        Mat acc = kk.v_tt(k + 1, m - 1) * kk.v_tt(k + 1, m - 1).adjoint();
        if (k >= 1) acc += kk.v_tb(k - 1, m - 1) * kk.v_tb(k - 1, m - 1).adjoint();
        out.push_back(make_report("coisometry_defect_top", params_km(k, m),
                                  residual_norm(acc, identity(d)), tol));
      }

      if (k + 1 <= kmax && m + 1 <= kmax) {
        Mat acc = kk.v_bt(k + 1, m + 1) * kk.v_bt(k + 1, m + 1).adjoint();
        if (k >= 1) acc += kk.v_bb(k - 1, m + 1) * kk.v_bb(k - 1, m + 1).adjoint();
        out.push_back(make_report("coisometry_defect_bottom", params_km(k, m),
                                  residual_norm(acc, identity(d)), tol));
      }

      if (m >= 2 && k + 1 <= kmax) {
        Mat acc = kk.v_tt(k + 1, m - 1) * kk.v_bt(k + 1, m - 1).adjoint();
        if (k >= 1) acc += kk.v_tb(k - 1, m - 1) * kk.v_bb(k - 1, m - 1).adjoint();
        out.push_back(make_report("coisometry_cross", params_km(k, m),
                                  op_norm(acc), tol));
      }
    }
  }
}

void check_toeplitz_forms(KkOps& kk, std::vector<IdentityReport>& out) {
  const double tol = 1e-9;
  const int kmax = kk.kmax();
  const int n = kk.n();
  const int h = n + 1;
  ToeplitzOps& ops = kk.toeplitz();
  const SequencePack& seqs = kk.sequences();

  for (int k = 0; k <= kmax; ++k) {
    for (int m = 0; m <= kmax; ++m) {
      if (k >= 1) {
        Mat acc = Mat::Zero(kk.v_tt(k, m).rows(), kk.v_tt(k, m).cols());
        for (int j = 0; j < h; ++j) {
          acc += kron(ops.right_creation_block(j, k - 1).adjoint(),
                      ops.creation_block(j, m));
        }
        out.push_back(make_report("toeplitz_form_tt", params_km(k, m),
                                  residual_norm(acc, kk.v_tt(k, m)), tol));
      }

      {
        const double scale = std::sqrt(seqs.dim_d(k) / seqs.dim_d(k + 1));
        Mat acc = Mat::Zero(kk.v_tb(k, m).rows(), kk.v_tb(k, m).cols());
        for (int j = 0; j < h; ++j) {
          acc += parity_sign(n - j) * scale *
                 kron(ops.right_creation_block(n - j, k), ops.creation_block(j, m));
        }
        out.push_back(make_report("toeplitz_form_tb", params_km(k, m),
                                  residual_norm(acc, kk.v_tb(k, m)), tol));
      }

      if (k >= 1 && m >= 1) {
        const double scale = std::sqrt(seqs.dim_d(m - 1) / seqs.dim_d(m));
        Mat acc = Mat::Zero(kk.v_bt(k, m).rows(), kk.v_bt(k, m).cols());
        for (int j = 0; j < h; ++j) {
          acc += parity_sign(n - j) * scale *
                 kron(ops.right_creation_block(n - j, k - 1).adjoint(),
                      ops.creation_block(j, m - 1).adjoint());
        }
        out.push_back(make_report("toeplitz_form_bt", params_km(k, m),
                                  residual_norm(acc, kk.v_bt(k, m)), tol));
      }

      if (m >= 1) {
        const double scale = std::sqrt(seqs.dim_d(k) / seqs.dim_d(k + 1)) *
                             std::sqrt(seqs.dim_d(m - 1) / seqs.dim_d(m));
        Mat acc = Mat::Zero(kk.v_bb(k, m).rows(), kk.v_bb(k, m).cols());
        for (int j = 0; j < h; ++j) {
          acc += parity_sign(n) * scale *
                 kron(ops.right_creation_block(j, k),
                      ops.creation_block(j, m - 1).adjoint());
        }
        out.push_back(make_report("toeplitz_form_bb", params_km(k, m),
                                  residual_norm(acc, kk.v_bb(k, m)), tol));
      }

      {
        const double scale =
            parity_sign(static_cast<long>(n + 1) * k) / std::sqrt(seqs.mu_d(k + 1));
        out.push_back(make_report(
            "sigma_up_proportionality", params_km(k, m),
            residual_norm(kk.v_tb(k, m), scale * kk.fusion().sigma(k, m)), 1e-10));
      }
    }
  }
}

void check_lattice_shift(KkOps& kk, std::vector<IdentityReport>& out) {
  const double tol = 1e-10;
  const int kmax = kk.kmax();
  SubproductSystem& sys = kk.system();

  for (int k = 0; k <= kmax; ++k) {
    for (int m = 0; m <= kmax; ++m) {
      if (k >= 1) {
        out.push_back(make_report(
            "shift_on_inclusions", params_km(k, m),
            residual_norm(Mat(kk.v_tt(k, m) * sys.inclusion(k, m)),
                          sys.inclusion(k - 1, m + 1)),
            tol));
        out.push_back(make_report(
            "projector_intertwining", params_km(k, m),
            residual_norm(Mat(kk.v_tt(k, m) * sys.inclusion_projector(k, m)),
                          Mat(sys.inclusion_projector(k - 1, m + 1) *
                              kk.v_tt(k, m))),
            tol));
      }
      if (k >= 1 && m >= 1) {
        out.push_back(make_report(
            "shift_kills_bottom", params_km(k, m),
            op_norm(kk.v_bt(k, m) * sys.inclusion(k, m)), tol));
        out.push_back(make_report(
            "projector_kills_down", params_km(k, m),
            op_norm(kk.v_bt(k, m) * sys.inclusion_projector(k, m)), tol));
      }
      if (k + 1 <= kmax && m + 1 <= kmax) {
        out.push_back(make_report(
            "projector_kills_up", params_km(k, m),
            op_norm(sys.inclusion_projector(k + 1, m + 1) * kk.v_tb(k, m)),
            tol));
      }
    }
  }
}

void check_spectra(KkOps& kk, std::vector<IdentityReport>& out) {
  const double tol = 1e-9;
  const int kmax = kk.kmax();
  const int n = kk.n();
  const SequencePack& seqs = kk.sequences();
  SubproductSystem& sys = kk.system();
  const std::vector<double> lambda_grid = {1e-6, 1e-5, 1e-4, 1e-3,
                                           1e-2, 1e-1, 1.0};

  for (int k = 0; k <= kmax; ++k) {
    for (int m = 0; m <= kmax; ++m) {
      const Mat gamma = kk.gamma_op(k, m);
      const std::vector<double> gamma_eigs = hermitian_eigenvalues(gamma);

      std::vector<double> closed;
      for (int j = 0; j <= std::min(k, m); ++j) {
        const double top = seqs.dim_d(k - j) *
                           (m - j - 1 >= 0 ? seqs.dim_d(m - j - 1) : 0.0);
        const double value = 1.0 - top / (seqs.dim_d(k + 1) * seqs.dim_d(m));
        const Int mult = seqs.dim(k + m - 2 * j);
        for (Int c = 0; c < mult; ++c) closed.push_back(value);
      }
      require(closed.size() == gamma_eigs.size(),
              "spectral multiplicities do not fill the site");
      std::sort(closed.begin(), closed.end());
      double worst = 0.0;
      for (std::size_t i = 0; i < closed.size(); ++i) {
        worst = std::max(worst, std::abs(closed[i] - gamma_eigs[i]));
      }
      out.push_back(make_report("gamma_spectrum", params_km(k, m), worst, tol));

      const double lambda_min = std::max(0.0, gamma_eigs.front());
      double bound = 0.0;
      for (double lambda : lambda_grid) {
        bound = std::max(bound, 1.0 / (seqs.dim_d(k) * (lambda + lambda_min)));
      }
      out.push_back(make_report("gamma_resolvent_bound", params_km(k, m), bound,
                                static_cast<double>(n + 1)));

      if (k >= 1 && m >= 1) {
        const Mat delta = kk.delta_op(k, m);
        const std::vector<double> delta_eigs = hermitian_eigenvalues(delta);

        std::vector<double> dclosed;
        for (Int c = 0; c < seqs.dim(k + m); ++c) dclosed.push_back(0.0);
        const double lead =
            seqs.dim_d(k) * seqs.dim_d(m - 1) /
            (seqs.dim_d(k - 1) * seqs.dim_d(m));
        for (int j = 1; j <= std::min(k, m); ++j) {
          const double top = seqs.dim_d(k - j) *
                             (m - j - 1 >= 0 ? seqs.dim_d(m - j - 1) : 0.0);
          const double value =
              lead * (1.0 - top / (seqs.dim_d(k) * seqs.dim_d(m - 1)));
          const Int mult = seqs.dim(k + m - 2 * j);
          for (Int c = 0; c < mult; ++c) dclosed.push_back(value);
        }
        require(dclosed.size() == delta_eigs.size(),
                "spectral multiplicities do not fill the site");
        std::sort(dclosed.begin(), dclosed.end());
        double dworst = 0.0;
        for (std::size_t i = 0; i < dclosed.size(); ++i) {
          dworst = std::max(dworst, std::abs(dclosed[i] - delta_eigs[i]));
        }
        out.push_back(make_report("delta_spectrum", params_km(k, m), dworst, tol));

        double min_pos = 0.0;
        for (double value : delta_eigs) {
          if (value > 1e-6) {
            min_pos = value;
            break;
          }
        }
        require(min_pos > 0.0, "positive part of the down defect is empty");
        const double min_closed =
            seqs.dim_d(k + m - 1) / (seqs.dim_d(k - 1) * seqs.dim_d(m));
        out.push_back(make_report("delta_smallest_positive", params_km(k, m),
                                  std::abs(min_pos - min_closed), tol));
        out.push_back(make_report(
            "delta_pinverse_bound", params_km(k, m),
            1.0 / (seqs.dim_d(k) * min_pos),
            static_cast<double>(n + 1) * gamma_limit(n)));
      }

      const Mat theta = kk.theta(k, m);
      out.push_back(make_report(
          "theta_isometry", params_km(k, m),
          residual_norm(Mat(theta.adjoint() * theta), identity(theta.cols())),
          tol));

      Mat span = sys.straddle_span(k + 1, m + 1);
      require(span.cols() == theta.cols(),
              "complement dimension does not match the polar factor");
      out.push_back(make_report(
          "theta_range", params_km(k, m),
          op_norm(theta - span * (span.adjoint() * theta)), tol));

      out.push_back(make_report(
          "tb_polar_factor", params_km(k, m),
          residual_norm(kk.v_tb(k, m), Mat(theta * sqrt_psd(gamma))), tol));

      if (k >= 1 && m >= 1) {
        const double scale = std::sqrt(seqs.dim_d(k) * seqs.dim_d(m - 1) /
                                       (seqs.dim_d(k - 1) * seqs.dim_d(m)));
        out.push_back(make_report(
            "bt_theta_exchange", params_km(k, m),
            residual_norm(kk.v_bt(k, m),
                          Mat(scale * sqrt_psd(kk.gamma_op(k - 1, m - 1)) *
                              kk.theta(k - 1, m - 1).adjoint())),
            tol));
      }
    }
  }

  for (int j = 0; j <= n; ++j) {
    for (int k = 1; k <= kmax; ++k) {
      for (int m = 0; m <= kmax; ++m) {
        const Mat term1 =
            apply_kron_right(kk.toeplitz().creation_block(j, k).adjoint(),
                             sys.dim(m + 1), kk.v_tb(k, m));
        const Mat term2 =
            kk.v_tb(k - 1, m) *
            kron(kk.toeplitz().creation_block(j, k - 1).adjoint(),
                 identity(sys.dim(m)));
        std::map<std::string, double> params = params_km(k, m);
        params["j"] = static_cast<double>(j);
        out.push_back(make_report("theta_commutator_weight", params,
                                  seqs.dim_d(k) * op_norm(term1 - term2),
                                  kCommutatorWeightBound));
      }
    }
  }
}

void check_y_path(KkOps& kk, std::vector<IdentityReport>& out) {
  const double tol = 1e-9;
  const int kmax = kk.kmax();
  SubproductSystem& sys = kk.system();

  for (double t : {0.25, 0.75}) {
    for (int k = 0; k <= kmax; ++k) {
      for (int m = 0; m <= kmax; ++m) {
        std::map<std::string, double> params = params_km(k, m);
        params["t"] = t;

        if (k >= 1 && m >= 1) {
          const Index d = sys.dim(k) * sys.dim(m);
          Mat off = identity(d) - sys.inclusion_projector(k, m);
          Mat lhs = identity(d) - off;
          lhs += (1.0 - t) * (off * (kk.v_tt(k, m).adjoint() * kk.v_tt(k, m)) * off);
          lhs += off * kk.delta_op(k, m) * off;
          Mat rhs = identity(d) - off + (1.0 - t) * off + t * kk.delta_op(k, m);
          out.push_back(
              make_report("y_gram_top", params, residual_norm(lhs, rhs), tol));
        }

        {
          const Index d = sys.dim(k) * sys.dim(m);
          Mat lhs = kk.gamma_op(k, m);
          if (m >= 1) {
            lhs = t * lhs + (1.0 - t) *
                                (lhs + kk.v_bb(k, m).adjoint() * kk.v_bb(k, m));
          } else {
            lhs = t * lhs + (1.0 - t) * lhs;
          }
          Mat rhs = (1.0 - t) * identity(d) + t * kk.gamma_op(k, m);
          out.push_back(make_report("y_gram_bottom", params,
                                    residual_norm(lhs, rhs), tol));
        }
      }
    }
  }
}

void check_scalar_lattice(std::vector<IdentityReport>& out) {
  const double tol = 1e-10;
  const std::vector<int> lengths = {0, 1, 2, 3, 5, 8, 13, 21, 34, 40};
  const std::vector<double> grid = {0.0, 0.3, 0.6, 0.9, 1.2, 1.5, kPi / 2};
  for (int len : lengths) {
    for (double t : grid) {
      const Mat u = scalar_homotopy(len + 1, t);
      std::map<std::string, double> params = {
          {"size", static_cast<double>(len)}, {"t", t}};
      out.push_back(make_report(
          "shift_homotopy_unitary", params,
          residual_norm(Mat(u.adjoint() * u), identity(len + 1)), tol));
    }
    std::map<std::string, double> params = {{"size", static_cast<double>(len)}};
    out.push_back(make_report(
        "shift_homotopy_endpoint", params,
        residual_norm(scalar_homotopy(len + 1, kPi / 2), identity(len + 1)),
        tol));
  }
}

void check_full_window(KkOps& kk, std::vector<IdentityReport>& out) {
  const int kmax = kk.kmax();
  const int n = kk.n();
  DoubledWindow dw(kk.system(), kmax);
  const Mat w = build_w_full(kk, dw);

  std::vector<std::array<int, 3>> safe_sites;
  std::vector<std::array<int, 3>> safe_top;
  for (int comp = 0; comp < 2; ++comp) {
    for (int k = 0; k + 1 <= kmax; ++k) {
      for (int m = 0; m + 1 <= kmax; ++m) {
        safe_sites.push_back({comp, k, m});
        if (comp == 0) safe_top.push_back({comp, k, m});
      }
    }
  }
  const Mat safe_cols = site_columns(dw, safe_sites);
  const Mat top_cols = site_columns(dw, safe_top);

  for (int j = 0; j <= n; ++j) {
    const Mat left = apply_mid(kk, dw, j, Mat(w * safe_cols));
    const Mat right = apply_conjugated(kk, dw, j, safe_cols);
    const Mat lhs = w.adjoint() * left;
    out.push_back(make_report("conjugation_identity",
                              {{"j", static_cast<double>(j)}},
                              op_norm(lhs - right), 1e-10));

    const Mat comm = apply_mid(kk, dw, j, Mat(w * top_cols)) -
                     w * apply_mid(kk, dw, j, top_cols);
    out.push_back(make_report("generator_shift_commutation",
                              {{"j", static_cast<double>(j)}}, op_norm(comm),
                              1e-10));
  }

  std::vector<std::array<int, 3>> unit_sites;
  std::vector<std::array<int, 2>> lattice_sites;
  for (int k = 0; k + 1 <= kmax; ++k) {
    for (int m = 0; m + 1 <= kmax; ++m) {
      if (k + m <= kmax) {
        unit_sites.push_back({0, k, m});
        lattice_sites.push_back({k, m});
      }
      unit_sites.push_back({1, k, m});
    }
  }
  const Mat unit_cols = site_columns(dw, unit_sites);
  const Mat lat_cols = lattice_columns(dw, lattice_sites);

  const std::vector<double> grid = {0.0, 0.4, 0.8, 1.2, kPi / 2};
  for (double t : grid) {
    const Mat h = build_h_full(kk, dw, t);
    const Mat hu = h * unit_cols;
    out.push_back(make_report("homotopy_unitary", {{"t", t}},
                              op_norm(Mat(h.adjoint() * hu) - unit_cols),
                              1e-10));

    for (int j = 0; j <= n; ++j) {
      const Mat mid_lat = apply_mid(kk, dw, j, lat_cols);
      const Mat lhs =
          h.adjoint() * apply_mid(kk, dw, j, Mat(h * lat_cols));
      Mat rhs = w.adjoint() * (w * mid_lat);
      rhs += std::sin(t) * apply_corner(dw, mid_lat);
      rhs += std::cos(t) *
             apply_right_adjoint(kk, dw, j, apply_corner(dw, lat_cols));
      std::map<std::string, double> params = {{"j", static_cast<double>(j)},
                                              {"t", t}};
      out.push_back(make_report("homotopy_generator_transport", params,
                                op_norm(lhs - rhs), 1e-9));
    }
  }
}

bool divisibility_chain_ok(const IntMat& diag) {
  const int rows = static_cast<int>(diag.size());
  const int cols = static_cast<int>(diag[0].size());
  Int prev = 0;
  bool seen_zero = false;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    for (int j = 0; j < cols; ++j) {
      if (j != t && diag[t][j] != 0) return false;
    }
    for (int i = 0; i < rows; ++i) {
      if (i != t && diag[i][t] != 0) return false;
    }
    const Int& value = diag[t][t];
    if (value < 0) return false;
    if (value == 0) {
      seen_zero = true;
    } else {
      if (seen_zero) return false;
      if (prev != 0 && value % prev != 0) return false;
      prev = value;
    }
  }
  return true;
}

}  // namespace

std::vector<IdentityReport> verify_kk(ToeplitzOps& ops, int kmax) {
  KkOps kk(ops, kmax);
  std::vector<IdentityReport> out;
  check_block_defects(kk, out);
  check_toeplitz_forms(kk, out);
  check_lattice_shift(kk, out);
  check_spectra(kk, out);
  check_y_path(kk, out);
  check_scalar_lattice(out);
  check_full_window(kk, out);
  sort_reports(out);
  return out;
}

std::vector<IdentityReport> verify_gysin(int max_n) {
  require(max_n >= 1, "fiber parameter must be at least 1");
  std::vector<IdentityReport> out;

  const std::vector<IntMat> samples = {
      {{Int(2), Int(4), Int(4)}, {Int(-6), Int(6), Int(12)}, {Int(10), Int(4), Int(16)}},
      {{Int(1), Int(2)}, {Int(3), Int(4)}},
      {{Int(0), Int(0)}, {Int(0), Int(0)}},
      {{Int(6), Int(10), Int(15)}},
  };
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    SmithForm f = smith_normal_form(samples[idx]);
    const IntMat product =
        int_matrix_product(int_matrix_product(f.left, samples[idx]), f.right);
    std::map<std::string, double> params = {
        {"sample", static_cast<double>(idx)}};
    out.push_back(make_report("smith_transform", params,
                              int_matrix_equal(product, f.diagonal) ? 0.0 : 1.0,
                              0.0));
    out.push_back(make_report("smith_divisibility", params,
                              divisibility_chain_ok(f.diagonal) ? 0.0 : 1.0,
                              0.0));
  }

  for (int n = 1; n <= max_n; ++n) {
    const GysinSummary g = gysin_k_theory(n);
    std::map<std::string, double> params = {{"n", static_cast<double>(n)}};

    Int sum = 0;
    for (const Int& term : g.euler_terms) sum += term;
    out.push_back(make_report("euler_term_sum", params,
                              (sum == g.euler_total) ? 0.0 : 1.0, 0.0));

    SmithForm f = smith_normal_form(IntMat{{g.euler_total}});
    const IntMat product = int_matrix_product(
        int_matrix_product(f.left, IntMat{{g.euler_total}}), f.right);
    out.push_back(make_report("gysin_smith_transform", params,
                              int_matrix_equal(product, f.diagonal) ? 0.0 : 1.0,
                              0.0));

    // For an injective connecting map the order of the even group equals the
    // absolute value of the multiplier; for the vanishing map both groups
    // keep a free generator.
    double mismatch = 0.0;
    if (g.euler_total == 0) {
      if (g.k_zero.rank != 1 || g.k_one.rank != 1 || !g.k_zero.torsion.empty()) {
        mismatch = 1.0;
      }
    } else {
      Int order = 1;
      for (const Int& factor : g.k_zero.torsion) order *= factor;
      Int expected = g.euler_total < 0 ? -g.euler_total : g.euler_total;
      if (g.k_zero.rank != 0 || g.k_one.rank != 0 || order != expected) {
        mismatch = 1.0;
      }
    }
    out.push_back(make_report("gysin_group_order", params, mismatch, 0.0));
  }

  sort_reports(out);
  return out;
}

}  // namespace sps

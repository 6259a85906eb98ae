// Command line front end: builds determinant subproduct systems and runs the
// identity registries of the library modules. Every subcommand exits 0 when
// all executed checks pass, 1 when at least one check fails and 2 on usage or
// configuration errors.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sps/fusion.hpp"
#include "sps/kk.hpp"
#include "sps/ncpoly.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/su2.hpp"
#include "sps/system.hpp"
#include "sps/toeplitz.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 7;
constexpr int kDefaultSamples = 3;
constexpr int kDefaultMaxDegree = 4;
constexpr int kDefaultSequenceDegree = 40;
constexpr int kDefaultGysinMax = 10;

struct CommonOptions {
  double tol_cap = 0.0;  // 0 disables the cap
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  int threads = 0;
};

int default_kmax(int n) { return n == 1 ? 5 : 3; }

// The registries pin one tolerance per identity. The cap can only tighten
// them, which probes the margin of a passing run without ever loosening a
// built-in threshold.
void apply_tol_cap(std::vector<sps::IdentityReport>& reports, double cap) {
  if (cap <= 0.0) return;
  for (auto& report : reports) {
    report.tolerance = std::min(report.tolerance, cap);
    report.pass = report.residual <= report.tolerance;
  }
}

int emit_reports(std::vector<sps::IdentityReport> reports,
                 const CommonOptions& common) {
  apply_tol_cap(reports, common.tol_cap);
  if (common.json) {
    std::cout << sps::render_json(reports) << "\n";
  } else {
    std::cout << sps::render_text(reports);
    std::cout << "checks: " << reports.size()
              << "  failures: " << sps::count_failures(reports) << "\n";
  }
  return sps::all_pass(reports) ? 0 : 1;
}

void append(std::vector<sps::IdentityReport>& into,
            std::vector<sps::IdentityReport> from) {
  into.insert(into.end(), std::make_move_iterator(from.begin()),
              std::make_move_iterator(from.end()));
}

int run_seq(int n, int max_degree, bool table, const CommonOptions& common) {
  if (table) {
    const std::vector<sps::Int> dims = sps::dim_sequence(n, max_degree);
    if (common.json) {
      nlohmann::ordered_json out;
      out["n"] = n;
      out["max_degree"] = max_degree;
      auto& list = out["dims"] = nlohmann::ordered_json::array();
      for (const sps::Int& d : dims) list.push_back(d.str());
      std::cout << out.dump() << "\n";
    } else {
      for (std::size_t m = 0; m < dims.size(); ++m) {
        std::cout << m << " " << dims[m].str() << "\n";
      }
    }
    return 0;
  }
  return emit_reports(sps::verify_sequence_identities(n, max_degree), common);
}

int run_rep(int n, int samples, const CommonOptions& common) {
  return emit_reports(sps::verify_representation(n, samples, common.seed),
                      common);
}

int run_ideal(int n, int max_degree, bool print, const CommonOptions& common) {
  if (print) {
    std::cout << sps::format_polynomial(sps::determinant_polynomial(n)) << "\n";
    return 0;
  }
  return emit_reports(sps::verify_ideal_correspondence(n, max_degree), common);
}

int run_build(int n, int max_degree, const std::string& out_path,
              const CommonOptions& common) {
  sps::SubproductSystem sys = sps::build_system(n, max_degree);
  if (sys.max_degree() < max_degree) {
    // The direct construction stops at the ambient size cap; the remaining
    // degrees come from the one step fusion recursion.
    sps::FusionMaps fusion(sys);
    fusion.ensure_degree(max_degree);
  }
  if (!out_path.empty()) sps::save_system_json(sys, out_path);
  if (common.json) {
    nlohmann::ordered_json out;
    out["n"] = n;
    out["max_degree"] = max_degree;
    auto& list = out["dims"] = nlohmann::ordered_json::array();
    for (int m = 0; m <= max_degree; ++m) {
      list.push_back(static_cast<long long>(sys.dim(m)));
    }
    if (!out_path.empty()) out["path"] = out_path;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "n " << n << " max_degree " << max_degree << " dims";
    for (int m = 0; m <= max_degree; ++m) std::cout << " " << sys.dim(m);
    std::cout << "\n";
    if (!out_path.empty()) std::cout << "saved " << out_path << "\n";
  }
  return 0;
}

int run_fusion(int n, int max_degree, int samples, const CommonOptions& common) {
  sps::SubproductSystem sys = sps::build_system(n, max_degree);
  sps::FusionMaps fusion(sys);
  return emit_reports(
      sps::verify_fusion(fusion, max_degree, sps::sample_set(samples, common.seed)),
      common);
}

int run_toeplitz(int n, int max_degree, int samples, const CommonOptions& common) {
  sps::SubproductSystem sys = sps::build_system(n, max_degree);
  sps::FusionMaps fusion(sys);
  sps::ToeplitzOps ops(fusion, max_degree);
  return emit_reports(
      sps::verify_toeplitz(ops, sps::sample_set(samples, common.seed)), common);
}

nlohmann::ordered_json group_json(const sps::KTheoryGroup& group) {
  nlohmann::ordered_json out;
  out["rank"] = group.rank.convert_to<long long>();
  auto& torsion = out["torsion"] = nlohmann::ordered_json::array();
  for (const sps::Int& factor : group.torsion) {
    torsion.push_back(factor.convert_to<long long>());
  }
  return out;
}

int run_kk(int n, int kmax, int gysin_max, bool groups,
           const CommonOptions& common) {
  if (groups) {
    const sps::GysinSummary summary = sps::gysin_k_theory(n);
    nlohmann::ordered_json out;
    out["K0"] = group_json(summary.k_zero);
    out["K1"] = group_json(summary.k_one);
    out["euler"] = summary.euler_total.convert_to<long long>();
    std::cout << out.dump() << "\n";
    return 0;
  }
  sps::SubproductSystem sys = sps::build_system(n, 2 * kmax);
  sps::FusionMaps fusion(sys);
  sps::ToeplitzOps ops(fusion, 2 * kmax);
  std::vector<sps::IdentityReport> reports = sps::verify_kk(ops, kmax);
  append(reports, sps::verify_gysin(gysin_max));
  return emit_reports(std::move(reports), common);
}

struct VerifySelection {
  bool all = false;
  bool sequences = false;
  bool rep = false;
  bool ideal = false;
  bool axioms = false;
  bool equivariance = false;
  bool fusion = false;
  bool toeplitz = false;
  bool kk = false;
  bool gysin = false;

  bool any() const {
    return all || sequences || rep || ideal || axioms || equivariance ||
           fusion || toeplitz || kk || gysin;
  }
  bool want(bool flag) const { return all || flag; }
};

int run_verify(int n, int max_degree, int samples, const std::string& in_path,
               VerifySelection sel, const CommonOptions& common) {
  std::vector<sps::IdentityReport> reports;

  if (!in_path.empty()) {
    // Round trip mode: re-check a previously saved system file.
    sps::SubproductSystem sys = sps::load_system_json(in_path);
    const int top = sys.max_degree();
    append(reports, sps::verify_axioms(sys, top));
    append(reports,
           sps::verify_equivariance(sys, sps::sample_set(samples, common.seed)));
    return emit_reports(std::move(reports), common);
  }

  if (!sel.any()) sel.all = true;
  const std::vector<sps::SU2Element> samples_set =
      sps::sample_set(samples, common.seed);

  if (sel.want(sel.sequences)) {
    append(reports, sps::verify_sequence_identities(n, kDefaultSequenceDegree));
  }
  if (sel.want(sel.rep)) {
    append(reports, sps::verify_representation(n, samples, common.seed));
  }
  if (sel.want(sel.ideal)) {
    append(reports, sps::verify_ideal_correspondence(
                        n, std::min(max_degree, kDefaultMaxDegree)));
  }

  const bool need_system = sel.want(sel.axioms) || sel.want(sel.equivariance) ||
                           sel.want(sel.fusion) || sel.want(sel.toeplitz) ||
                           sel.want(sel.kk);
  if (need_system) {
    sps::SubproductSystem sys = sps::build_system(n, max_degree);
    sps::FusionMaps fusion(sys);
    fusion.ensure_degree(max_degree);
    if (sel.want(sel.axioms)) append(reports, sps::verify_axioms(sys, max_degree));
    if (sel.want(sel.equivariance)) {
      append(reports, sps::verify_equivariance(sys, samples_set));
    }
    if (sel.want(sel.fusion)) {
      append(reports, sps::verify_fusion(fusion, max_degree, samples_set));
    }
    if (sel.want(sel.toeplitz) || sel.want(sel.kk)) {
      sps::ToeplitzOps ops(fusion, max_degree);
      if (sel.want(sel.toeplitz)) {
        append(reports, sps::verify_toeplitz(ops, samples_set));
      }
      const int kmax = std::min(default_kmax(n), max_degree / 2);
      if (sel.want(sel.kk) && kmax >= 1) {
        append(reports, sps::verify_kk(ops, kmax));
      }
    }
  }
  if (sel.want(sel.gysin)) {
    append(reports, sps::verify_gysin(kDefaultGysinMax));
  }
  return emit_reports(std::move(reports), common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical identity checker for determinant subproduct systems"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--tol", common.tol_cap,
                 "cap every check tolerance from above (tighten only)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "seed for the Haar sample stream");
  app.add_flag("--json", common.json, "machine readable report output");
  app.add_option("--threads", common.threads, "Eigen thread count, 0 keeps the default");

  int n = 1;
  int max_degree = kDefaultMaxDegree;
  int samples = kDefaultSamples;

  auto* seq = app.add_subcommand("seq", "dimension sequence identities");
  seq->fallthrough();
  int seq_degree = kDefaultSequenceDegree;
  bool seq_table = false;
  seq->add_option("--n", n, "fiber parameter")->required()->check(CLI::PositiveNumber);
  seq->add_option("--max-degree", seq_degree, "largest degree checked")
      ->check(CLI::NonNegativeNumber);
  seq->add_flag("--table", seq_table, "print the dimension table and exit");

  auto* rep = app.add_subcommand("rep", "irreducible representation checks");
  rep->fallthrough();
  rep->add_option("--n", n, "fiber parameter")->required()->check(CLI::PositiveNumber);
  rep->add_option("--samples", samples, "Haar sample count")->check(CLI::PositiveNumber);

  auto* ideal = app.add_subcommand("ideal", "determinant ideal correspondence");
  ideal->fallthrough();
  bool ideal_print = false;
  ideal->add_option("--n", n, "fiber parameter")->required()->check(CLI::PositiveNumber);
  ideal->add_option("--max-degree", max_degree, "largest degree compared")
      ->check(CLI::PositiveNumber);
  ideal->add_flag("--print", ideal_print, "print the generator polynomial and exit");

  auto* build = app.add_subcommand("build", "construct a system and save it");
  build->fallthrough();
  std::string out_path;
  build->add_option("--n", n, "fiber parameter")->required()->check(CLI::PositiveNumber);
  build->add_option("--max-degree", max_degree, "largest degree constructed")
      ->check(CLI::PositiveNumber);
  build->add_option("--out", out_path, "output file for the system");

  auto* fusion = app.add_subcommand("fusion", "fusion map identities");
  fusion->fallthrough();
  fusion->add_option("--n", n, "fiber parameter")->required()->check(CLI::PositiveNumber);
  fusion->add_option("--max-degree", max_degree, "largest total degree checked")
      ->check(CLI::PositiveNumber);
  fusion->add_option("--samples", samples, "Haar sample count")->check(CLI::PositiveNumber);

  auto* toeplitz = app.add_subcommand("toeplitz", "creation operator identities");
  toeplitz->fallthrough();
  toeplitz->add_option("--n", n, "fiber parameter")->required()->check(CLI::PositiveNumber);
  toeplitz->add_option("--max-degree", max_degree, "largest degree checked")
      ->check(CLI::PositiveNumber);
  toeplitz->add_option("--samples", samples, "Haar sample count")->check(CLI::PositiveNumber);

  auto* kk = app.add_subcommand("kk", "doubled shift and index identities");
  kk->fallthrough();
  int kmax = 0;
  int gysin_max = kDefaultGysinMax;
  bool groups = false;
  kk->add_option("--n", n, "fiber parameter")->required()->check(CLI::PositiveNumber);
  kk->add_option("--kmax", kmax, "lattice window size")->check(CLI::PositiveNumber);
  kk->add_option("--gysin-max", gysin_max, "largest n in the integer sweep")
      ->check(CLI::PositiveNumber);
  kk->add_flag("--groups", groups, "print the K groups as JSON and exit");

  auto* verify = app.add_subcommand("verify", "run identity registries");
  verify->fallthrough();
  VerifySelection sel;
  std::string in_path;
  verify->add_option("--n", n, "fiber parameter")->check(CLI::PositiveNumber);
  verify->add_option("--max-degree", max_degree, "largest degree checked")
      ->check(CLI::PositiveNumber);
  verify->add_option("--samples", samples, "Haar sample count")->check(CLI::PositiveNumber);
  verify->add_option("--in", in_path, "verify a saved system file instead of building");
  verify->add_flag("--all", sel.all, "run every registry");
  verify->add_flag("--sequences", sel.sequences, "dimension sequence identities");
  verify->add_flag("--rep", sel.rep, "representation checks");
  verify->add_flag("--ideal", sel.ideal, "ideal correspondence");
  verify->add_flag("--axioms", sel.axioms, "system axioms");
  verify->add_flag("--equivariance", sel.equivariance, "group action checks");
  verify->add_flag("--fusion", sel.fusion, "fusion map identities");
  verify->add_flag("--toeplitz", sel.toeplitz, "creation operator identities");
  verify->add_flag("--kk", sel.kk, "doubled shift identities");
  verify->add_flag("--gysin", sel.gysin, "integer index checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (common.threads > 0) Eigen::setNbThreads(common.threads);

  try {
    if (seq->parsed()) return run_seq(n, seq_degree, seq_table, common);
    if (rep->parsed()) return run_rep(n, samples, common);
    if (ideal->parsed()) return run_ideal(n, max_degree, ideal_print, common);
    if (build->parsed()) return run_build(n, max_degree, out_path, common);
    if (fusion->parsed()) return run_fusion(n, max_degree, samples, common);
    if (toeplitz->parsed()) return run_toeplitz(n, max_degree, samples, common);
    if (kk->parsed()) {
      if (kmax <= 0) kmax = default_kmax(n);
      return run_kk(n, kmax, gysin_max, groups, common);
    }
    if (verify->parsed()) {
      if (in_path.empty() && verify->count("--n") == 0) {
        std::cerr << "error: verify needs --n unless --in is given\n";
        return 2;
      }
      return run_verify(n, max_degree, samples, in_path, sel, common);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

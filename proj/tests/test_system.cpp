#include <cstdio>
#include <string>
#include <vector>

#include <doctest.h>

#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/sequences.hpp"
#include "sps/su2.hpp"
#include "sps/system.hpp"

using namespace sps;

TEST_CASE("ambient construction caps") {
  CHECK(ambient_cost_cap(1) == 10);
  CHECK(ambient_cost_cap(2) == 6);
  CHECK(ambient_cost_cap(3) == 5);
}

TEST_CASE("fiber dimensions follow the integer sequence") {
  SubproductSystem sys = build_system(2, 4);
  const SequencePack seqs = make_sequences(2, 4);
  for (int m = 0; m <= 4; ++m) {
    CHECK(Int(sys.dim(m)) == seqs.dim(m));
    const Mat& b = sys.basis(m);
    CHECK(residual_norm(Mat(b.adjoint() * b), identity(sys.dim(m))) < 1e-12);
  }
  CHECK(sys.has_det_vector());
  CHECK(std::abs(sys.det_vector().norm() - 1.0) < 1e-13);
}

TEST_CASE("axioms and equivariance registries pass") {
  SubproductSystem sys = build_system(2, 4);
  auto axioms = verify_axioms(sys, 4);
  CHECK(!axioms.empty());
  CHECK(all_pass(axioms));
  auto equi = verify_equivariance(sys, sample_set(2, 5));
  CHECK(!equi.empty());
  CHECK(all_pass(equi));
}

TEST_CASE("straddle span lies in the junction complement") {
  SubproductSystem sys = build_system(2, 4);
  const Mat span = sys.straddle_span(1, 1);
  REQUIRE(span.cols() == 1);  // 9 ambient directions minus d_2 = 8
  CHECK(residual_norm(Mat(span.adjoint() * span), identity(1)) < 1e-12);
  CHECK(op_norm(span.adjoint() * sys.inclusion(1, 1)) < 1e-10);
  const Mat proj = sys.straddle_projector(1, 1);
  CHECK(residual_norm(proj, Mat(identity(9) - span * span.adjoint())) < 1e-12);

  CHECK(sys.straddle_span(0, 2).cols() == 0);
  CHECK(residual_norm(sys.straddle_projector(0, 2), identity(sys.dim(2))) < 1e-14);
}

TEST_CASE("direct construction stops at the ambient cap") {
  SubproductSystem sys = build_system(1, 12);
  CHECK(sys.max_degree() == 10);
  CHECK(sys.ambient_max() == 10);
}

TEST_CASE("save and load round trip") {
  SubproductSystem sys = build_system(1, 4);
  const std::string path = "/tmp/sps_system_round_trip.json";
  save_system_json(sys, path);
  SubproductSystem loaded = load_system_json(path);
  CHECK(loaded.n() == sys.n());
  CHECK(loaded.max_degree() == sys.max_degree());
  for (int m = 0; m <= sys.max_degree(); ++m) {
    CHECK(residual_norm(loaded.basis(m), sys.basis(m)) < 1e-12);
  }
  CHECK((loaded.det_vector() - sys.det_vector()).norm() < 1e-12);
  std::remove(path.c_str());
}

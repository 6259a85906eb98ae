#include <cmath>
#include <vector>

#include <doctest.h>

#include "sps/report.hpp"
#include "sps/sequences.hpp"

using namespace sps;

TEST_CASE("frozen dimension tables") {
  const std::vector<Int> two = dim_sequence(2, 8);
  const std::vector<Int> expected_two = {1, 3, 8, 21, 55, 144, 377, 987, 2584};
  CHECK(two == expected_two);

  const std::vector<Int> three = dim_sequence(3, 4);
  const std::vector<Int> expected_three = {1, 4, 15, 56, 209};
  CHECK(three == expected_three);

  const std::vector<Int> one = dim_sequence(1, 12);
  for (std::size_t m = 0; m < one.size(); ++m) {
    CHECK(one[m] == Int(m + 1));
  }
}

TEST_CASE("recurrence and unimodularity are exact") {
  const SequencePack seqs = make_sequences(2, 30);
  for (int m = 1; m < 30; ++m) {
    CHECK(seqs.dim(m + 1) == Int(3) * seqs.dim(m) - seqs.dim(m - 1));
    CHECK(seqs.dim(m + 1) * seqs.dim(m - 1) - seqs.dim(m) * seqs.dim(m) == Int(-1));
  }
  CHECK(seqs.dim_or_zero(-1) == 0);
  CHECK(seqs.dim_or_zero(-7) == 0);
}

TEST_CASE("window quantities are integral and split the squares") {
  const SequencePack seqs = make_sequences(3, 12);
  for (int m = 1; m <= 11; ++m) {
    CHECK(seqs.mu_at(m) * Int(4) == seqs.dim(m) * seqs.dim(m - 1));
    CHECK(seqs.dim(m) * seqs.dim(m) == seqs.mu_at(m) + seqs.mu_at(m + 1));
  }
}

TEST_CASE("ratio limit") {
  const double expected = (3.0 - std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(gamma_limit(2) - expected) < 1e-15);
  // Past degree twelve consecutive ratios collide at double precision, so
  // strict growth is only asserted below that.
  const SequencePack seqs = make_sequences(2, 25);
  double prev = 0.0;
  for (int m = 1; m <= 12; ++m) {
    const double ratio = seqs.dim_d(m - 1) / seqs.dim_d(m);
    CHECK(ratio > prev);
    CHECK(ratio < gamma_limit(2));
    prev = ratio;
  }
  CHECK(seqs.dim_d(24) / seqs.dim_d(25) <= gamma_limit(2) + 1e-15);
}

TEST_CASE("sequence identity registry passes for small n") {
  for (int n = 1; n <= 6; ++n) {
    const auto reports = verify_sequence_identities(n, 40);
    CHECK(!reports.empty());
    CHECK(all_pass(reports));
  }
}

// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <random>

#include "acsia/schemes.hpp"
#include "acsia/verify.hpp"

using namespace acsia;

TEST_CASE("rank classification thresholds", "[verify]") {
  CHECK(classify_rank(1e-5) == RankStatus::Independent);
  CHECK(classify_rank(1e-11) == RankStatus::Dependent);
  CHECK(classify_rank(1e-8) == RankStatus::Indeterminate);
  CHECK(classify_rank(0.0) == RankStatus::Dependent);
}

TEST_CASE("ACS receivers have full rank on generic channels", "[verify]") {
  const ChannelMatrix ch = sample_channel(7, 3, 3);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const IndependenceReport rep = independence_margin(build_acs_ic3(ch, seed), ch);
    REQUIRE(rep.receivers.size() == 3);
    for (const auto& r : rep.receivers) {
      CHECK(r.rows == 10);
      CHECK(r.cols == 10);
      CHECK(r.numerical_rank == 10);
      CHECK(r.smallest_singular_value() > 1e-6);
      CHECK(std::is_sorted(r.singular_values.rbegin(), r.singular_values.rend()));
      CHECK(r.min_principal_angle > 0.0);
    }
    CHECK(rep.all_independent());
  }
}

TEST_CASE("degenerate channels lose rank at the governed receiver only", "[verify]") {
  for (int i = 1; i <= 6; ++i) {
    const ChannelMatrix ch = construct_special_channel({SpecialKind::AcsDegenerate, i});
    const int implicated = (i - 1) / 2;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const IndependenceReport rep = independence_margin(build_acs_ic3(ch, seed, Preconditions::Bypass), ch);
      for (const auto& r : rep.receivers) {
        INFO("expression " << i << " receiver " << r.rx + 1 << " seed " << seed);
        if (r.rx == implicated) {
          CHECK(r.smallest_singular_value() < 1e-10);
          CHECK(r.numerical_rank <= 9);
          CHECK(r.status == RankStatus::Dependent);
        } else {
          CHECK(r.status == RankStatus::Independent);
        }
      }
    }
  }
}

TEST_CASE("singular channels collapse the ACS receivers", "[verify]") {
  // a complex cycle ratio equal to one makes the two affected expressions vanish mod pi
  for (int i = 1; i <= 6; ++i) {
    const ChannelMatrix ch = construct_special_channel({SpecialKind::Singular, i});
    const auto acs = check_conditions(ch, ConditionSet::AcsIc3);
    CHECK_FALSE(acs.records[static_cast<std::size_t>(i - 1)].pass);
    const IndependenceReport rep = independence_margin(build_acs_ic3(ch, 1, Preconditions::Bypass), ch);
    CHECK_FALSE(rep.all_independent());
  }
}

TEST_CASE("alignment residual reacts to perturbation", "[verify]") {
  const ChannelMatrix ch = sample_channel(7, 3, 3);
  const BeamformerSet set = build_acs_ic3(ch, 1);
  CHECK(alignment_residual(set, ch) <= 1e-12);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1e-3 / std::sqrt(10.0));
  Vec noise(10);
  for (int k = 0; k < 10; ++k) noise(k) = g(rng);
  const StreamRef derived{1, 2};
  const BeamformerSet bumped = set.with_column(derived, set.column(derived) + noise);
  const double r = alignment_residual(bumped, ch);
  CHECK(r >= 1e-4);
  CHECK(r <= 1e-2);
  CHECK(r == Catch::Approx(noise.norm()).epsilon(1e-9));
}

TEST_CASE("X channel and uplinks have rank six at every receiver", "[verify]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ChannelMatrix x = sample_channel(seed, 2, 2);
    const auto rx = independence_margin(build_x_channel(x, seed), x);
    for (const auto& r : rx.receivers) CHECK(r.numerical_rank == 6);
    CHECK(alignment_residual(build_x_channel(x, seed), x) <= 1e-12);
    const ChannelMatrix u = sample_channel(seed, 4, 2);
    CHECK(independence_margin(build_uplinks(u, seed), u).all_independent());
  }
}

TEST_CASE("receiver columns deduplicate aligned interference", "[verify]") {
  const ChannelMatrix ch = sample_channel(7, 3, 3);
  const BeamformerSet set = build_acs_ic3(ch, 1);
  const ReceiverColumns cols = receiver_columns(set, ch, 0);
  CHECK(cols.desired.size() == 4);
  CHECK(cols.interference.size() == 6);
  CHECK(cols.stacked().cols() == 10);
  for (int c = 0; c < cols.stacked().cols(); ++c) CHECK(cols.stacked().col(c).norm() == Catch::Approx(1.0));
  CHECK_THROWS(receiver_columns(set, ch, 3));
  CHECK_THROWS_AS(alignment_residual(set, sample_channel(1, 2, 2)), std::invalid_argument);
}

// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "acsia/lemmas.hpp"

using namespace acsia;
using Catch::Approx;

TEST_CASE("phasor combination closed cases", "[lemmas]") {
  const RealCombination a = solve_phasor_combination(kPi / 2, 0.0);
  CHECK(a.c1 == Approx(0.0).margin(1e-15));
  CHECK(a.c2 == Approx(1.0));
  const RealCombination b = solve_phasor_combination(kPi / 3, -kPi / 3);
  CHECK(b.c1 == Approx(1.0));
  CHECK(b.c2 == Approx(1.0));
  CHECK_THROWS_AS(solve_phasor_combination(0.4, 0.4), std::domain_error);
  CHECK_THROWS_AS(solve_phasor_combination(0.4, 0.4 + kPi), std::domain_error);
}

TEST_CASE("phasor combination residual over random angles", "[lemmas][property]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  int tested = 0;
  double worst = 0.0;
  while (tested < 10000) {
    const double alpha = ang(rng), beta = ang(rng);
    if (std::abs(std::sin(alpha - beta)) <= 0.01) continue;
    const RealCombination c = solve_phasor_combination(alpha, beta);
    // oracle: complex residual evaluated directly
    const std::complex<double> r = 1.0 - c.c1 * std::polar(1.0, alpha) - c.c2 * std::polar(1.0, beta);
    worst = std::max(worst, std::abs(r));
    CHECK(phasor_combination_residual(alpha, beta, c) == Approx(std::abs(r)).margin(1e-15));
    ++tested;
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("double alignment implies containment", "[lemmas]") {
  const ContainmentDemo d = demonstrate_double_alignment(sample_channel(3, 3, 3), 3);
  CHECK(d.alignment_residual <= 1e-10);
  CHECK(d.containment_residual <= 1e-10);
  REQUIRE(d.a.size() == d.a_prime.size());
  for (std::size_t s = 0; s < d.a.size(); ++s) CHECK(std::abs(d.a_prime[s] - d.c.c1 * d.a[s]) <= 1e-12);
  for (std::size_t s = 0; s < d.b.size(); ++s) CHECK(std::abs(d.b_prime[s] - d.c.c2 * d.b[s]) <= 1e-12);

  const ChannelMatrix ch = sample_channel(3, 3, 3);
  const double alpha = ch.phase(0, 2) - ch.phase(1, 2) + ch.phase(1, 0) - ch.phase(0, 0);
  const double beta = ch.phase(0, 1) - ch.phase(2, 1) + ch.phase(2, 0) - ch.phase(0, 0);
  CHECK(distance_to_multiple(d.alpha - alpha, kTwoPi) < 1e-12);
  CHECK(distance_to_multiple(d.beta - beta, kTwoPi) < 1e-12);
}

TEST_CASE("containment holds across seeds", "[lemmas][property]") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ContainmentDemo d = demonstrate_double_alignment(sample_channel(seed, 3, 3), seed);
    CHECK(d.containment_residual < 1e-10);
    CHECK(d.alignment_residual < 1e-10);
  }
}

TEST_CASE("containment needs a nonzero six-phase sine", "[lemmas]") {
  ChannelMatrix ch = sample_channel(5, 3, 3);
  // phi13 - phi23 + phi21 - phi12 + phi32 - phi31 = 0
  ch.set(2, 0, ch.magnitude(2, 0), ch.phase(0, 2) - ch.phase(1, 2) + ch.phase(1, 0) - ch.phase(0, 1) + ch.phase(2, 1));
  CHECK_THROWS_AS(demonstrate_double_alignment(ch, 1), std::domain_error);
}

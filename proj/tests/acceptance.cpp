// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "acsia/dof_bound.hpp"
#include "acsia/experiment.hpp"
#include "acsia/lemmas.hpp"
#include "acsia/rates.hpp"
#include "acsia/verify.hpp"

using namespace acsia;

namespace {

constexpr int kChannels = 100;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s | %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// The gate is the slope of the channel-averaged sum rate. Per-channel slopes
// are reported too; on a fixed 60-110 dB grid a few badly conditioned draws
// per hundred have not reached their asymptote.
struct SlopeStats {
  std::vector<double> slopes;
  double ensemble = 0.0;
  int within = 0;
  double lo = INFINITY, hi = -INFINITY;
};

// Sum-rate curves per channel seed 1..kChannels, builder seed = channel seed.
SlopeStats slopes(SchemeKind kind, int num_rx, int num_tx, double target, double tol) {
  const auto grid = default_snr_grid_db();
  SlopeStats st;
  std::vector<double> mean(grid.size(), 0.0);
  for (int seed = 1; seed <= kChannels; ++seed) {
    const ChannelMatrix ch = sample_channel(static_cast<std::uint64_t>(seed), num_tx, num_rx);
    const DofEstimate d = estimate_dof(kind, ch, static_cast<std::uint64_t>(seed), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) mean[k] += d.sum_rates[k] / kChannels;
    st.slopes.push_back(d.slope);
    st.within += std::abs(d.slope - target) <= tol;
    st.lo = std::min(st.lo, d.slope);
    st.hi = std::max(st.hi, d.slope);
  }
  std::vector<double> x;
  for (double db : grid) x.push_back(std::log2(db_to_linear(db)));
  st.ensemble = fit_line(x, mean).slope;
  return st;
}

std::string describe_stats(const SlopeStats& s) {
  return "ensemble slope " + fmt("%.4f", s.ensemble) + ", per-channel " + std::to_string(s.within) + "/" +
         std::to_string(kChannels) + " within band, range [" + fmt("%.4f", s.lo) + ", " + fmt("%.4f", s.hi) + "]";
}

void criterion1() {
  const ChannelMatrix ch = construct_special_channel({SpecialKind::PhaseExample, 0});
  const BeamformerSet set = build_phase_alignment(ch);
  double worst = 0.0;
  for (double snr : {1.0, 1e2, 1e4, 1e6}) {
    const double want = 1.5 * std::log2(1.0 + 2.0 * snr);
    worst = std::max(worst, std::abs(sum_rate(set, ch, snr).sum_rate - want) / want);
  }
  report(1, worst <= 1e-9, "phase-example sum rate = 1.5 log2(1 + 2 snr) at snr 1, 1e2, 1e4, 1e6",
         "max relative error " + fmt("%.3g", worst) + " (tol 1e-9)");
}

SlopeStats criterion2() {
  const SlopeStats s = slopes(SchemeKind::AcsIc3, 3, 3, 1.2, 0.03);
  report(2, s.ensemble >= 1.17 && s.ensemble <= 1.23, "ACS-IC3 DoF slope in [1.17, 1.23], 100 channels, 60-110 dB",
         describe_stats(s));
  return s;
}

void criterion3() {
  const SlopeStats x = slopes(SchemeKind::XChannel, 2, 2, 4.0 / 3.0, 0.03);
  const SlopeStats u = slopes(SchemeKind::Uplinks, 2, 4, 4.0 / 3.0, 0.03);
  const SlopeStats c = slopes(SchemeKind::CognitiveX, 2, 2, 1.5, 0.03);
  const auto ok = [](const SlopeStats& s, double target) { return std::abs(s.ensemble - target) <= 0.03; };
  report(3, ok(x, 4.0 / 3.0) && ok(u, 4.0 / 3.0) && ok(c, 1.5),
         "X channel and uplinks slope 4/3 +- 0.03, cognitive X 1.5 +- 0.03, 100 channels each",
         "X: " + describe_stats(x) + "; uplinks: " + describe_stats(u) + "; cognitive: " + describe_stats(c));
}

void criterion4() {
  bool ok = true;
  std::string rows;
  for (int s = 1; s <= 10; ++s) {
    const BoundResult r = max_dof(s);
    ok = ok && r.best <= Ratio(6, 5);
    rows += (s > 1 ? " " : "") + std::to_string(r.best.numerator()) + "/" + std::to_string(r.best.denominator());
  }
  const BoundResult five = max_dof(5);
  const AllocationProfile want{5, {4, 4, 4}, 2, 2, 2};
  const bool attained =
      five.best == Ratio(6, 5) && std::find(five.argmax.begin(), five.argmax.end(), want) != five.argmax.end();
  report(4, ok && attained, "exact bound <= 6/5 for S = 1..10, attained at S = 5 by d = (4,4,4), overlaps 2",
         "max ratios " + rows + (attained ? "; S=5 argmax contains (4,4,4;2,2,2)" : "; S=5 attainment missing"));
}

void criterion5() {
  bool ok = true;
  std::string detail;
  for (int i = 1; i <= 6; ++i) {
    const ChannelMatrix ch = construct_special_channel({SpecialKind::AcsDegenerate, i});
    const IndependenceReport rep = independence_margin(build_acs_ic3(ch, 1, Preconditions::Bypass), ch);
    const int implicated = (i - 1) / 2;
    std::string deficient;
    for (const auto& r : rep.receivers) {
      const bool dep = r.smallest_singular_value() < kDependentThreshold;
      if (dep) deficient += std::to_string(r.rx + 1);
      ok = ok && (dep == (r.rx == implicated));
      ok = ok && (r.rx == implicated || r.smallest_singular_value() > kIndependentThreshold);
    }
    detail += "expr " + std::to_string(i) + " -> rx " + (deficient.empty() ? "none" : deficient) + "; ";
  }
  double worst = INFINITY;
  int full = 0;
  for (int seed = 1; seed <= kChannels; ++seed) {
    const ChannelMatrix ch = sample_channel(static_cast<std::uint64_t>(seed), 3, 3);
    const IndependenceReport rep = independence_margin(build_acs_ic3(ch, static_cast<std::uint64_t>(seed)), ch);
    bool all = true;
    for (const auto& r : rep.receivers) {
      worst = std::min(worst, r.smallest_singular_value());
      all = all && r.numerical_rank == 10 && r.smallest_singular_value() > kIndependentThreshold;
    }
    full += all;
  }
  ok = ok && full == kChannels;
  report(5, ok, "rank deficiency exactly at the implicated receiver; generic channels full rank 10",
         detail + "generic: " + std::to_string(full) + "/100 full rank, min singular value " + fmt("%.3g", worst));
}

void criterion6() {
  std::mt19937_64 rng(20090219);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  double worst1 = 0.0;
  for (int n = 0; n < 10000;) {
    const double a = ang(rng), b = ang(rng);
    if (std::abs(std::sin(a - b)) <= 0.01) continue;
    worst1 = std::max(worst1, phasor_combination_residual(a, b, solve_phasor_combination(a, b)));
    ++n;
  }
  double worst2 = 0.0;
  for (int seed = 1; seed <= kChannels; ++seed) {
    const auto s = static_cast<std::uint64_t>(seed);
    const ContainmentDemo d = demonstrate_double_alignment(sample_channel(s, 3, 3), s);
    worst2 = std::max({worst2, d.containment_residual, d.alignment_residual});
  }
  report(6, worst1 < 1e-10 && worst2 < 1e-10, "phasor combination and double-alignment containment",
         "max combination residual " + fmt("%.3g", worst1) + " over 1e4 angle pairs; max containment residual " +
             fmt("%.3g", worst2) + " over 100 channels (tol 1e-10)");
}

void criterion7(const SlopeStats& acs) {
  const auto grid = default_snr_grid_db();
  int compared = 0;
  double worst = -INFINITY;
  for (int seed = 1; seed <= kChannels; ++seed) {
    if (acs.slopes[static_cast<std::size_t>(seed - 1)] < 1.17) continue;
    const ChannelMatrix ch = sample_channel(static_cast<std::uint64_t>(seed), 3, 3);
    const double b = estimate_dof([&](double snr) { return baseline_best_on_off(ch, snr).sum_rate; }, grid).slope;
    worst = std::max(worst, b);
    ++compared;
  }
  report(7, compared > 0 && worst <= 1.02, "circularly symmetric baseline slope <= 1.02 where ACS-IC3 >= 1.17",
         std::to_string(compared) + " channels compared, max baseline slope " + fmt("%.4f", worst));
}

void criterion8() {
  bool ok = true;
  std::size_t bytes = 0;
  for (const char* target : {"acs-ic3", "baseline", "x-channel", "uplinks"}) {
    for (auto format : {OutputFormat::JsonLines, OutputFormat::Csv}) {
      ExperimentConfig cfg;
      cfg.target = SweepTarget::parse(target);
      cfg.trials = 40;
      cfg.master_seed = 2009;
      cfg.snr_grid_db = default_snr_grid_db();
      cfg.format = format;
      const std::string first = run_sweep(cfg).output;
      ok = ok && run_sweep(cfg).output == first;
      cfg.threads = 4;
      ok = ok && run_sweep(cfg).output == first;
      bytes += first.size();
    }
  }
  report(8, ok, "sweeps byte-identical across repeats, serial and 4 threads",
         "4 schemes x 2 formats x 40 trials, " + std::to_string(bytes) + " bytes compared");
}

}  // namespace

int main() {
  criterion1();
  const SlopeStats acs = criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7(acs);
  criterion8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

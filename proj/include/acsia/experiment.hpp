// SPDX-License-Identifier: Apache-2.0
//
// Drivers behind the command-line tool. Each returns the report text and an
// exit status so the same code paths are testable without spawning a process.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acsia/channel.hpp"
#include "acsia/schemes.hpp"

namespace acsia {

enum ExitStatus : int { kExitOk = 0, kExitChecksFailed = 1, kExitUsage = 2 };

/// Alignment equalities count as satisfied below this residual.
inline constexpr double kAlignmentTolerance = 1e-10;

/// Name of the environment variable holding the default output directory.
inline constexpr const char* kOutputDirEnv = "ACSIA_OUTPUT_DIR";

struct ChannelSource {
  enum class Kind { Seed, Special, File };
  Kind kind = Kind::Seed;
  std::uint64_t seed = 1;
  SpecialChannel special;
  std::string path;

  ChannelMatrix load(int num_rx, int num_tx) const;
  nlohmann::ordered_json describe() const;
};

enum class OutputFormat { Csv, JsonLines };

/// Scheme under test for sweeps; Baseline is per-symbol circularly
/// symmetric signaling with the best on/off power control on a 3x3 channel.
struct SweepTarget {
  bool baseline = false;
  SchemeKind scheme = SchemeKind::AcsIc3;
  std::string name() const;
  static SweepTarget parse(std::string_view name);
};

struct ExperimentConfig {
  SweepTarget target;
  std::optional<ChannelSource> channel;  // sweeps: fixed channel for every trial
  std::vector<double> snr_grid_db;
  int trials = 1;
  std::uint64_t master_seed = 1;
  std::uint64_t builder_seed = 1;  // verify / demo only
  OutputFormat format = OutputFormat::JsonLines;
  int threads = 1;
  int s_min = 1;
  int s_max = 1;
};

struct RunResult {
  int status = kExitOk;
  std::string output;
};

/// Deterministic per-trial seed derived from (master, trial).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Rounds to 12 significant digits, the precision used in reports.
double round_sig12(double x);
std::string format_sig12(double x);

RunResult run_verify(const ExperimentConfig& cfg);
RunResult run_sweep(const ExperimentConfig& cfg);
RunResult run_bound(const ExperimentConfig& cfg);
RunResult run_demo_containment(const ExperimentConfig& cfg);

}  // namespace acsia

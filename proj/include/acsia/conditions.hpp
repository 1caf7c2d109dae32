// SPDX-License-Identifier: Apache-2.0
//
// Phase-sum feasibility and singularity conditions on constant channels.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acsia/channel.hpp"

namespace acsia {

/// An angle equals 0 mod pi (or 2*pi) iff it is within this many radians of
/// a multiple.
inline constexpr double kPhaseTolerance = 1e-9;
/// A magnitude ratio equals 1 iff |ratio - 1| is within this bound.
inline constexpr double kRatioTolerance = 1e-9;

enum class ConditionSet {
  PhaseAlignment,  // 3-user, S = 1 phase alignment
  AcsIc3,          // 3-user, 5-symbol asymmetric signaling
  Singular,        // 3-user channels limited to one degree of freedom
  XChannel,        // 2x2 X channel (also gates the cognitive variant)
  Uplinks,         // 2 receivers x 4 transmitters
};

std::string to_string(ConditionSet set);

enum class Requirement {
  NonZeroModPi,    // passes iff distance to k*pi > tolerance
  ZeroModPi,       // passes iff distance to k*pi <= tolerance
  SingularCycle,   // passes iff ratio == 1 and distance to 2k*pi <= tolerance
};

struct ConditionRecord {
  std::string id;
  std::string expression;
  double phase_sum = 0.0;
  std::optional<double> magnitude_ratio;
  double modulus = 0.0;
  double distance = 0.0;
  Requirement requirement = Requirement::NonZeroModPi;
  bool pass = false;
};

struct ConditionReport {
  ConditionSet set;
  std::vector<ConditionRecord> records;

  bool all_pass() const;
  bool any_pass() const;
  std::vector<std::string> failed() const;
};

/// Evaluates every condition of `set`. Throws std::invalid_argument when
/// the channel shape does not match (3x3, 2x2 or 2x4).
ConditionReport check_conditions(const ChannelMatrix& ch, ConditionSet set);

}  // namespace acsia

// SPDX-License-Identifier: Apache-2.0
//
// Numerical evidence that a constructed beamformer set does what it claims:
// alignment equalities hold, and at every receiver the desired receive images
// are independent of each other and of the (deduplicated) interference.

#pragma once

#include <vector>

#include "acsia/schemes.hpp"

namespace acsia {

/// Smallest singular value above this (unit-norm columns) counts as independent.
inline constexpr double kIndependentThreshold = 1e-6;
/// Smallest singular value below this counts as dependent.
inline constexpr double kDependentThreshold = 1e-10;

enum class RankStatus { Independent, Indeterminate, Dependent };

const char* to_string(RankStatus status);
RankStatus classify_rank(double smallest_singular_value);

/// Receive-side directions at one receiver, magnitudes dropped.
struct ReceiverColumns {
  int rx = 0;
  std::vector<StreamRef> desired;
  std::vector<StreamRef> interference;  // after deduplication by alignments at rx
  Mat desired_images;                   // U(phi[rx, t]) v for each desired stream
  Mat interference_basis;

  /// [desired | interference]
  Mat stacked() const;
};

/// Throws std::invalid_argument if the set and channel shapes disagree.
ReceiverColumns receiver_columns(const BeamformerSet& set, const ChannelMatrix& ch, int rx);

/// Largest Euclidean norm of lhs - rhs over the scheme's alignment equalities
/// (min over the sign for span equalities).
double alignment_residual(const BeamformerSet& set, const ChannelMatrix& ch);

struct ReceiverIndependence {
  int rx = 0;
  int rows = 0;
  int cols = 0;
  std::vector<double> singular_values;  // descending
  int numerical_rank = 0;               // count above kDependentThreshold
  /// Smallest principal angle between the desired and interference spans
  /// (radians); pi/2 when either side is empty.
  double min_principal_angle = 0.0;
  RankStatus status = RankStatus::Dependent;

  double smallest_singular_value() const {
    return singular_values.empty() ? 0.0 : singular_values.back();
  }
};

struct IndependenceReport {
  std::vector<ReceiverIndependence> receivers;
  bool all_independent() const;
};

IndependenceReport independence_margin(const BeamformerSet& set, const ChannelMatrix& ch);

}  // namespace acsia

// SPDX-License-Identifier: Apache-2.0
//
// Why a single signal vector cannot align with interference at both of its
// unintended receivers: any unit phasor is a real combination of two phasors
// at non-collinear angles, so double alignment drags the vector into the
// interference span at its own receiver.

#pragma once

#include <cstdint>
#include <vector>

#include "acsia/channel.hpp"

namespace acsia {

struct RealCombination {
  double c1;
  double c2;
};

/// Real (c1, c2) with 1 = c1 e^{j alpha} + c2 e^{j beta}. Throws
/// std::domain_error when |sin(alpha - beta)| <= kPhaseTolerance.
RealCombination solve_phasor_combination(double alpha, double beta);

/// |1 - c1 e^{j alpha} - c2 e^{j beta}|
double phasor_combination_residual(double alpha, double beta, RealCombination c);

struct ContainmentDemo {
  int extension = 0;
  std::vector<double> a;        // coefficients on transmitter 3's vectors at receiver 2
  std::vector<double> b;        // coefficients on transmitter 2's vectors at receiver 3
  std::vector<double> a_prime;  // c1 * a
  std::vector<double> b_prime;  // c2 * b
  RealCombination c{0.0, 0.0};
  double alpha = 0.0;
  double beta = 0.0;
  double alignment_residual = 0.0;    // how well the constructed vector aligns at receivers 2 and 3
  double containment_residual = 0.0;  // distance of its receiver-1 image from the predicted combination
};

struct ContainmentOptions {
  int extension = 5;
  int streams_tx2 = 3;
  int streams_tx3 = 3;
};

/// Builds a transmitter-1 vector that aligns with transmitter 3's
/// interference at receiver 2 and with transmitter 2's at receiver 3, then
/// measures how far its receiver-1 image is from the combination
/// sum a'_s U(phi13) V3[s] + sum b'_s U(phi12) V2[s].
///
/// Throws std::domain_error when the six-phase cycle has zero sine.
ContainmentDemo demonstrate_double_alignment(const ChannelMatrix& ch, std::uint64_t seed,
                                             ContainmentOptions opts = {});

}  // namespace acsia

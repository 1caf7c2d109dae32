// SPDX-License-Identifier: Apache-2.0
//
// Constant complex channel coefficients between transmitters and receivers.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "acsia/rotation.hpp"

namespace acsia {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Maps any finite angle into [0, 2*pi).
double canonical_phase(double phi);

/// Distance from x to the nearest integer multiple of `period`. Symmetric in x.
double distance_to_multiple(double x, double period);

/// Magnitudes and phases of H(r, t), the gain from transmitter t to
/// receiver r. Indices are zero-based; phases are stored in [0, 2*pi).
class ChannelMatrix {
 public:
  struct Entry {
    double magnitude = 0.0;
    double phase = 0.0;
    bool operator==(const Entry&) const = default;
  };

  ChannelMatrix(int num_rx, int num_tx);

  static ChannelMatrix from_complex(const Eigen::MatrixXcd& h);

  int num_rx() const { return num_rx_; }
  int num_tx() const { return num_tx_; }

  double magnitude(int r, int t) const { return at(r, t).magnitude; }
  double phase(int r, int t) const { return at(r, t).phase; }
  std::complex<double> coefficient(int r, int t) const;

  /// Throws std::invalid_argument for negative or non-finite magnitude.
  void set(int r, int t, double magnitude, double phase);
  void set(int r, int t, std::complex<double> h);

  bool fully_connected() const;

  /// h_rt * blockdiag(U(phi_rt)) over an S-symbol extension.
  Mat real_matrix(int r, int t, int extension) const;
  ExtendedRotation rotation(int r, int t, int extension) const {
    return {phase(r, t), extension};
  }

  bool operator==(const ChannelMatrix&) const = default;

 private:
  const Entry& at(int r, int t) const;
  Entry& at(int r, int t);

  int num_rx_;
  int num_tx_;
  std::vector<Entry> entries_;
};

/// Rayleigh magnitudes (|CN(0,1)|) and uniform phases, reproducible from
/// `seed`.
ChannelMatrix sample_channel(std::uint64_t seed, int num_tx, int num_rx);

struct Link {
  int rx;
  int tx;
};

/// A four-link cycle phi(p0) + phi(p1) - phi(m0) - phi(m1) on a 3-user
/// channel, together with its magnitude ratio h(p0)h(p1) / (h(m0)h(m1)).
struct PhaseCycle {
  Link plus[2];
  Link minus[2];

  double phase_sum(const ChannelMatrix& ch) const;
  double magnitude_ratio(const ChannelMatrix& ch) const;
};

/// The six cycles (index 1..6) whose phase sums decide feasibility of the
/// 5-symbol ACS scheme and whose complex ratios characterize the singular
/// channels. Cycles 2r-1 and 2r share minus[1] = (r, r), the direct link of
/// user r, and govern separability at receiver r.
const PhaseCycle& acs_cycle(int index);

enum class SpecialKind {
  PhaseExample,   // direct gains 1, cross gains j
  PlusMinusOne,   // direct gains 1, cross gains -1
  AllOnes,
  Singular,       // one complex cycle ratio equal to 1 (index 1..6)
  AcsDegenerate,  // one ACS feasibility phase sum equal to 0 mod pi (index 1..6)
};

struct SpecialChannel {
  SpecialKind kind = SpecialKind::AllOnes;
  int index = 0;  // used by Singular and AcsDegenerate only
};

/// Parses "phase-example", "plus-minus-one", "all-ones", "singular-<i>",
/// "acs-degenerate-<i>". Throws std::invalid_argument on unknown names.
SpecialChannel parse_special_channel(std::string_view name);
std::string to_string(const SpecialChannel& kind);

/// 3x3 named channels. The indexed kinds start from a fixed generic channel
/// and overwrite one direct coefficient so that exactly the selected
/// condition holds.
ChannelMatrix construct_special_channel(const SpecialChannel& kind);

}  // namespace acsia

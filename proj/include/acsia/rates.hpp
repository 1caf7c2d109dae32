// SPDX-License-Identifier: Apache-2.0
//
// Zero-forcing rates of aligned schemes and their high-SNR slopes.
//
// Conventions: unit-variance circularly symmetric complex noise, i.e. 1/2 per
// real dimension; each transmitter splits its block budget S*SNR equally over
// its streams; rates are in bits per complex channel use.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acsia/schemes.hpp"
#include "acsia/verify.hpp"

namespace acsia {

inline constexpr double kRealNoiseVariance = 0.5;

class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(const std::string& what, int rx) : std::runtime_error(what), rx_(rx) {}
  int receiver() const { return rx_; }

 private:
  int rx_;
};

struct StreamCombiner {
  StreamRef stream;
  int rx = 0;
  Vec combiner;  // unit norm, positive projection onto the stream's own image
};

/// One combiner per stream, orthogonal to every other effective column at
/// its receiver. Throws RankDeficientError unless every receiver is
/// classified independent.
std::vector<StreamCombiner> zf_receive(const BeamformerSet& set, const ChannelMatrix& ch);

struct StreamRate {
  StreamRef stream;
  int user = 0;
  double zf_gain = 0.0;  // w^T U(phi) v, magnitude excluded
  double residual_interference = 0.0;
  double sinr = 0.0;
  double rate_per_block = 0.0;  // bits per S-symbol block
};

struct RateReport {
  SchemeKind scheme;
  int extension = 1;
  double snr = 0.0;
  std::vector<StreamRate> streams;
  std::vector<double> user_rates;  // bits per complex channel use, indexed by user
  double sum_rate = 0.0;           // bits per complex channel use
};

/// Rate evaluation with precomputed combiners (they do not depend on SNR).
RateReport sum_rate(const BeamformerSet& set, const ChannelMatrix& ch,
                    const std::vector<StreamCombiner>& combiners, double snr);
/// Throws std::invalid_argument for snr <= 0.
RateReport sum_rate(const BeamformerSet& set, const ChannelMatrix& ch, double snr);

double db_to_linear(double db);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct DofEstimate {
  std::vector<double> snr_db;
  std::vector<double> sum_rates;
  double slope = 0.0;  // bits per channel use per doubling of SNR
  double intercept = 0.0;
  double residual = 0.0;
};

inline constexpr double kMinGridDb = 40.0;
inline constexpr double kMaxGridDb = 140.0;

/// 60, 70, ..., 110 dB.
std::vector<double> default_snr_grid_db();

/// Throws std::invalid_argument unless the grid has >= 4 strictly increasing
/// points inside [40, 140] dB.
void validate_snr_grid(const std::vector<double>& grid_db);

/// Least-squares slope of the sum rate against log2(SNR).
DofEstimate estimate_dof(const BeamformerSet& set, const ChannelMatrix& ch,
                         const std::vector<double>& grid_db);
DofEstimate estimate_dof(SchemeKind kind, const ChannelMatrix& ch, std::uint64_t seed,
                         const std::vector<double>& grid_db);
/// Generic form: `rate_at(snr_linear)` gives the sum rate.
DofEstimate estimate_dof(const std::function<double(double)>& rate_at, const std::vector<double>& grid_db);

/// Per-symbol circularly symmetric Gaussian signaling with interference
/// treated as noise: R_k = log2(1 + |H_kk|^2 p_k / (1 + sum_{l != k} |H_kl|^2 p_l)).
/// Throws std::invalid_argument for negative powers or a non-square channel.
std::vector<double> baseline_circsym(const ChannelMatrix& ch, const std::vector<double>& powers);

struct BaselineRate {
  double sum_rate = 0.0;
  std::vector<double> user_rates;
  std::vector<bool> active;
};

/// Best sum rate over on/off power control (each user at 0 or SNR).
BaselineRate baseline_best_on_off(const ChannelMatrix& ch, double snr);

/// Time sharing of interference-free single-user links, 1/K of the time each.
double baseline_tdma(const ChannelMatrix& ch, double snr);

}  // namespace acsia

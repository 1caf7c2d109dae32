// SPDX-License-Identifier: Apache-2.0

#include "acsia/rates.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace acsia {

std::vector<StreamCombiner> zf_receive(const BeamformerSet& set, const ChannelMatrix& ch) {
  const IndependenceReport indep = independence_margin(set, ch);
  std::vector<StreamCombiner> out;
  for (int rx = 0; rx < set.num_rx(); ++rx) {
    const auto& r = indep.receivers[static_cast<std::size_t>(rx)];
    if (r.status != RankStatus::Independent)
      throw RankDeficientError("zf_receive: no interference-free null space at receiver " +
                                   std::to_string(rx + 1) + " (smallest singular value " +
                                   std::to_string(r.smallest_singular_value()) + ")",
                               rx);
    const ReceiverColumns cols = receiver_columns(set, ch, rx);
    const Mat a = cols.stacked();
    // rows of the pseudo-inverse are orthogonal to every other column
    const Mat pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    for (std::size_t k = 0; k < cols.desired.size(); ++k) {
      Vec w = pinv.row(static_cast<Eigen::Index>(k)).transpose();
      w.normalize();
      if (w.dot(a.col(static_cast<Eigen::Index>(k))) < 0.0) w = -w;
      out.push_back({cols.desired[k], rx, std::move(w)});
    }
  }
  return out;
}

RateReport sum_rate(const BeamformerSet& set, const ChannelMatrix& ch,
                    const std::vector<StreamCombiner>& combiners, double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw std::invalid_argument("sum_rate: snr must be positive");
  const int ext = set.extension();
  const auto power = [&](StreamRef s) { return set.power_fraction(s) * ext * snr; };
  const auto gain = [&](const Vec& w, int rx, StreamRef s) {
    return w.dot(ch.rotation(rx, s.tx, ext).apply(set.column(s)));
  };

  RateReport report;
  report.scheme = set.scheme();
  report.extension = ext;
  report.snr = snr;
  report.user_rates.assign(static_cast<std::size_t>(set.num_users()), 0.0);
  const auto streams = set.all_streams();
  for (const auto& c : combiners) {
    StreamRate sr;
    sr.stream = c.stream;
    sr.user = set.info(c.stream).user;
    sr.zf_gain = gain(c.combiner, c.rx, c.stream);
    const double h = ch.magnitude(c.rx, c.stream.tx);
    const double desired = power(c.stream) * h * h * sr.zf_gain * sr.zf_gain;
    for (const StreamRef u : streams) {
      if (u == c.stream || set.cancelled_at(c.rx, u)) continue;
      const double hu = ch.magnitude(c.rx, u.tx);
      const double g = gain(c.combiner, c.rx, u);
      sr.residual_interference += power(u) * hu * hu * g * g;
    }
    sr.sinr = desired / (kRealNoiseVariance + sr.residual_interference);
    sr.rate_per_block = 0.5 * std::log2(1.0 + sr.sinr);
    report.user_rates[static_cast<std::size_t>(sr.user)] += sr.rate_per_block / ext;
    report.sum_rate += sr.rate_per_block;
    report.streams.push_back(sr);
  }
  report.sum_rate /= ext;
  return report;
}

RateReport sum_rate(const BeamformerSet& set, const ChannelMatrix& ch, double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw std::invalid_argument("sum_rate: snr must be positive");
  return sum_rate(set, ch, zf_receive(set, ch), snr);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += e * e;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

std::vector<double> default_snr_grid_db() { return {60.0, 70.0, 80.0, 90.0, 100.0, 110.0}; }

void validate_snr_grid(const std::vector<double>& grid_db) {
  if (grid_db.size() < 4) throw std::invalid_argument("snr grid needs at least 4 points");
  for (std::size_t i = 0; i < grid_db.size(); ++i) {
    const double g = grid_db[i];
    if (!std::isfinite(g) || g < kMinGridDb || g > kMaxGridDb)
      throw std::invalid_argument("snr grid points must lie in [40, 140] dB");
    if (i > 0 && !(g > grid_db[i - 1])) throw std::invalid_argument("snr grid must be strictly increasing");
  }
}

DofEstimate estimate_dof(const std::function<double(double)>& rate_at, const std::vector<double>& grid_db) {
  validate_snr_grid(grid_db);
  DofEstimate est;
  est.snr_db = grid_db;
  std::vector<double> x;
  for (const double db : grid_db) {
    // log2(10^(db/10)) without the round trip through pow
    x.push_back(db / 10.0 * std::log2(10.0));
    est.sum_rates.push_back(rate_at(db_to_linear(db)));
  }
  const LineFit fit = fit_line(x, est.sum_rates);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.residual = fit.rms_residual;
  return est;
}

DofEstimate estimate_dof(const BeamformerSet& set, const ChannelMatrix& ch, const std::vector<double>& grid_db) {
  validate_snr_grid(grid_db);
  const auto combiners = zf_receive(set, ch);
  return estimate_dof([&](double snr) { return sum_rate(set, ch, combiners, snr).sum_rate; }, grid_db);
}

DofEstimate estimate_dof(SchemeKind kind, const ChannelMatrix& ch, std::uint64_t seed,
                         const std::vector<double>& grid_db) {
  return estimate_dof(build_scheme(kind, ch, seed), ch, grid_db);
}

std::vector<double> baseline_circsym(const ChannelMatrix& ch, const std::vector<double>& powers) {
  const int k = ch.num_rx();
  if (ch.num_tx() != k) throw std::invalid_argument("baseline_circsym: channel must be square");
  if (static_cast<int>(powers.size()) != k) throw std::invalid_argument("baseline_circsym: one power per user");
  for (const double p : powers)
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("baseline_circsym: powers must be >= 0");
  std::vector<double> rates(static_cast<std::size_t>(k));
  for (int u = 0; u < k; ++u) {
    double interference = 1.0;
    for (int l = 0; l < k; ++l) {
      if (l == u) continue;
      interference += std::norm(ch.coefficient(u, l)) * powers[static_cast<std::size_t>(l)];
    }
    const double signal = std::norm(ch.coefficient(u, u)) * powers[static_cast<std::size_t>(u)];
    rates[static_cast<std::size_t>(u)] = std::log2(1.0 + signal / interference);
  }
  return rates;
}

BaselineRate baseline_best_on_off(const ChannelMatrix& ch, double snr) {
  if (!(snr >= 0.0)) throw std::invalid_argument("baseline_best_on_off: snr must be >= 0");
  const int k = ch.num_rx();
  BaselineRate best;
  best.sum_rate = -1.0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<double> p(static_cast<std::size_t>(k), 0.0);
    std::vector<bool> active(static_cast<std::size_t>(k), false);
    for (int u = 0; u < k; ++u)
      if (mask & (1u << u)) {
        p[static_cast<std::size_t>(u)] = snr;
        active[static_cast<std::size_t>(u)] = true;
      }
    auto rates = baseline_circsym(ch, p);
    const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
    if (total > best.sum_rate) best = {total, std::move(rates), std::move(active)};
  }
  return best;
}

double baseline_tdma(const ChannelMatrix& ch, double snr) {
  const int k = ch.num_rx();
  double total = 0.0;
  for (int u = 0; u < k; ++u) total += std::log2(1.0 + std::norm(ch.coefficient(u, u)) * snr);
  return total / k;
}

}  // namespace acsia

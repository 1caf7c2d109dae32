// SPDX-License-Identifier: Apache-2.0

#include "acsia/channel.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace acsia {

double canonical_phase(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("canonical_phase: non-finite angle");
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2*pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double distance_to_multiple(double x, double period) {
  return std::abs(std::remainder(x, period));
}

ChannelMatrix::ChannelMatrix(int num_rx, int num_tx)
    : num_rx_(num_rx), num_tx_(num_tx) {
  if (num_rx < 1 || num_tx < 1) throw std::invalid_argument("ChannelMatrix: dimensions must be >= 1");
  entries_.resize(static_cast<std::size_t>(num_rx) * static_cast<std::size_t>(num_tx));
}

ChannelMatrix ChannelMatrix::from_complex(const Eigen::MatrixXcd& h) {
  ChannelMatrix ch(static_cast<int>(h.rows()), static_cast<int>(h.cols()));
  for (int r = 0; r < ch.num_rx(); ++r)
    for (int t = 0; t < ch.num_tx(); ++t) ch.set(r, t, h(r, t));
  return ch;
}

const ChannelMatrix::Entry& ChannelMatrix::at(int r, int t) const {
  if (r < 0 || r >= num_rx_ || t < 0 || t >= num_tx_) throw std::out_of_range("ChannelMatrix: link index");
  return entries_[static_cast<std::size_t>(r) * num_tx_ + t];
}

ChannelMatrix::Entry& ChannelMatrix::at(int r, int t) {
  return const_cast<Entry&>(std::as_const(*this).at(r, t));
}

std::complex<double> ChannelMatrix::coefficient(int r, int t) const {
  return std::polar(magnitude(r, t), phase(r, t));
}

void ChannelMatrix::set(int r, int t, double magnitude, double phase) {
  if (!std::isfinite(magnitude) || magnitude < 0.0)
    throw std::invalid_argument("ChannelMatrix: magnitude must be finite and >= 0");
  at(r, t) = {magnitude, canonical_phase(phase)};
}

void ChannelMatrix::set(int r, int t, std::complex<double> h) {
  set(r, t, std::abs(h), std::abs(h) > 0.0 ? std::arg(h) : 0.0);
}

bool ChannelMatrix::fully_connected() const {
  for (const auto& e : entries_)
    if (!(e.magnitude > 0.0)) return false;
  return true;
}

Mat ChannelMatrix::real_matrix(int r, int t, int extension) const {
  return magnitude(r, t) * rotation(r, t, extension).matrix();
}

ChannelMatrix sample_channel(std::uint64_t seed, int num_tx, int num_rx) {
  ChannelMatrix ch(num_rx, num_tx);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  for (int r = 0; r < num_rx; ++r) {
    for (int t = 0; t < num_tx; ++t) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      ch.set(r, t, std::hypot(re, im), uniform(rng));
    }
  }
  return ch;
}

double PhaseCycle::phase_sum(const ChannelMatrix& ch) const {
  return ch.phase(plus[0].rx, plus[0].tx) + ch.phase(plus[1].rx, plus[1].tx) -
         ch.phase(minus[0].rx, minus[0].tx) - ch.phase(minus[1].rx, minus[1].tx);
}

double PhaseCycle::magnitude_ratio(const ChannelMatrix& ch) const {
  return ch.magnitude(plus[0].rx, plus[0].tx) * ch.magnitude(plus[1].rx, plus[1].tx) /
         (ch.magnitude(minus[0].rx, minus[0].tx) * ch.magnitude(minus[1].rx, minus[1].tx));
}

const PhaseCycle& acs_cycle(int index) {
  static const std::array<PhaseCycle, 6> cycles = {{
      {{{0, 2}, {1, 0}}, {{1, 2}, {0, 0}}},
      {{{0, 1}, {2, 0}}, {{2, 1}, {0, 0}}},
      {{{1, 0}, {2, 1}}, {{2, 0}, {1, 1}}},
      {{{1, 2}, {0, 1}}, {{0, 2}, {1, 1}}},
      {{{2, 1}, {0, 2}}, {{0, 1}, {2, 2}}},
      {{{2, 0}, {1, 2}}, {{1, 0}, {2, 2}}},
  }};
  if (index < 1 || index > 6) throw std::out_of_range("acs_cycle: index must be in 1..6");
  return cycles[static_cast<std::size_t>(index - 1)];
}

namespace {

constexpr std::uint64_t kSpecialBaseSeed = 20090219;

int parse_index(std::string_view text, std::string_view name) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1 || value > 6)
    throw std::invalid_argument("special channel '" + std::string(name) + "': index must be 1..6");
  return value;
}

ChannelMatrix uniform_channel(std::complex<double> direct, std::complex<double> cross) {
  Eigen::MatrixXcd h(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int t = 0; t < 3; ++t) h(r, t) = r == t ? direct : cross;
  return ChannelMatrix::from_complex(h);
}

}  // namespace

SpecialChannel parse_special_channel(std::string_view name) {
  if (name == "phase-example") return {SpecialKind::PhaseExample, 0};
  if (name == "plus-minus-one") return {SpecialKind::PlusMinusOne, 0};
  if (name == "all-ones") return {SpecialKind::AllOnes, 0};
  constexpr std::string_view singular = "singular-";
  constexpr std::string_view degenerate = "acs-degenerate-";
  if (name.starts_with(singular))
    return {SpecialKind::Singular, parse_index(name.substr(singular.size()), name)};
  if (name.starts_with(degenerate))
    return {SpecialKind::AcsDegenerate, parse_index(name.substr(degenerate.size()), name)};
  throw std::invalid_argument("unknown special channel '" + std::string(name) + "'");
}

std::string to_string(const SpecialChannel& kind) {
  switch (kind.kind) {
    case SpecialKind::PhaseExample: return "phase-example";
    case SpecialKind::PlusMinusOne: return "plus-minus-one";
    case SpecialKind::AllOnes: return "all-ones";
    case SpecialKind::Singular: return "singular-" + std::to_string(kind.index);
    case SpecialKind::AcsDegenerate: return "acs-degenerate-" + std::to_string(kind.index);
  }
  return "unknown";
}

ChannelMatrix construct_special_channel(const SpecialChannel& kind) {
  using namespace std::complex_literals;
  switch (kind.kind) {
    case SpecialKind::PhaseExample: return uniform_channel(1.0, 1.0i);
    case SpecialKind::PlusMinusOne: return uniform_channel(1.0, -1.0);
    case SpecialKind::AllOnes: return uniform_channel(1.0, 1.0);
    case SpecialKind::Singular:
    case SpecialKind::AcsDegenerate: break;
  }
  if (kind.index < 1 || kind.index > 6) throw std::invalid_argument("special channel index must be 1..6");

  ChannelMatrix ch = sample_channel(kSpecialBaseSeed, 3, 3);
  const PhaseCycle& cyc = acs_cycle(kind.index);
  const Link d = cyc.minus[1];
  const Link m = cyc.minus[0];
  if (kind.kind == SpecialKind::Singular) {
    // H(d) = H(p0) H(p1) / H(m0) makes the complex cycle ratio exactly 1
    const auto h = ch.coefficient(cyc.plus[0].rx, cyc.plus[0].tx) *
                   ch.coefficient(cyc.plus[1].rx, cyc.plus[1].tx) / ch.coefficient(m.rx, m.tx);
    ch.set(d.rx, d.tx, h);
  } else {
    // keep the magnitude generic, force the phase sum to 0 mod 2*pi
    const double phi = ch.phase(cyc.plus[0].rx, cyc.plus[0].tx) +
                       ch.phase(cyc.plus[1].rx, cyc.plus[1].tx) - ch.phase(m.rx, m.tx);
    ch.set(d.rx, d.tx, ch.magnitude(d.rx, d.tx), phi);
  }
  return ch;
}

}  // namespace acsia

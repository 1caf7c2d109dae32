// SPDX-License-Identifier: Apache-2.0

#include "acsia/schemes.hpp"

#include <random>

namespace acsia {

namespace {

// Gaussian columns, orthonormalized together. The spans are what matter for
// alignment; orthonormal free columns keep the receive matrices well scaled.
Mat random_orthonormal(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(rows, cols);
  // fix the sign so that R has a positive diagonal (q = g R^-1 up to scale)
  const Mat r = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

void require(const ChannelMatrix& ch, ConditionSet set, Preconditions pre, std::string_view scheme) {
  if (pre == Preconditions::Bypass) return;
  const ConditionReport report = check_conditions(ch, set);
  if (report.all_pass()) return;
  std::string msg = std::string(scheme) + ": channel is infeasible, failed";
  for (const auto& id : report.failed()) msg += " " + id;
  throw InfeasibleError(msg, report.failed());
}

void require_shape(const ChannelMatrix& ch, int rx, int tx, std::string_view scheme) {
  if (ch.num_rx() != rx || ch.num_tx() != tx)
    throw std::invalid_argument(std::string(scheme) + ": expected a " + std::to_string(rx) + "x" +
                                std::to_string(tx) + " channel");
}

// phi_rt with 1-based indices
auto phase_of(const ChannelMatrix& ch) {
  return [&ch](int r, int t) { return ch.phase(r - 1, t - 1); };
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::PhaseAlignment: return "phase-align";
    case SchemeKind::AcsIc3: return "acs-ic3";
    case SchemeKind::XChannel: return "x-channel";
    case SchemeKind::CognitiveX: return "cognitive-x";
    case SchemeKind::Uplinks: return "uplinks";
  }
  return "unknown";
}

SchemeKind parse_scheme(std::string_view name) {
  for (auto k : {SchemeKind::PhaseAlignment, SchemeKind::AcsIc3, SchemeKind::XChannel,
                 SchemeKind::CognitiveX, SchemeKind::Uplinks})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

const SchemeDescriptor& describe(SchemeKind kind) {
  static const SchemeDescriptor table[] = {
      {SchemeKind::PhaseAlignment, 1, 3, 3, {1, 1, 1}, {3, 2}, ConditionSet::PhaseAlignment},
      {SchemeKind::AcsIc3, 5, 3, 3, {4, 4, 4}, {6, 5}, ConditionSet::AcsIc3},
      {SchemeKind::XChannel, 3, 2, 2, {4, 4}, {4, 3}, ConditionSet::XChannel},
      {SchemeKind::CognitiveX, 1, 2, 2, {2, 1}, {3, 2}, ConditionSet::XChannel},
      {SchemeKind::Uplinks, 3, 2, 4, {2, 2, 2, 2}, {4, 3}, ConditionSet::Uplinks},
  };
  return table[static_cast<int>(kind)];
}

BeamformerSet::BeamformerSet(SchemeKind scheme, int extension, int num_rx, std::vector<Mat> precoders,
                             std::vector<std::vector<StreamInfo>> streams,
                             std::vector<std::string> user_labels)
    : scheme_(scheme),
      extension_(extension),
      num_rx_(num_rx),
      precoders_(std::move(precoders)),
      streams_(std::move(streams)),
      user_labels_(std::move(user_labels)) {
  if (extension_ < 1) throw std::invalid_argument("BeamformerSet: extension must be >= 1");
  if (streams_.size() != precoders_.size())
    throw std::invalid_argument("BeamformerSet: stream table does not match transmitters");
  for (std::size_t t = 0; t < precoders_.size(); ++t) {
    if (precoders_[t].rows() != dim())
      throw std::invalid_argument("BeamformerSet: precoder rows must equal 2S");
    if (static_cast<std::size_t>(precoders_[t].cols()) != streams_[t].size())
      throw std::invalid_argument("BeamformerSet: stream table does not match precoder columns");
    for (const auto& s : streams_[t])
      if (s.rx < 0 || s.rx >= num_rx_ || s.user < 0 || s.user >= num_users())
        throw std::invalid_argument("BeamformerSet: stream receiver or user out of range");
  }
}

const StreamInfo& BeamformerSet::info(StreamRef s) const {
  return streams_.at(static_cast<std::size_t>(s.tx)).at(static_cast<std::size_t>(s.column));
}

int BeamformerSet::total_streams() const {
  int n = 0;
  for (const auto& p : precoders_) n += static_cast<int>(p.cols());
  return n;
}

std::vector<StreamRef> BeamformerSet::all_streams() const {
  std::vector<StreamRef> out;
  for (int t = 0; t < num_tx(); ++t)
    for (int c = 0; c < streams(t); ++c) out.push_back({t, c});
  return out;
}

double BeamformerSet::power_fraction(StreamRef s) const {
  return 1.0 / static_cast<double>(streams(s.tx));
}

void BeamformerSet::set_cognition(Cognition c, std::vector<Cancellation> cancellations) {
  cognition_ = c;
  cancellations_ = std::move(cancellations);
}

bool BeamformerSet::cancelled_at(int rx, StreamRef s) const {
  for (const auto& c : cancellations_)
    if (c.rx == rx && c.stream == s) return true;
  return false;
}

BeamformerSet BeamformerSet::with_column(StreamRef s, const Vec& v) const {
  if (v.size() != dim()) throw std::invalid_argument("with_column: dimension mismatch");
  BeamformerSet copy = *this;
  copy.precoders_.at(static_cast<std::size_t>(s.tx)).col(s.column) = v;
  return copy;
}

bool BeamformerSet::operator==(const BeamformerSet& other) const {
  if (scheme_ != other.scheme_ || extension_ != other.extension_ || num_rx_ != other.num_rx_ ||
      precoders_.size() != other.precoders_.size() || cognition_ != other.cognition_)
    return false;
  for (std::size_t t = 0; t < precoders_.size(); ++t) {
    if (precoders_[t].cols() != other.precoders_[t].cols()) return false;
    if (precoders_[t] != other.precoders_[t]) return false;
  }
  return true;
}

BeamformerSet build_phase_alignment(const ChannelMatrix& ch, Preconditions pre) {
  require_shape(ch, 3, 3, "phase-align");
  require(ch, ConditionSet::PhaseAlignment, pre, "phase-align");
  const auto phi = phase_of(ch);

  // The cyclic phase sum is 0 or pi mod 2*pi, so U(sum) = +-I and every real
  // vector is an eigenvector; pick the real axis.
  Vec v1(2);
  v1 << 1.0, 0.0;
  const Vec v3 = ExtendedRotation(phi(2, 1) - phi(2, 3), 1).apply(v1);
  const Vec v2 = ExtendedRotation(phi(1, 3) - phi(1, 2), 1).apply(v3);

  std::vector<Mat> precoders = {Mat(v1), Mat(v2), Mat(v3)};
  BeamformerSet set(SchemeKind::PhaseAlignment, 1, 3, std::move(precoders),
                    {{{0, 0}}, {{1, 1}}, {{2, 2}}}, {"user1", "user2", "user3"});
  set.add_alignment({0, {1, 0}, {2, 0}, false});
  set.add_alignment({1, {2, 0}, {0, 0}, false});
  set.add_alignment({2, {1, 0}, {0, 0}, true});
  return set;
}

BeamformerSet build_acs_ic3(const ChannelMatrix& ch, std::uint64_t seed, Preconditions pre) {
  require_shape(ch, 3, 3, "acs-ic3");
  if (pre == Preconditions::Check && !ch.fully_connected())
    throw InfeasibleError("acs-ic3: channel is not fully connected", {"fully-connected"});
  require(ch, ConditionSet::AcsIc3, pre, "acs-ic3");
  const auto phi = phase_of(ch);
  constexpr int kExt = 5;
  const auto rot = [](double a) { return ExtendedRotation(a, kExt); };

  std::mt19937_64 rng(seed);
  std::vector<Mat> v(3, Mat(2 * kExt, 4));
  for (auto& vt : v) vt.leftCols(2) = random_orthonormal(rng, 2 * kExt, 2);

  // columns 0,1 free; 2,3 derived. Receiver 1 sees V2[2] on V3[0] and V3[3]
  // on V2[1], and cyclically for receivers 2 and 3.
  v[1].col(2) = rot(phi(1, 3) - phi(1, 2)).apply(Vec(v[2].col(0)));
  v[2].col(3) = rot(phi(1, 2) - phi(1, 3)).apply(Vec(v[1].col(1)));
  v[2].col(2) = rot(phi(2, 1) - phi(2, 3)).apply(Vec(v[0].col(0)));
  v[0].col(3) = rot(phi(2, 3) - phi(2, 1)).apply(Vec(v[2].col(1)));
  v[0].col(2) = rot(phi(3, 2) - phi(3, 1)).apply(Vec(v[1].col(0)));
  v[1].col(3) = rot(phi(3, 1) - phi(3, 2)).apply(Vec(v[0].col(1)));
  for (auto& vt : v) vt.colwise().normalize();

  std::vector<std::vector<StreamInfo>> streams(3);
  for (int t = 0; t < 3; ++t) streams[t].assign(4, StreamInfo{t, t});
  BeamformerSet set(SchemeKind::AcsIc3, kExt, 3, std::move(v), std::move(streams),
                    {"user1", "user2", "user3"});
  set.add_alignment({0, {1, 2}, {2, 0}});
  set.add_alignment({0, {2, 3}, {1, 1}});
  set.add_alignment({1, {2, 2}, {0, 0}});
  set.add_alignment({1, {0, 3}, {2, 1}});
  set.add_alignment({2, {0, 2}, {1, 0}});
  set.add_alignment({2, {1, 3}, {0, 1}});
  return set;
}

BeamformerSet build_x_channel(const ChannelMatrix& ch, std::uint64_t seed, Preconditions pre) {
  require_shape(ch, 2, 2, "x-channel");
  require(ch, ConditionSet::XChannel, pre, "x-channel");
  const auto phi = phase_of(ch);
  constexpr int kExt = 3;

  // transmitter 1 carries [V11 | V21], transmitter 2 carries [V12 | V22];
  // V_ij is the precoder of message W_ij (transmitter j to receiver i)
  std::mt19937_64 rng(seed);
  Mat tx1 = random_orthonormal(rng, 2 * kExt, 4);
  Mat tx2(2 * kExt, 4);
  tx2.leftCols(2) = ExtendedRotation(phi(2, 1) - phi(2, 2), kExt).apply(Mat(tx1.leftCols(2)));
  tx2.rightCols(2) = ExtendedRotation(phi(1, 1) - phi(1, 2), kExt).apply(Mat(tx1.rightCols(2)));
  tx2.colwise().normalize();

  enum { W11, W12, W21, W22 };
  std::vector<std::vector<StreamInfo>> streams = {
      {{0, W11}, {0, W11}, {1, W21}, {1, W21}},
      {{0, W12}, {0, W12}, {1, W22}, {1, W22}},
  };
  BeamformerSet set(SchemeKind::XChannel, kExt, 2, {tx1, tx2}, std::move(streams),
                    {"W11", "W12", "W21", "W22"});
  for (int c = 0; c < 2; ++c) {
    set.add_alignment({1, {1, c}, {0, c}});
    set.add_alignment({0, {1, 2 + c}, {0, 2 + c}});
  }
  return set;
}

BeamformerSet build_cognitive_x(const ChannelMatrix& ch, Cognition cognition, Preconditions pre) {
  require_shape(ch, 2, 2, "cognitive-x");
  if (cognition == Cognition::None)
    throw std::invalid_argument("cognitive-x: cognition must be receiver or transmitter");
  // The aligned pair is separable at receiver 2 exactly when the X-channel
  // phase condition holds.
  require(ch, ConditionSet::XChannel, pre, "cognitive-x");
  const auto phi = phase_of(ch);

  Vec v21(2), v11(2);
  v21 << 1.0, 0.0;
  v11 << 0.0, 1.0;
  const Vec v22 = ExtendedRotation(phi(1, 1) - phi(1, 2), 1).apply(v21);

  Mat tx1(2, 2);
  tx1 << v11, v21;
  enum { W11, W12, W21, W22 };
  std::vector<std::vector<StreamInfo>> streams = {{{0, W11}, {1, W21}}, {{1, W22}}};
  BeamformerSet set(SchemeKind::CognitiveX, 1, 2, {tx1, Mat(v22)}, std::move(streams),
                    {"W11", "W12", "W21", "W22"});
  set.add_alignment({0, {1, 0}, {0, 1}});
  set.set_cognition(cognition, {{1, {0, 0}}});
  return set;
}

BeamformerSet build_uplinks(const ChannelMatrix& ch, std::uint64_t seed, Preconditions pre) {
  require_shape(ch, 2, 4, "uplinks");
  require(ch, ConditionSet::Uplinks, pre, "uplinks");
  const auto phi = phase_of(ch);
  constexpr int kExt = 3;

  std::mt19937_64 rng(seed);
  Mat v1 = random_orthonormal(rng, 2 * kExt, 2);
  Mat v3 = random_orthonormal(rng, 2 * kExt, 2);
  Mat v2 = ExtendedRotation(phi(2, 1) - phi(2, 2), kExt).apply(v1);
  Mat v4 = ExtendedRotation(phi(1, 3) - phi(1, 4), kExt).apply(v3);
  v2.colwise().normalize();
  v4.colwise().normalize();

  std::vector<std::vector<StreamInfo>> streams = {
      {{0, 0}, {0, 0}}, {{0, 1}, {0, 1}}, {{1, 2}, {1, 2}}, {{1, 3}, {1, 3}}};
  BeamformerSet set(SchemeKind::Uplinks, kExt, 2, {v1, v2, v3, v4}, std::move(streams),
                    {"user1", "user2", "user3", "user4"});
  for (int c = 0; c < 2; ++c) {
    set.add_alignment({1, {1, c}, {0, c}});
    set.add_alignment({0, {3, c}, {2, c}});
  }
  return set;
}

BeamformerSet build_scheme(SchemeKind kind, const ChannelMatrix& ch, std::uint64_t seed,
                           Preconditions pre) {
  switch (kind) {
    case SchemeKind::PhaseAlignment: return build_phase_alignment(ch, pre);
    case SchemeKind::AcsIc3: return build_acs_ic3(ch, seed, pre);
    case SchemeKind::XChannel: return build_x_channel(ch, seed, pre);
    case SchemeKind::CognitiveX: return build_cognitive_x(ch, Cognition::Receiver, pre);
    case SchemeKind::Uplinks: return build_uplinks(ch, seed, pre);
  }
  throw std::invalid_argument("build_scheme: unknown scheme");
}

}  // namespace acsia

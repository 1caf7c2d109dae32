// SPDX-License-Identifier: Apache-2.0
//
// Closed-form alignment constructions over real-lifted symbol extensions.
//
// Every scheme is described by real precoders (one 2S x d_t matrix per
// transmitter, unit-norm columns) plus the list of alignment equalities it
// enforces. Receivers use those equalities to deduplicate the interference
// basis; the verify and rates modules never need to know which scheme built
// the set.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "acsia/channel.hpp"
#include "acsia/conditions.hpp"

namespace acsia {

enum class SchemeKind { PhaseAlignment, AcsIc3, XChannel, CognitiveX, Uplinks };

std::string_view to_string(SchemeKind kind);
/// "phase-align", "acs-ic3", "x-channel", "cognitive-x", "uplinks".
SchemeKind parse_scheme(std::string_view name);

struct SchemeDescriptor {
  SchemeKind scheme;
  int extension;
  int num_rx;
  int num_tx;
  std::vector<int> streams_per_tx;
  boost::rational<long long> claimed_dof;
  ConditionSet conditions;
};

const SchemeDescriptor& describe(SchemeKind kind);

struct StreamRef {
  int tx;
  int column;
  bool operator==(const StreamRef&) const = default;
};

/// Where a stream is decoded and which message it carries.
struct StreamInfo {
  int rx;
  int user;
};

/// U(phi[rx, lhs.tx]) * V[lhs] == U(phi[rx, rhs.tx]) * V[rhs], optionally
/// only up to sign (span equality of single vectors).
struct AlignmentConstraint {
  int rx;
  StreamRef lhs;
  StreamRef rhs;
  bool up_to_sign = false;
};

enum class Cognition { None, Receiver, Transmitter };

class BeamformerSet {
 public:
  BeamformerSet(SchemeKind scheme, int extension, int num_rx, std::vector<Mat> precoders,
                std::vector<std::vector<StreamInfo>> streams, std::vector<std::string> user_labels);

  SchemeKind scheme() const { return scheme_; }
  int extension() const { return extension_; }
  int dim() const { return 2 * extension_; }
  int num_tx() const { return static_cast<int>(precoders_.size()); }
  int num_rx() const { return num_rx_; }
  int num_users() const { return static_cast<int>(user_labels_.size()); }

  const Mat& precoder(int tx) const { return precoders_.at(static_cast<std::size_t>(tx)); }
  Vec column(StreamRef s) const { return precoder(s.tx).col(s.column); }
  const StreamInfo& info(StreamRef s) const;
  int streams(int tx) const { return static_cast<int>(precoder(tx).cols()); }
  int total_streams() const;
  std::vector<StreamRef> all_streams() const;

  /// Fraction of the transmitter's block power budget S*SNR given to the stream.
  double power_fraction(StreamRef s) const;

  const std::vector<std::string>& user_labels() const { return user_labels_; }
  const std::vector<AlignmentConstraint>& alignments() const { return alignments_; }
  void add_alignment(AlignmentConstraint c) { alignments_.push_back(c); }

  Cognition cognition() const { return cognition_; }
  /// Stream whose interference is removed at `rx` (side information).
  struct Cancellation {
    int rx;
    StreamRef stream;
  };
  const std::vector<Cancellation>& cancellations() const { return cancellations_; }
  void set_cognition(Cognition c, std::vector<Cancellation> cancellations);
  bool cancelled_at(int rx, StreamRef s) const;

  /// Copy with one column replaced verbatim (no renormalization).
  BeamformerSet with_column(StreamRef s, const Vec& v) const;

  boost::rational<long long> claimed_dof() const {
    return {total_streams(), 2LL * extension_};
  }

  bool operator==(const BeamformerSet& other) const;

 private:
  SchemeKind scheme_;
  int extension_;
  int num_rx_;
  std::vector<Mat> precoders_;
  std::vector<std::vector<StreamInfo>> streams_;
  std::vector<std::string> user_labels_;
  std::vector<AlignmentConstraint> alignments_;
  Cognition cognition_ = Cognition::None;
  std::vector<Cancellation> cancellations_;
};

/// Raised when a channel fails the feasibility conditions of a construction.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::string> failed)
      : std::runtime_error(what), failed_(std::move(failed)) {}
  const std::vector<std::string>& failed_conditions() const { return failed_; }

 private:
  std::vector<std::string> failed_;
};

enum class Preconditions { Check, Bypass };

/// One real stream per user, S = 1, on a 3-user channel whose cyclic phase
/// sum is a multiple of pi.
BeamformerSet build_phase_alignment(const ChannelMatrix& ch,
                                    Preconditions pre = Preconditions::Check);

/// Four real streams per user over a 5-symbol extension of a 3-user channel.
/// The first two columns of every transmitter are random (Gaussian, then
/// QR-orthonormalized); the last two are rotations of other users' free
/// columns so that two interference pairs coincide at each receiver.
BeamformerSet build_acs_ic3(const ChannelMatrix& ch, std::uint64_t seed,
                            Preconditions pre = Preconditions::Check);

/// 2x2 X channel, 3-symbol extension, two streams per message.
BeamformerSet build_x_channel(const ChannelMatrix& ch, std::uint64_t seed,
                              Preconditions pre = Preconditions::Check);

/// 2x2 X channel where the message from transmitter 1 to receiver 1 is known
/// at receiver 2 (receiver cognition) or at transmitter 2 (transmitter
/// cognition). Either way receiver 2 sees no interference from it.
BeamformerSet build_cognitive_x(const ChannelMatrix& ch, Cognition cognition,
                                Preconditions pre = Preconditions::Check);

/// Two interfering 2-user uplinks: 2 receivers x 4 transmitters, transmitters
/// 1-2 served by receiver 1 and 3-4 by receiver 2.
BeamformerSet build_uplinks(const ChannelMatrix& ch, std::uint64_t seed,
                            Preconditions pre = Preconditions::Check);

/// Dispatch helper for the seeded constructors; cognitive-x uses receiver
/// cognition and ignores the seed, phase-align ignores the seed.
BeamformerSet build_scheme(SchemeKind kind, const ChannelMatrix& ch, std::uint64_t seed,
                           Preconditions pre = Preconditions::Check);

}  // namespace acsia

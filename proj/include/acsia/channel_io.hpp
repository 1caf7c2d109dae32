// SPDX-License-Identifier: Apache-2.0
//
// Plain-text channel files:
//
//   # comments and blank lines are ignored
//   <num_rx> <num_tx>
//   <r> <t> <magnitude> <phase_radians>     one line per link, 1-based
//
// Every link must appear exactly once.

#pragma once

#include <iosfwd>
#include <string>

#include "acsia/channel.hpp"

namespace acsia {

/// Throws std::runtime_error with a line number on malformed input.
ChannelMatrix read_channel(std::istream& in);
ChannelMatrix read_channel_file(const std::string& path);

/// Round-trips exactly (17 significant digits).
void write_channel(std::ostream& out, const ChannelMatrix& ch);
void write_channel_file(const std::string& path, const ChannelMatrix& ch);

}  // namespace acsia

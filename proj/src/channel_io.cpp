// SPDX-License-Identifier: Apache-2.0

#include "acsia/channel_io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace acsia {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("channel file line " + std::to_string(line) + ": " + what);
}

}  // namespace

ChannelMatrix read_channel(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int num_rx = 0, num_tx = 0;
  bool have_header = false;
  std::vector<bool> seen;
  std::optional<ChannelMatrix> ch;

  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string probe;
    if (!(ls >> probe)) continue;
    ls.clear();
    ls.seekg(0);

    if (!have_header) {
      if (!(ls >> num_rx >> num_tx) || num_rx < 1 || num_tx < 1) fail(line_no, "expected '<num_rx> <num_tx>'");
      if (ls >> probe) fail(line_no, "trailing text after header");
      have_header = true;
      ch.emplace(num_rx, num_tx);
      seen.assign(static_cast<std::size_t>(num_rx * num_tx), false);
      continue;
    }
    int r = 0, t = 0;
    double mag = 0.0, phase = 0.0;
    if (!(ls >> r >> t >> mag >> phase)) fail(line_no, "expected '<r> <t> <magnitude> <phase>'");
    if (ls >> probe) fail(line_no, "trailing text after link");
    if (r < 1 || r > num_rx || t < 1 || t > num_tx) fail(line_no, "link index out of range");
    const auto idx = static_cast<std::size_t>((r - 1) * num_tx + (t - 1));
    if (seen[idx]) fail(line_no, "duplicate link");
    seen[idx] = true;
    try {
      ch->set(r - 1, t - 1, mag, phase);
    } catch (const std::invalid_argument& e) {
      fail(line_no, e.what());
    }
  }
  if (!have_header) fail(line_no, "missing header");
  for (bool s : seen)
    if (!s) fail(line_no, "not every link is specified");
  return *ch;
}

ChannelMatrix read_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel file '" + path + "'");
  return read_channel(in);
}

void write_channel(std::ostream& out, const ChannelMatrix& ch) {
  out << "# rx tx, then: r t magnitude phase_radians\n";
  out << ch.num_rx() << ' ' << ch.num_tx() << '\n';
  char buf[96];
  for (int r = 0; r < ch.num_rx(); ++r) {
    for (int t = 0; t < ch.num_tx(); ++t) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", r + 1, t + 1, ch.magnitude(r, t), ch.phase(r, t));
      out << buf;
    }
  }
}

void write_channel_file(const std::string& path, const ChannelMatrix& ch) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write channel file '" + path + "'");
  write_channel(out, ch);
}

}  // namespace acsia

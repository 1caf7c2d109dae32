// SPDX-License-Identifier: Apache-2.0
//
// Dimension counting for linear alignment on the 3-user channel.
//
// User i sends d_i real streams in a 2S-dimensional space. A stream can share
// a receive dimension with interference at most at one unintended receiver,
// so user i's signal space splits into parts aligned with user j (d_ij, with
// d_ij = d_ji) and an unaligned remainder. Receiver i needs
// d_1 + d_2 + d_3 - d_jk <= 2S, where {j, k} are the other two users.

#pragma once

#include <array>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace acsia {

using Ratio = boost::rational<long long>;

struct AllocationProfile {
  int extension = 1;
  std::array<int, 3> d{0, 0, 0};
  /// Pairwise overlaps d_12, d_23, d_31 (symmetric by construction).
  int d12 = 0;
  int d23 = 0;
  int d31 = 0;

  int overlap(int i, int j) const;  // 1-based, i != j
  int total() const { return d[0] + d[1] + d[2]; }
  Ratio ratio() const { return {total(), 2LL * extension}; }
  bool operator==(const AllocationProfile&) const = default;
};

std::string to_string(const AllocationProfile& p);

struct AllocationCheck {
  bool feasible = true;
  std::vector<std::string> violated;
};

AllocationCheck check_allocation(const AllocationProfile& p);

struct BoundResult {
  int extension = 1;
  Ratio best{0, 1};
  std::vector<AllocationProfile> argmax;  // lexicographic (d1, d2, d3, d12, d23, d31)
  long long feasible_count = 0;
};

/// Largest S handled exhaustively.
inline constexpr int kMaxExhaustiveExtension = 15;

/// Exhaustive search over all feasible profiles with d_i <= d_max
/// (default 3S). Throws std::length_error above kMaxExhaustiveExtension and
/// std::invalid_argument for S < 1.
BoundResult max_dof(int extension, int d_max = -1);

}  // namespace acsia

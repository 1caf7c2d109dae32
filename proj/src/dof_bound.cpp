// SPDX-License-Identifier: Apache-2.0

#include "acsia/dof_bound.hpp"

#include <algorithm>
#include <stdexcept>

namespace acsia {

int AllocationProfile::overlap(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == 1 && j == 2) return d12;
  if (i == 2 && j == 3) return d23;
  if (i == 1 && j == 3) return d31;
  throw std::invalid_argument("AllocationProfile::overlap: need distinct users in 1..3");
}

std::string to_string(const AllocationProfile& p) {
  return "S=" + std::to_string(p.extension) + " d=(" + std::to_string(p.d[0]) + "," +
         std::to_string(p.d[1]) + "," + std::to_string(p.d[2]) + ") d12=" + std::to_string(p.d12) +
         " d23=" + std::to_string(p.d23) + " d31=" + std::to_string(p.d31);
}

AllocationCheck check_allocation(const AllocationProfile& p) {
  AllocationCheck out;
  const auto fail = [&](std::string what) {
    out.feasible = false;
    out.violated.push_back(std::move(what));
  };
  if (p.extension < 1) fail("extension >= 1");
  if (std::min({p.d[0], p.d[1], p.d[2], p.d12, p.d23, p.d31}) < 0) fail("nonnegative entries");
  // the aligned parts of each user's space are disjoint
  if (p.d12 + p.d31 > p.d[0]) fail("partition user 1: d12 + d13 <= d1");
  if (p.d12 + p.d23 > p.d[1]) fail("partition user 2: d21 + d23 <= d2");
  if (p.d31 + p.d23 > p.d[2]) fail("partition user 3: d31 + d32 <= d3");
  const int dims = 2 * p.extension;
  if (p.total() - p.d23 > dims) fail("receiver 1: d1 + d2 + d3 - d23 <= 2S");
  if (p.total() - p.d31 > dims) fail("receiver 2: d1 + d2 + d3 - d31 <= 2S");
  if (p.total() - p.d12 > dims) fail("receiver 3: d1 + d2 + d3 - d12 <= 2S");
  return out;
}

BoundResult max_dof(int extension, int d_max) {
  if (extension < 1) throw std::invalid_argument("max_dof: extension must be >= 1");
  if (extension > kMaxExhaustiveExtension)
    throw std::length_error("max_dof: S = " + std::to_string(extension) +
                            " exceeds the exhaustive limit " + std::to_string(kMaxExhaustiveExtension));
  if (d_max < 0) d_max = 3 * extension;
  const int dims = 2 * extension;
  // receiver constraints force every d_i <= 2S, so larger caps add nothing
  const int cap = std::min(d_max, dims);

  BoundResult result;
  result.extension = extension;
  int best_total = -1;
  AllocationProfile p;
  p.extension = extension;
  for (int d1 = 0; d1 <= cap; ++d1) {
    for (int d2 = 0; d2 <= cap; ++d2) {
      for (int d3 = 0; d3 <= cap; ++d3) {
        const int total = d1 + d2 + d3;
        // each overlap must cover the excess over 2S at its receiver
        const int need = std::max(0, total - dims);
        for (int d12 = need; d12 <= std::min(d1, d2); ++d12) {
          for (int d23 = need; d23 <= std::min(d2 - d12, d3); ++d23) {
            for (int d31 = need; d31 <= std::min(d1 - d12, d3 - d23); ++d31) {
              p.d = {d1, d2, d3};
              p.d12 = d12;
              p.d23 = d23;
              p.d31 = d31;
              ++result.feasible_count;
              if (total > best_total) {
                best_total = total;
                result.argmax.clear();
              }
              if (total == best_total) result.argmax.push_back(p);
            }
          }
        }
      }
    }
  }
  result.best = Ratio(best_total, dims);
  return result;
}

}  // namespace acsia

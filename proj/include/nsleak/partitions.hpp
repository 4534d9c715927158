#pragma once

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace nsleak {

/// Visits every set partition of {0..n-1} exactly once, encoded as a
/// restricted growth string: label[i] is the block of element i, and
/// label[i] <= 1 + max(label[0..i-1]). Partitions are visited in
/// lexicographic order of the label string, so the all-in-one-block
/// partition (0,0,...,0) comes first and all-singletons (0,1,...,n-1)
/// comes last.
///
/// The visitor receives (labels, block_count) and may return void or bool;
/// returning false stops the enumeration.
template <typename Visitor>
void for_each_set_partition(std::size_t n, Visitor&& visit) {
  if (n == 0) return;
  std::vector<int> label(n, 0);
  std::vector<int> prefix_max(n, 0);  // max label among elements 0..i

  while (true) {
    for (std::size_t i = 1; i < n; ++i) {
      prefix_max[i] = std::max(prefix_max[i - 1], label[i]);
    }
    const int blocks = prefix_max[n - 1] + 1;
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const std::vector<int>&, int>, bool>) {
      if (!visit(label, blocks)) return;
    } else {
      visit(label, blocks);
    }

    bool advanced = false;
    for (std::size_t i = n; i-- > 1;) {
      if (label[i] <= prefix_max[i - 1]) {
        ++label[i];
        std::fill(label.begin() + static_cast<std::ptrdiff_t>(i) + 1, label.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

/// Number of set partitions of an n-element set.
std::uint64_t bell_number(unsigned n);

}  // namespace nsleak

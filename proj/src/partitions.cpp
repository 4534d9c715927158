#include "nsleak/partitions.hpp"

namespace nsleak {

std::uint64_t bell_number(unsigned n) {
  // Bell triangle; exact in 64 bits well past the oracle cap.
  std::vector<std::uint64_t> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(i + 1);
    next.push_back(row.back());
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace nsleak

#include "nsleak/overlap.hpp"

#include <algorithm>
#include <map>

#include "nsleak/errors.hpp"
#include "nsleak/partitions.hpp"
#include "nsleak/union_find.hpp"

namespace nsleak {

int OverlapPartition::block_of(const Tuple& x) const {
  const auto it = std::lower_bound(domain.begin(), domain.end(), x);
  if (it == domain.end() || *it != x) {
    throw SelectorError("value " + tuple_str(x) + " is not in [[x]]");
  }
  return labels[static_cast<std::size_t>(it - domain.begin())];
}

OverlapPartition overlap_partition(const JointRange& jr, const VariableSelector& x,
                                   const VariableSelector& y) {
  const ChannelView view = make_channel_view(jr, x, y);
  const std::size_t n = view.x_values.size();

  // Elements of one conditional range are overlap connected by definition;
  // union-find closes the chains across intersecting ranges.
  UnionFind uf(n);
  for (const auto& group : view.x_given_y) {
    for (std::size_t i = 1; i < group.size(); ++i) {
      uf.unite(group[0], group[i]);
    }
  }

  OverlapPartition part;
  part.domain = view.x_values;
  part.labels.assign(n, -1);
  std::map<std::size_t, int> root_to_block;  // keyed by smallest member index
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(i);
    auto [it, inserted] = root_to_block.try_emplace(root, -1);
    if (inserted) {
      it->second = static_cast<int>(part.blocks.size());
      part.blocks.emplace_back();
    }
    part.labels[i] = it->second;
    part.blocks[static_cast<std::size_t>(it->second)].push_back(view.x_values[i]);
  }
  return part;
}

double maximin_information(const JointRange& jr, const VariableSelector& x,
                           const VariableSelector& y, LogBase lb) {
  return log_count(overlap_partition(jr, x, y).block_count(), lb);
}

OneShotOracleResult one_shot_sup_oracle(const JointRange& jr, const VariableSelector& x,
                                        const VariableSelector& y, LogBase lb,
                                        std::size_t cap) {
  const ChannelView view = make_channel_view(jr, x, y);
  const std::size_t n = view.x_values.size();
  if (n > cap) {
    throw OracleCapError("|[[x]]| = " + std::to_string(n) + " exceeds oracle cap " +
                         std::to_string(cap));
  }

  // Admissible: every conditional range inside one block, so the posterior
  // guess count is 1 for every y and the leakage is log(block count).
  std::uint64_t admissible = 0;
  int best_blocks = 0;
  std::vector<int> best_labels;
  for_each_set_partition(n, [&](const std::vector<int>& labels, int block_count) {
    for (const auto& group : view.x_given_y) {
      for (std::size_t i = 1; i < group.size(); ++i) {
        if (labels[group[i]] != labels[group[0]]) return;
      }
    }
    ++admissible;
    if (block_count > best_blocks) {
      best_blocks = block_count;
      best_labels = labels;
    }
  });

  OneShotOracleResult result{log_count(static_cast<std::uint64_t>(best_blocks), lb),
                             AttributePartition::from_labels(view.x_values, best_labels),
                             admissible};
  return result;
}

}  // namespace nsleak

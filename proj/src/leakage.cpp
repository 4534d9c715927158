#include "nsleak/leakage.hpp"

#include <algorithm>
#include <cmath>

#include "nsleak/errors.hpp"
#include "nsleak/partitions.hpp"

namespace nsleak {

namespace {

std::vector<std::vector<Tuple>> canonical_blocks(std::vector<std::vector<Tuple>> blocks) {
  for (auto& block : blocks) {
    if (block.empty()) throw PartitionError("empty block");
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return blocks;
}

}  // namespace

AttributePartition::AttributePartition(std::vector<std::vector<Tuple>> blocks)
    : blocks_(canonical_blocks(std::move(blocks))) {
  if (blocks_.empty()) throw PartitionError("attribute needs at least one block");
}

AttributePartition AttributePartition::identity(const std::vector<Tuple>& domain) {
  std::vector<std::vector<Tuple>> blocks;
  blocks.reserve(domain.size());
  for (const Tuple& t : domain) blocks.push_back({t});
  return AttributePartition(std::move(blocks));
}

AttributePartition AttributePartition::from_labels(const std::vector<Tuple>& domain,
                                                   const std::vector<int>& labels) {
  if (labels.size() != domain.size()) {
    throw PartitionError("label count does not match domain size");
  }
  const int max_label = *std::max_element(labels.begin(), labels.end());
  std::vector<std::vector<Tuple>> blocks(static_cast<std::size_t>(max_label) + 1);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (labels[i] < 0) throw PartitionError("negative block label");
    blocks[static_cast<std::size_t>(labels[i])].push_back(domain[i]);
  }
  for (const auto& block : blocks) {
    if (block.empty()) throw PartitionError("unused block label");
  }
  return AttributePartition(std::move(blocks));
}

void AttributePartition::validate_partition_of(const std::vector<Tuple>& domain) const {
  std::vector<Tuple> covered;
  std::size_t total = 0;
  for (const auto& block : blocks_) total += block.size();
  covered.reserve(total);
  for (const auto& block : blocks_) {
    covered.insert(covered.end(), block.begin(), block.end());
  }
  std::sort(covered.begin(), covered.end());
  if (std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
    throw PartitionError("blocks are not disjoint");
  }
  if (covered != domain) {
    throw PartitionError("blocks do not cover the attribute domain");
  }
}

namespace {

// Per-element block labels aligned with the sorted x marginal.
std::vector<int> labels_for(const AttributePartition& u_attr,
                            const std::vector<Tuple>& domain) {
  std::vector<int> labels(domain.size(), -1);
  int block_id = 0;
  for (const auto& block : u_attr.blocks()) {
    for (const Tuple& t : block) {
      const auto it = std::lower_bound(domain.begin(), domain.end(), t);
      if (it == domain.end() || *it != t) {
        throw PartitionError("block element " + tuple_str(t) + " is not in [[x]]");
      }
      labels[static_cast<std::size_t>(it - domain.begin())] = block_id;
    }
    ++block_id;
  }
  for (int l : labels) {
    if (l < 0) throw PartitionError("blocks do not cover [[x]]");
  }
  return labels;
}

// Number of distinct labels among the x indices of each conditional range;
// `stamp`/`epoch` avoid clearing a flag array per y value.
struct PosteriorCounter {
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;

  explicit PosteriorCounter(std::size_t block_count) : stamp(block_count, 0) {}

  std::size_t count(const std::vector<std::uint32_t>& x_indices,
                    const std::vector<int>& labels) {
    ++epoch;
    std::size_t distinct = 0;
    for (std::uint32_t xi : x_indices) {
      const auto label = static_cast<std::size_t>(labels[xi]);
      if (stamp[label] != epoch) {
        stamp[label] = epoch;
        ++distinct;
      }
    }
    return distinct;
  }
};

LeakageReport report_from_counts(const ChannelView& view, const std::vector<int>& labels,
                                 std::uint64_t prior, LogBase lb) {
  PosteriorCounter counter(prior);
  std::size_t min_posterior = prior;
  std::vector<std::size_t> argmin;
  for (std::size_t yi = 0; yi < view.y_values.size(); ++yi) {
    const std::size_t posterior = counter.count(view.x_given_y[yi], labels);
    if (posterior < min_posterior) {
      min_posterior = posterior;
      argmin.assign(1, yi);
    } else if (posterior == min_posterior) {
      argmin.push_back(yi);
    }
  }
  LeakageReport report;
  report.prior_cost = prior;
  report.min_posterior_cost = min_posterior;
  report.leakage = log_count_ratio(prior, min_posterior, lb);
  report.argmin_y.reserve(argmin.size());
  for (std::size_t yi : argmin) report.argmin_y.push_back(view.y_values[yi]);
  return report;
}

}  // namespace

LeakageReport guessing_leakage(const JointRange& jr, const AttributePartition& u_attr,
                               const VariableSelector& x, const VariableSelector& y,
                               LogBase lb) {
  const ChannelView view = make_channel_view(jr, x, y);
  u_attr.validate_partition_of(view.x_values);
  const auto labels = labels_for(u_attr, view.x_values);
  return report_from_counts(view, labels, u_attr.block_count(), lb);
}

LeakageReport maximal_leakage(const JointRange& jr, const VariableSelector& x,
                              const VariableSelector& y, LogBase lb) {
  const ChannelView view = make_channel_view(jr, x, y);
  const std::uint64_t n_x = view.x_values.size();
  const std::uint64_t min_cond = view.min_conditional_size();

  LeakageReport report;
  report.prior_cost = n_x - min_cond + 1;  // worst-case attribute alphabet size
  report.min_posterior_cost = 1;
  report.leakage = log_count(report.prior_cost, lb);
  for (std::size_t yi : view.argmin_y()) report.argmin_y.push_back(view.y_values[yi]);
  return report;
}

LeakageOracleResult maximal_leakage_oracle(const JointRange& jr,
                                           const VariableSelector& x,
                                           const VariableSelector& y, LogBase lb,
                                           std::size_t cap) {
  const ChannelView view = make_channel_view(jr, x, y);
  const std::size_t n = view.x_values.size();
  if (n > cap) {
    throw OracleCapError("|[[x]]| = " + std::to_string(n) + " exceeds oracle cap " +
                         std::to_string(cap) + " (" + std::to_string(bell_number(n)) +
                         " partitions)");
  }

  // Track the best prior/posterior pair as an exact rational; the first
  // maximizer in restricted-growth order is the lexicographically smallest.
  std::uint64_t best_prior = 1;
  std::uint64_t best_min_posterior = 1;
  std::vector<int> best_labels(n, 0);
  std::uint64_t checked = 0;

  PosteriorCounter counter(n);
  for_each_set_partition(n, [&](const std::vector<int>& labels, int block_count) {
    ++checked;
    std::size_t min_posterior = static_cast<std::size_t>(block_count);
    for (const auto& group : view.x_given_y) {
      min_posterior = std::min(min_posterior, counter.count(group, labels));
    }
    // Strictly better iff prior/posterior ratio is larger (cross-multiplied).
    const auto lhs = static_cast<std::uint64_t>(block_count) * best_min_posterior;
    const auto rhs = best_prior * static_cast<std::uint64_t>(min_posterior);
    if (lhs > rhs) {
      best_prior = static_cast<std::uint64_t>(block_count);
      best_min_posterior = min_posterior;
      best_labels = labels;
    }
  });

  LeakageOracleResult result{
      LeakageReport{}, AttributePartition::from_labels(view.x_values, best_labels),
      checked};

  // Recompute the report for the winning partition so argmin_y is filled in.
  result.report = report_from_counts(view, best_labels, best_prior, lb);
  return result;
}

AttributePartition worst_case_attribute(const JointRange& jr, const VariableSelector& x,
                                        const VariableSelector& y) {
  const ChannelView view = make_channel_view(jr, x, y);
  const std::size_t y_star = view.argmin_y().front();  // canonical tie-break

  std::vector<bool> collapsed(view.x_values.size(), false);
  for (std::uint32_t xi : view.x_given_y[y_star]) collapsed[xi] = true;

  std::vector<std::vector<Tuple>> blocks;
  std::vector<Tuple> merged;
  for (std::size_t i = 0; i < view.x_values.size(); ++i) {
    if (collapsed[i]) {
      merged.push_back(view.x_values[i]);
    } else {
      blocks.push_back({view.x_values[i]});
    }
  }
  blocks.push_back(std::move(merged));
  return AttributePartition(std::move(blocks));
}

bool is_epsilon_identifiable(const JointRange& jr, const AttributePartition& u_attr,
                             const VariableSelector& x, const VariableSelector& y,
                             double epsilon, LogBase lb) {
  if (epsilon < 0) {
    throw DomainError("privacy budget must be non-negative");
  }
  return guessing_leakage(jr, u_attr, x, y, lb).leakage <= epsilon;
}

double convert_leakage_maximal(std::uint64_t n_x, double value,
                               ConvertDirection direction, LogBase lb) {
  if (n_x < 1) throw DomainError("|[[x]]| must be at least 1");
  const double n = static_cast<double>(n_x);
  const double limit = log_of(n, lb);
  constexpr double kSlack = 1e-9;
  if (!(value >= -kSlack && value <= limit + kSlack)) {
    throw DomainError("leakage value " + std::to_string(value) +
                      " outside feasible interval [0, log(n_x)]");
  }
  value = std::clamp(value, 0.0, limit);
  if (direction == ConvertDirection::MaximalToLeakage) {
    const double residual = n + 1.0 - exp_of(value, lb);  // = n * base^(-L)
    return log_of(n / residual, lb);
  }
  const double posterior = n * exp_of(-value, lb);  // = min conditional size
  return log_of(n - posterior + 1.0, lb);
}

double identifiability_bound(std::uint64_t n_x, double epsilon, LogBase lb) {
  if (epsilon < 0) throw DomainError("privacy budget must be non-negative");
  const double n = static_cast<double>(n_x);
  return log_of(n * (1.0 - exp_of(-epsilon, lb)) + 1.0, lb);
}

}  // namespace nsleak

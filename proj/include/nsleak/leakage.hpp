#pragma once

#include <cstdint>
#include <vector>

#include "nsleak/joint_range.hpp"

namespace nsleak {

inline constexpr std::size_t kDefaultOracleCap = 8;

/// A sensitive attribute of x, represented as the partition of [[x]] into
/// preimage blocks. Leakage depends only on the blocks, never on the
/// attribute's labels: the prior guess count is the number of blocks and
/// the posterior count given y is the number of blocks meeting [[x | y]].
class AttributePartition {
public:
  /// Blocks are canonicalized: each block sorted, blocks ordered by their
  /// smallest element. Throws PartitionError on empty or duplicated blocks.
  explicit AttributePartition(std::vector<std::vector<Tuple>> blocks);

  /// One element per block: the identity attribute u = x.
  static AttributePartition identity(const std::vector<Tuple>& domain);

  /// Build from per-element block labels aligned with `domain`.
  static AttributePartition from_labels(const std::vector<Tuple>& domain,
                                        const std::vector<int>& labels);

  const std::vector<std::vector<Tuple>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  /// Throws PartitionError unless the blocks exactly cover `domain`.
  void validate_partition_of(const std::vector<Tuple>& domain) const;

  friend bool operator==(const AttributePartition& a, const AttributePartition& b) {
    return a.blocks_ == b.blocks_;
  }

private:
  std::vector<std::vector<Tuple>> blocks_;
};

/// Outcome of a guessing-leakage computation. The leakage value is always
/// log(prior_cost / min_posterior_cost); argmin_y lists every conditioning
/// value attaining the minimum posterior guess count, in canonical order.
struct LeakageReport {
  double leakage = 0.0;
  std::vector<Tuple> argmin_y;
  std::uint64_t prior_cost = 1;
  std::uint64_t min_posterior_cost = 1;
};

/// Brute-force guessing leakage L(u -> y) for the attribute u of x given by
/// `u_attr`: log of the prior guess count |[[u]]| over the worst-case
/// posterior guess count min over y of |[[u | y]]|.
LeakageReport guessing_leakage(const JointRange& jr, const AttributePartition& u_attr,
                               const VariableSelector& x, const VariableSelector& y,
                               LogBase lb = LogBase::Two);

/// Maximal guessing leakage over every attribute of x:
/// log(|[[x]]| - min over y of |[[x | y]]| + 1). The report carries the
/// worst-case attribute's prior cost and the attaining y values.
LeakageReport maximal_leakage(const JointRange& jr, const VariableSelector& x,
                              const VariableSelector& y, LogBase lb = LogBase::Two);

struct LeakageOracleResult {
  LeakageReport report;
  /// Lexicographically smallest maximizing partition (in restricted growth
  /// label order over the sorted domain).
  AttributePartition best;
  std::uint64_t partitions_checked = 0;
};

/// Exhaustive supremum of guessing_leakage over every partition of [[x]].
/// Must agree with maximal_leakage exactly; kept as an independent route
/// for cross-checking. Throws OracleCapError when |[[x]]| > cap.
LeakageOracleResult maximal_leakage_oracle(const JointRange& jr,
                                           const VariableSelector& x,
                                           const VariableSelector& y,
                                           LogBase lb = LogBase::Two,
                                           std::size_t cap = kDefaultOracleCap);

/// The attribute attaining the maximal leakage: collapse the smallest
/// conditional range [[x | y*]] into one block and leave every other
/// element a singleton. Ties on y* break toward the canonically smallest
/// conditioning value.
AttributePartition worst_case_attribute(const JointRange& jr,
                                        const VariableSelector& x,
                                        const VariableSelector& y);

/// True iff L(u -> y) <= epsilon, i.e. releasing y keeps the attribute's
/// posterior guess count within a factor of base^epsilon of the prior.
bool is_epsilon_identifiable(const JointRange& jr, const AttributePartition& u_attr,
                             const VariableSelector& x, const VariableSelector& y,
                             double epsilon, LogBase lb = LogBase::Two);

/// Direction of the conversion between the identity-attribute guessing
/// leakage L(x -> y) and the maximal leakage over all attributes.
enum class ConvertDirection { LeakageToMaximal, MaximalToLeakage };

/// Solves base^maximal + n_x * base^(-leakage) = n_x + 1 for the requested
/// unknown. Both quantities are increasing in each other; throws
/// DomainError outside [0, log(n_x)].
double convert_leakage_maximal(std::uint64_t n_x, double value,
                               ConvertDirection direction,
                               LogBase lb = LogBase::Two);

/// Upper bound on maximal leakage for any epsilon-identifiable release:
/// log(n_x * (1 - base^(-epsilon)) + 1).
double identifiability_bound(std::uint64_t n_x, double epsilon,
                             LogBase lb = LogBase::Two);

}  // namespace nsleak

#pragma once

#include <cstdint>
#include <vector>

#include "nsleak/joint_range.hpp"
#include "nsleak/leakage.hpp"

namespace nsleak {

/// The unique partition of [[x]] into overlap-connected classes: two
/// elements share a block iff a chain of pairwise-intersecting conditional
/// ranges [[x | y]] joins them. block_of doubles as the common-variable
/// labeling of x: it is the finest attribute an observer of y can always
/// resolve in one guess.
struct OverlapPartition {
  std::vector<Tuple> domain;             // sorted [[x]]
  std::vector<int> labels;               // labels[i]: block of domain[i]
  std::vector<std::vector<Tuple>> blocks;  // indexed by smallest member

  std::size_t block_count() const { return blocks.size(); }

  /// Block index of an element of [[x]]; throws SelectorError if absent.
  int block_of(const Tuple& x) const;
};

OverlapPartition overlap_partition(const JointRange& jr, const VariableSelector& x,
                                   const VariableSelector& y);

/// log of the number of overlap blocks. Symmetric in x and y.
double maximin_information(const JointRange& jr, const VariableSelector& x,
                           const VariableSelector& y, LogBase lb = LogBase::Two);

struct OneShotOracleResult {
  double value = 0.0;
  /// Lexicographically smallest admissible maximizing partition.
  AttributePartition best;
  std::uint64_t admissible_count = 0;
};

/// Exhaustive supremum of guessing_leakage over the attributes an observer
/// of y always resolves in one guess, i.e. partitions in which every
/// conditional range [[x | y]] lies inside a single block. Must equal
/// maximin_information; kept as an independent cross-check route. Throws
/// OracleCapError when |[[x]]| > cap.
OneShotOracleResult one_shot_sup_oracle(const JointRange& jr,
                                        const VariableSelector& x,
                                        const VariableSelector& y,
                                        LogBase lb = LogBase::Two,
                                        std::size_t cap = kDefaultOracleCap);

}  // namespace nsleak

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nsleak/joint_range.hpp"
#include "nsleak/symbol.hpp"

namespace nsleak {

/// Empirical joint distribution of two variables as an exact count table.
/// Probabilities are counts / total; arithmetic stays on integer counts
/// until a final logarithm or division.
class EmpiricalJoint {
public:
  using Pair = std::pair<Symbol, Symbol>;

  /// Aggregates duplicate pairs; throws DomainError on an empty list.
  static EmpiricalJoint from_pairs(const std::vector<Pair>& pairs);

  /// Sorted (pair, count) entries.
  const std::vector<std::pair<Pair, std::uint64_t>>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }

  std::vector<Symbol> x_support() const;
  std::vector<Symbol> y_support() const;

  /// The joint range induced by the support, with variables ("x", "y").
  JointRange induced_range() const;

private:
  std::vector<std::pair<Pair, std::uint64_t>> counts_;
  std::uint64_t total_ = 0;
};

/// Maximal stochastic one-shot guessing leakage:
/// log of sum over y of max over x of P(y | x).
double sibson_infinity_leakage(const EmpiricalJoint& ej, LogBase lb = LogBase::Two);

/// Minimum expected number of sequential guesses for a distribution:
/// sort descending and sum i * p_i (1-indexed). Entries must be
/// non-negative and sum to 1 within 1e-12.
double guessing_entropy(std::span<const double> pmf);

/// Expected-guess-count reduction from observing y:
/// guessing entropy of the x marginal minus the y-average of the
/// conditional guessing entropies. Computed exactly on counts.
double stochastic_guessing_leakage(const EmpiricalJoint& ej);

}  // namespace nsleak

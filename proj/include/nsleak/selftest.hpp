#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nsleak/joint_range.hpp"

namespace nsleak {

/// Visits every joint range over variables ("x", "y") whose x marginal has
/// exactly nx elements and y marginal exactly ny: all subsets of the
/// nx-by-ny grid with surjective projections.
void for_each_joint_range(int nx, int ny,
                          const std::function<void(const JointRange&)>& visit);

/// As above for every size pair up to the given maxima.
void for_each_joint_range_up_to(int max_x, int max_y,
                                const std::function<void(const JointRange&)>& visit);

/// Random joint range over ("x", "y") with |[[x]]| <= max_x, |[[y]]| <= max_y.
JointRange random_joint_range(std::mt19937_64& rng, int max_x, int max_y);

/// Random chain (u, x, y, z) built by composing channels: u is a function
/// of x, y is drawn from a per-x alphabet, z from a per-y alphabet. The
/// construction guarantees the chain u - x - y - z.
JointRange random_chain_uxyz(std::mt19937_64& rng, int max_x, int max_y, int max_z);

/// Random product of 2 or 3 mutually unrelated small (x_i, y_i) pairs,
/// plus the factor ranges themselves.
struct UnrelatedProduct {
  JointRange product;
  std::vector<JointRange> factors;
  VariableSelector x;
  VariableSelector y;
};
UnrelatedProduct random_unrelated_product(std::mt19937_64& rng, int max_factors = 3);

struct SuiteResult {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  std::string first_counterexample;

  bool passed() const { return violations == 0; }
};

struct SelfTestOptions {
  std::size_t oracle_cap = 8;
  /// Exhaustive oracle sweep bounds.
  int exhaustive_max_x = 4;
  int exhaustive_max_y = 3;
  std::uint64_t random_instances = 1000;
  std::uint64_t seed = 20240915;
};

struct SelfTestReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  std::uint64_t total_instances() const;
};

/// Runs the oracle-equality and invariant suites on exhaustively and
/// randomly generated instances. Deterministic for a fixed seed.
SelfTestReport run_selftest(const SelfTestOptions& opts = {});

namespace detail {

/// Closed-form hook for the oracle-equality suite; tests inject a wrong
/// formula to confirm that violations are detected and reported.
using MaximalLeakageCounts =
    std::function<std::pair<std::uint64_t, std::uint64_t>(const ChannelView&)>;

SuiteResult oracle_equality_suite(const std::function<void(const std::function<void(const JointRange&)>&)>& generate,
                                  std::size_t cap,
                                  const MaximalLeakageCounts& closed_form);

}  // namespace detail

}  // namespace nsleak

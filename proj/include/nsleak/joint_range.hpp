#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nsleak/symbol.hpp"

namespace nsleak {

/// Non-empty subset of a joint range's variable names.
struct VariableSelector {
  std::vector<std::string> names;

  VariableSelector(std::string name) : names{std::move(name)} {}
  VariableSelector(const char* name) : names{std::string(name)} {}
  VariableSelector(std::vector<std::string> n) : names(std::move(n)) {}
  VariableSelector(std::initializer_list<const char*> n) {
    for (const char* s : n) names.emplace_back(s);
  }
};

/// Finite set of realization tuples over named variables.
///
/// The ground-truth object for every non-stochastic measure: a marginal or
/// conditional range is just a projection of this set. Tuples are kept
/// sorted and duplicate-free so set equality is decidable and every
/// operation is deterministic.
class JointRange {
public:
  JointRange(std::vector<std::string> variables, std::vector<Tuple> tuples);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t arity() const { return variables_.size(); }
  std::size_t size() const { return tuples_.size(); }

  /// Column indices for a selector; throws SelectorError on unknown or
  /// duplicate names.
  std::vector<std::size_t> resolve(const VariableSelector& sel) const;

  friend bool operator==(const JointRange& a, const JointRange& b) {
    return a.variables_ == b.variables_ && a.tuples_ == b.tuples_;
  }

private:
  std::vector<std::string> variables_;
  std::vector<Tuple> tuples_;
};

/// [[V]]: distinct projections of the joint range onto the selector.
std::vector<Tuple> marginal_range(const JointRange& jr, const VariableSelector& v);

/// [[target | cond = value]]: projections of the tuples matching `value` on
/// the conditioning variables. Throws EmptyConditionError when `value` is
/// not realizable.
std::vector<Tuple> conditional_range(const JointRange& jr,
                                     const VariableSelector& target,
                                     const VariableSelector& cond,
                                     const Tuple& value);

/// True iff every conditional range [[a | b = v]] equals [[a]]; equivalently
/// the (a,b) marginal is the Cartesian product of the two marginals.
bool is_unrelated(const JointRange& jr, const VariableSelector& a,
                  const VariableSelector& b);

/// True iff a and c are unrelated given b, i.e. [[a | c=v, b=w]] = [[a | b=w]]
/// for every realizable (v, w). Symmetric in a and c.
bool is_markov_chain(const JointRange& jr, const VariableSelector& a,
                     const VariableSelector& b, const VariableSelector& c);

/// H0(v) = log |[[v]]|.
double hartley_entropy(const JointRange& jr, const VariableSelector& v,
                       LogBase lb = LogBase::Two);

/// H0(target | cond) = max over conditioning values of log |[[target|cond=v]]|.
double conditional_hartley_entropy(const JointRange& jr,
                                   const VariableSelector& target,
                                   const VariableSelector& cond,
                                   LogBase lb = LogBase::Two);

/// I0(a;b) = H0(a) - H0(a|b).
double zero_mutual_information(const JointRange& jr, const VariableSelector& a,
                               const VariableSelector& b,
                               LogBase lb = LogBase::Two);

/// Indexed view of the non-stochastic channel from x to y: the sorted
/// marginals plus, per y value, the sorted x-marginal indices of the
/// conditional range [[x | y]]. Shared workhorse of the leakage and
/// overlap computations.
struct ChannelView {
  std::vector<Tuple> x_values;
  std::vector<Tuple> y_values;
  std::vector<std::vector<std::uint32_t>> x_given_y;

  std::size_t min_conditional_size() const;
  /// Indices into y_values attaining the minimum conditional size.
  std::vector<std::size_t> argmin_y() const;
};

ChannelView make_channel_view(const JointRange& jr, const VariableSelector& x,
                              const VariableSelector& y);

}  // namespace nsleak

#include "nsleak/joint_range.hpp"

#include <algorithm>
#include <set>

#include "nsleak/errors.hpp"

namespace nsleak {

JointRange::JointRange(std::vector<std::string> variables, std::vector<Tuple> tuples)
    : variables_(std::move(variables)), tuples_(std::move(tuples)) {
  if (variables_.empty()) {
    throw SelectorError("joint range needs at least one variable");
  }
  std::set<std::string> seen(variables_.begin(), variables_.end());
  if (seen.size() != variables_.size()) {
    throw SelectorError("duplicate variable name in joint range");
  }
  if (tuples_.empty()) {
    throw DataError("joint range must contain at least one tuple");
  }
  for (const Tuple& t : tuples_) {
    if (t.size() != variables_.size()) {
      throw DataError("tuple " + tuple_str(t) + " has arity " +
                      std::to_string(t.size()) + ", expected " +
                      std::to_string(variables_.size()));
    }
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

std::vector<std::size_t> JointRange::resolve(const VariableSelector& sel) const {
  if (sel.names.empty()) {
    throw SelectorError("empty selector");
  }
  std::vector<std::size_t> idx;
  idx.reserve(sel.names.size());
  for (const std::string& name : sel.names) {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) {
      throw SelectorError("unknown variable '" + name + "'");
    }
    idx.push_back(static_cast<std::size_t>(it - variables_.begin()));
  }
  std::vector<std::size_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw SelectorError("duplicate variable in selector");
  }
  return idx;
}

namespace {

Tuple project(const Tuple& t, const std::vector<std::size_t>& idx) {
  Tuple out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(t[i]);
  return out;
}

std::vector<Tuple> sorted_unique(std::vector<Tuple> ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

void require_disjoint(const JointRange& jr, const VariableSelector& a,
                      const VariableSelector& b) {
  jr.resolve(a);
  jr.resolve(b);
  for (const std::string& name : a.names) {
    if (std::find(b.names.begin(), b.names.end(), name) != b.names.end()) {
      throw SelectorError("selectors overlap on variable '" + name + "'");
    }
  }
}

}  // namespace

std::vector<Tuple> marginal_range(const JointRange& jr, const VariableSelector& v) {
  const auto idx = jr.resolve(v);
  std::vector<Tuple> out;
  out.reserve(jr.size());
  for (const Tuple& t : jr.tuples()) out.push_back(project(t, idx));
  return sorted_unique(std::move(out));
}

std::vector<Tuple> conditional_range(const JointRange& jr,
                                     const VariableSelector& target,
                                     const VariableSelector& cond,
                                     const Tuple& value) {
  require_disjoint(jr, target, cond);
  const auto tidx = jr.resolve(target);
  const auto cidx = jr.resolve(cond);
  if (value.size() != cidx.size()) {
    throw SelectorError("conditioning value arity " + std::to_string(value.size()) +
                        " does not match selector arity " + std::to_string(cidx.size()));
  }
  std::vector<Tuple> out;
  for (const Tuple& t : jr.tuples()) {
    if (project(t, cidx) == value) out.push_back(project(t, tidx));
  }
  if (out.empty()) {
    throw EmptyConditionError("conditioning value " + tuple_str(value) +
                              " is not realizable");
  }
  return sorted_unique(std::move(out));
}

bool is_unrelated(const JointRange& jr, const VariableSelector& a,
                  const VariableSelector& b) {
  require_disjoint(jr, a, b);
  const auto full = marginal_range(jr, a);
  for (const Tuple& bv : marginal_range(jr, b)) {
    if (conditional_range(jr, a, b, bv) != full) return false;
  }
  return true;
}

bool is_markov_chain(const JointRange& jr, const VariableSelector& a,
                     const VariableSelector& b, const VariableSelector& c) {
  require_disjoint(jr, a, b);
  require_disjoint(jr, a, c);
  require_disjoint(jr, b, c);

  // [[a | c=v, b=w]] = [[a | b=w]] for all (v,w) in [[c,b]].
  VariableSelector cb(std::vector<std::string>{});
  cb.names = c.names;
  cb.names.insert(cb.names.end(), b.names.begin(), b.names.end());
  for (const Tuple& vw : marginal_range(jr, cb)) {
    const Tuple w(vw.begin() + static_cast<std::ptrdiff_t>(c.names.size()), vw.end());
    if (conditional_range(jr, a, cb, vw) != conditional_range(jr, a, b, w)) {
      return false;
    }
  }
  return true;
}

double hartley_entropy(const JointRange& jr, const VariableSelector& v, LogBase lb) {
  return log_count(marginal_range(jr, v).size(), lb);
}

double conditional_hartley_entropy(const JointRange& jr,
                                   const VariableSelector& target,
                                   const VariableSelector& cond, LogBase lb) {
  require_disjoint(jr, target, cond);
  std::size_t largest = 0;
  for (const Tuple& cv : marginal_range(jr, cond)) {
    largest = std::max(largest, conditional_range(jr, target, cond, cv).size());
  }
  return log_count(largest, lb);
}

double zero_mutual_information(const JointRange& jr, const VariableSelector& a,
                               const VariableSelector& b, LogBase lb) {
  return hartley_entropy(jr, a, lb) - conditional_hartley_entropy(jr, a, b, lb);
}

std::size_t ChannelView::min_conditional_size() const {
  std::size_t best = x_values.size();
  for (const auto& group : x_given_y) best = std::min(best, group.size());
  return best;
}

std::vector<std::size_t> ChannelView::argmin_y() const {
  const std::size_t best = min_conditional_size();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x_given_y.size(); ++i) {
    if (x_given_y[i].size() == best) out.push_back(i);
  }
  return out;
}

ChannelView make_channel_view(const JointRange& jr, const VariableSelector& x,
                              const VariableSelector& y) {
  require_disjoint(jr, x, y);
  const auto xidx = jr.resolve(x);
  const auto yidx = jr.resolve(y);

  ChannelView view;
  view.x_values = marginal_range(jr, x);
  view.y_values = marginal_range(jr, y);
  view.x_given_y.assign(view.y_values.size(), {});

  auto rank_of = [](const std::vector<Tuple>& values, const Tuple& t) {
    return static_cast<std::uint32_t>(
        std::lower_bound(values.begin(), values.end(), t) - values.begin());
  };
  for (const Tuple& t : jr.tuples()) {
    const auto xr = rank_of(view.x_values, project(t, xidx));
    const auto yr = rank_of(view.y_values, project(t, yidx));
    view.x_given_y[yr].push_back(xr);
  }
  for (auto& group : view.x_given_y) {
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
  }
  return view;
}

}  // namespace nsleak

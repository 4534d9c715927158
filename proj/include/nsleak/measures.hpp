#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsleak/dataset.hpp"
#include "nsleak/joint_range.hpp"

namespace nsleak {

/// Every measure for one dataset and step size. The non-stochastic fields
/// follow the configured range semantics; the stochastic field is always
/// computed from the raw column values with multiplicity.
struct MeasureReport {
  double delta = 0.0;
  double max_distortion = 0.0;
  double h0_x = 0.0;
  double h0_x_given_y = 0.0;
  double i0 = 0.0;
  double l_guessing = 0.0;  // identity attribute u = x
  double l_star = 0.0;
  double i_star = 0.0;
  double sibson_inf = 0.0;
  std::optional<double> epsilon;
  std::optional<bool> epsilon_identifiable;
};

/// One row of a privacy-utility sweep.
struct SweepRow {
  double delta = 0.0;
  double max_distortion = 0.0;
  double l_star = 0.0;
  double i_star = 0.0;
  double sibson_inf = 0.0;
  double l_identity = 0.0;  // guessing leakage of the identity attribute
};

/// One row of the majority-vote table.
struct VoteRow {
  int n = 0;
  double l_individual = 0.0;  // u = one voter's vote
  double l_all = 0.0;         // u = the full vote vector
  double l_star = 0.0;
  double i_star = 0.0;
};

MeasureReport measure_columns(const Table& t, const std::string& x_col,
                              const std::string& y_col,
                              std::optional<QuantizerSpec> q, RangeSemantics sem,
                              LogBase lb, std::optional<double> epsilon);

/// One sweep row per step size, sorted by step size. Rows are independent
/// and are computed in parallel; the output is identical to the sequential
/// order.
std::vector<SweepRow> sweep_columns(const Table& t, const std::string& x_col,
                                    const std::string& y_col,
                                    std::vector<double> deltas, RangeSemantics sem,
                                    LogBase lb);

std::vector<VoteRow> vote_table(int n_max, LogBase lb = LogBase::Two);

/// Selectors used for a joint range built under the given semantics.
VariableSelector x_selector(const JointRange& jr, const std::string& x_col,
                            RangeSemantics sem);

}  // namespace nsleak

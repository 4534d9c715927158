#include "nsleak/measures.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "nsleak/errors.hpp"
#include "nsleak/overlap.hpp"
#include "nsleak/stochastic.hpp"

namespace nsleak {

VariableSelector x_selector(const JointRange& jr, const std::string& x_col,
                            RangeSemantics sem) {
  if (sem == RangeSemantics::Value) return VariableSelector(x_col);
  return VariableSelector(jr.variables().front());  // the record variable
}

MeasureReport measure_columns(const Table& t, const std::string& x_col,
                              const std::string& y_col,
                              std::optional<QuantizerSpec> q, RangeSemantics sem,
                              LogBase lb, std::optional<double> epsilon) {
  const JointRange jr = build_joint(t, x_col, y_col, q, sem);
  const VariableSelector x = x_selector(jr, x_col, sem);
  const VariableSelector y(y_col);

  MeasureReport report;
  report.delta = q ? q->delta : 0.0;
  if (q) {
    std::vector<double> ys;
    const std::size_t yi = t.column_index(y_col);
    const std::size_t xi = t.column_index(x_col);
    for (const auto& row : t.rows) {
      if (row[xi] && row[yi]) ys.push_back(*row[yi]);
    }
    report.max_distortion = max_distortion(ys, *q);
  }
  report.h0_x = hartley_entropy(jr, x, lb);
  report.h0_x_given_y = conditional_hartley_entropy(jr, x, y, lb);
  report.i0 = report.h0_x - report.h0_x_given_y;

  const auto identity = AttributePartition::identity(marginal_range(jr, x));
  report.l_guessing = guessing_leakage(jr, identity, x, y, lb).leakage;
  report.l_star = maximal_leakage(jr, x, y, lb).leakage;
  report.i_star = maximin_information(jr, x, y, lb);
  report.sibson_inf =
      sibson_infinity_leakage(EmpiricalJoint::from_pairs(column_pairs(t, x_col, y_col, q)), lb);
  if (epsilon) {
    report.epsilon = epsilon;
    report.epsilon_identifiable =
        is_epsilon_identifiable(jr, identity, x, y, *epsilon, lb);
  }
  return report;
}

std::vector<SweepRow> sweep_columns(const Table& t, const std::string& x_col,
                                    const std::string& y_col,
                                    std::vector<double> deltas, RangeSemantics sem,
                                    LogBase lb) {
  if (deltas.empty()) throw DomainError("sweep needs at least one step size");
  std::sort(deltas.begin(), deltas.end());

  std::vector<SweepRow> rows(deltas.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= deltas.size() || failed.load()) return;
      try {
        const QuantizerSpec q{deltas[i]};
        const MeasureReport m =
            measure_columns(t, x_col, y_col, q, sem, lb, std::nullopt);
        rows[i] = SweepRow{m.delta,  m.max_distortion, m.l_star,
                           m.i_star, m.sibson_inf,     m.l_guessing};
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error_message = e.what();
      }
    }
  };

  const std::size_t worker_count =
      std::min<std::size_t>(deltas.size(),
                            std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (std::size_t i = 0; i < worker_count; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (failed.load()) throw DataError(error_message);
  return rows;
}

std::vector<VoteRow> vote_table(int n_max, LogBase lb) {
  if (n_max < 1 || n_max > kMaxVoters) {
    throw DomainError("voter count must be in 1.." + std::to_string(kMaxVoters));
  }
  std::vector<VoteRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const JointRange jr = majority_vote_fixture(n);
    const VariableSelector x("x");
    const VariableSelector y("y");
    VoteRow row;
    row.n = n;
    row.l_individual =
        guessing_leakage(jr, majority_vote_bit_attribute(n, 1), x, y, lb).leakage;
    row.l_all =
        guessing_leakage(jr, AttributePartition::identity(marginal_range(jr, x)), x, y, lb)
            .leakage;
    row.l_star = maximal_leakage(jr, x, y, lb).leakage;
    row.i_star = maximin_information(jr, x, y, lb);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nsleak

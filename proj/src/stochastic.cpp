#include "nsleak/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "nsleak/errors.hpp"

namespace nsleak {

EmpiricalJoint EmpiricalJoint::from_pairs(const std::vector<Pair>& pairs) {
  if (pairs.empty()) {
    throw DomainError("empirical joint needs at least one observation");
  }
  std::map<Pair, std::uint64_t> acc;
  for (const Pair& p : pairs) ++acc[p];

  EmpiricalJoint ej;
  ej.counts_.assign(acc.begin(), acc.end());
  ej.total_ = pairs.size();
  return ej;
}

std::vector<Symbol> EmpiricalJoint::x_support() const {
  std::vector<Symbol> out;
  for (const auto& [pair, count] : counts_) out.push_back(pair.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Symbol> EmpiricalJoint::y_support() const {
  std::vector<Symbol> out;
  for (const auto& [pair, count] : counts_) out.push_back(pair.second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

JointRange EmpiricalJoint::induced_range() const {
  std::vector<Tuple> tuples;
  tuples.reserve(counts_.size());
  for (const auto& [pair, count] : counts_) {
    tuples.push_back({pair.first, pair.second});
  }
  return JointRange({"x", "y"}, std::move(tuples));
}

double sibson_infinity_leakage(const EmpiricalJoint& ej, LogBase lb) {
  // Row totals per x value.
  std::map<Symbol, std::uint64_t> row_total;
  for (const auto& [pair, count] : ej.counts()) row_total[pair.first] += count;

  // Per y, the largest P(y|x) = count(x,y) / row_total(x), picked by exact
  // cross-multiplied comparison.
  std::map<Symbol, std::pair<std::uint64_t, std::uint64_t>> best;  // y -> (num, den)
  for (const auto& [pair, count] : ej.counts()) {
    const std::uint64_t den = row_total[pair.first];
    auto [it, inserted] = best.try_emplace(pair.second, std::make_pair(count, den));
    if (!inserted) {
      const auto [num0, den0] = it->second;
      if (static_cast<unsigned __int128>(count) * den0 >
          static_cast<unsigned __int128>(num0) * den) {
        it->second = {count, den};
      }
    }
  }

  // Exact rational accumulation while it fits in 128 bits, so factorizing
  // counts give exactly zero; long-double fallback otherwise (the lcm of
  // row totals is unbounded).
  unsigned __int128 num = 0;
  unsigned __int128 den = 1;
  bool exact = true;
  for (const auto& [y, frac] : best) {
    const unsigned __int128 g = std::gcd(static_cast<std::uint64_t>(den % frac.second),
                                         frac.second);
    const unsigned __int128 scale = frac.second / g;
    constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1) << 100;
    if (den > kLimit / scale) {
      exact = false;
      break;
    }
    num = num * scale + frac.first * (den / g);
    den = den * scale;
  }
  if (exact) {
    if (num == den) return 0.0;
    return log_of(static_cast<double>(static_cast<long double>(num) /
                                      static_cast<long double>(den)),
                  lb);
  }
  long double sum = 0.0L;
  for (const auto& [y, frac] : best) {
    sum += static_cast<long double>(frac.first) / static_cast<long double>(frac.second);
  }
  return log_of(static_cast<double>(sum), lb);
}

double guessing_entropy(std::span<const double> pmf) {
  if (pmf.empty()) throw DomainError("empty distribution");
  double sum = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw DomainError("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError("probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
  std::vector<double> sorted(pmf.begin(), pmf.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double entropy = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    entropy += static_cast<double>(i + 1) * sorted[i];
  }
  return entropy;
}

namespace {

// Sum of i * c_i over counts sorted descending: the guessing entropy of the
// empirical distribution c / total, scaled by total.
std::uint64_t guess_weight(std::vector<std::uint64_t> counts) {
  std::sort(counts.begin(), counts.end(), std::greater<>());
  std::uint64_t weight = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    weight += (i + 1) * counts[i];
  }
  return weight;
}

}  // namespace

double stochastic_guessing_leakage(const EmpiricalJoint& ej) {
  std::map<Symbol, std::uint64_t> x_counts;
  std::map<Symbol, std::vector<std::uint64_t>> by_y;
  for (const auto& [pair, count] : ej.counts()) {
    x_counts[pair.first] += count;
    by_y[pair.second].push_back(count);
  }

  std::vector<std::uint64_t> marginal;
  marginal.reserve(x_counts.size());
  for (const auto& [x, c] : x_counts) marginal.push_back(c);

  // H_G(x) - sum_y P(y) H_G(x|y) has common denominator `total`: the prior
  // weight uses counts/total directly, and each conditional term
  // (T_y/total) * (S_y/T_y) collapses to S_y/total.
  const std::uint64_t prior_weight = guess_weight(std::move(marginal));
  std::uint64_t posterior_weight = 0;
  for (auto& [y, counts] : by_y) posterior_weight += guess_weight(std::move(counts));

  return (static_cast<double>(prior_weight) - static_cast<double>(posterior_weight)) /
         static_cast<double>(ej.total());
}

}  // namespace nsleak

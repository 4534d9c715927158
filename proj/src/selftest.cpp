#include "nsleak/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nsleak/errors.hpp"
#include "nsleak/leakage.hpp"
#include "nsleak/overlap.hpp"
#include "nsleak/partitions.hpp"

namespace nsleak {

namespace {

const VariableSelector kX("x");
const VariableSelector kY("y");

std::string describe(const JointRange& jr) {
  std::string out = "{";
  for (std::size_t i = 0; i < jr.tuples().size(); ++i) {
    if (i > 0) out += ",";
    out += tuple_str(jr.tuples()[i]);
  }
  out += "} over (";
  for (std::size_t i = 0; i < jr.variables().size(); ++i) {
    if (i > 0) out += ",";
    out += jr.variables()[i];
  }
  out += ")";
  return out;
}

void record_violation(SuiteResult& suite, const std::string& message) {
  ++suite.violations;
  if (suite.first_counterexample.empty()) suite.first_counterexample = message;
}

JointRange grid_joint_range(int nx, int ny, std::uint32_t mask) {
  std::vector<Tuple> tuples;
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      if (mask & (1u << (x * ny + y))) {
        tuples.push_back({Symbol(x), Symbol(y)});
      }
    }
  }
  return JointRange({"x", "y"}, std::move(tuples));
}

}  // namespace

void for_each_joint_range(int nx, int ny,
                          const std::function<void(const JointRange&)>& visit) {
  const int cells = nx * ny;
  for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
    bool ok = true;
    for (int x = 0; x < nx && ok; ++x) {
      std::uint32_t row = 0;
      for (int y = 0; y < ny; ++y) row |= mask & (1u << (x * ny + y));
      ok = row != 0;
    }
    for (int y = 0; y < ny && ok; ++y) {
      std::uint32_t col = 0;
      for (int x = 0; x < nx; ++x) col |= mask & (1u << (x * ny + y));
      ok = col != 0;
    }
    if (ok) visit(grid_joint_range(nx, ny, mask));
  }
}

void for_each_joint_range_up_to(int max_x, int max_y,
                                const std::function<void(const JointRange&)>& visit) {
  for (int nx = 1; nx <= max_x; ++nx) {
    for (int ny = 1; ny <= max_y; ++ny) {
      for_each_joint_range(nx, ny, visit);
    }
  }
}

JointRange random_joint_range(std::mt19937_64& rng, int max_x, int max_y) {
  std::uniform_int_distribution<int> size_x(1, max_x);
  std::uniform_int_distribution<int> size_y(1, max_y);
  const int nx = size_x(rng);
  const int ny = size_y(rng);
  std::uniform_real_distribution<double> density(0.25, 0.75);
  const double p = density(rng);
  std::bernoulli_distribution keep(p);

  std::vector<std::vector<bool>> cell(nx, std::vector<bool>(ny, false));
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) cell[x][y] = keep(rng);
  }
  // Force surjective projections.
  std::uniform_int_distribution<int> pick_y(0, ny - 1);
  std::uniform_int_distribution<int> pick_x(0, nx - 1);
  for (int x = 0; x < nx; ++x) {
    if (std::none_of(cell[x].begin(), cell[x].end(), [](bool b) { return b; })) {
      cell[x][pick_y(rng)] = true;
    }
  }
  for (int y = 0; y < ny; ++y) {
    bool any = false;
    for (int x = 0; x < nx; ++x) any = any || cell[x][y];
    if (!any) cell[pick_x(rng)][y] = true;
  }

  std::vector<Tuple> tuples;
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      if (cell[x][y]) tuples.push_back({Symbol(x), Symbol(y)});
    }
  }
  return JointRange({"x", "y"}, std::move(tuples));
}

JointRange random_chain_uxyz(std::mt19937_64& rng, int max_x, int max_y, int max_z) {
  std::uniform_int_distribution<int> size_x(1, max_x);
  const int nx = size_x(rng);
  std::uniform_int_distribution<int> size_u(1, nx);
  const int nu = size_u(rng);
  std::uniform_int_distribution<int> any_u(0, nu - 1);

  // Surjective attribute map x -> u.
  std::vector<int> attribute(nx);
  std::iota(attribute.begin(), attribute.begin() + nu, 0);
  for (int x = nu; x < nx; ++x) attribute[x] = any_u(rng);
  std::shuffle(attribute.begin(), attribute.end(), rng);

  auto random_alphabet = [&rng](int limit) {
    std::uniform_int_distribution<int> size(1, limit);
    const int n = size(rng);
    std::vector<int> symbols(static_cast<std::size_t>(limit));
    std::iota(symbols.begin(), symbols.end(), 0);
    std::shuffle(symbols.begin(), symbols.end(), rng);
    symbols.resize(static_cast<std::size_t>(n));
    return symbols;
  };

  std::vector<std::vector<int>> y_channel(nx);   // per x
  for (int x = 0; x < nx; ++x) y_channel[x] = random_alphabet(max_y);
  std::vector<std::vector<int>> z_channel(max_y);  // per y
  for (int y = 0; y < max_y; ++y) z_channel[y] = random_alphabet(max_z);

  std::vector<Tuple> tuples;
  for (int x = 0; x < nx; ++x) {
    for (int y : y_channel[x]) {
      for (int z : z_channel[y]) {
        tuples.push_back({Symbol(attribute[x]), Symbol(x), Symbol(y), Symbol(z)});
      }
    }
  }
  return JointRange({"u", "x", "y", "z"}, std::move(tuples));
}

UnrelatedProduct random_unrelated_product(std::mt19937_64& rng, int max_factors) {
  std::uniform_int_distribution<int> count(2, std::max(2, max_factors));
  const int k = count(rng);

  UnrelatedProduct out{JointRange({"x1", "y1"}, {{Symbol(0), Symbol(0)}}), {}, kX, kY};
  out.factors.clear();
  std::vector<std::string> variables;
  std::vector<std::string> x_names;
  std::vector<std::string> y_names;
  for (int i = 0; i < k; ++i) {
    out.factors.push_back(random_joint_range(rng, 3, 3));
    x_names.push_back("x" + std::to_string(i + 1));
    y_names.push_back("y" + std::to_string(i + 1));
    variables.push_back(x_names.back());
    variables.push_back(y_names.back());
  }

  std::vector<Tuple> tuples{{}};
  for (const JointRange& factor : out.factors) {
    std::vector<Tuple> next;
    next.reserve(tuples.size() * factor.size());
    for (const Tuple& prefix : tuples) {
      for (const Tuple& ft : factor.tuples()) {
        Tuple combined = prefix;
        combined.insert(combined.end(), ft.begin(), ft.end());
        next.push_back(std::move(combined));
      }
    }
    tuples = std::move(next);
  }

  out.product = JointRange(variables, std::move(tuples));
  out.x = VariableSelector(x_names);
  out.y = VariableSelector(y_names);
  return out;
}

bool SelfTestReport::passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.passed(); });
}

std::uint64_t SelfTestReport::total_instances() const {
  std::uint64_t total = 0;
  for (const SuiteResult& s : suites) total += s.instances;
  return total;
}

namespace detail {

SuiteResult oracle_equality_suite(
    const std::function<void(const std::function<void(const JointRange&)>&)>& generate,
    std::size_t cap, const MaximalLeakageCounts& closed_form) {
  SuiteResult suite{"oracle-equality", 0, 0, ""};
  generate([&](const JointRange& jr) {
    ++suite.instances;
    const ChannelView view = make_channel_view(jr, kX, kY);
    const auto [prior, posterior] = closed_form(view);
    const LeakageOracleResult oracle = maximal_leakage_oracle(jr, kX, kY, LogBase::Two, cap);
    // Exact rational equality of prior/posterior ratios.
    if (prior * oracle.report.min_posterior_cost !=
        oracle.report.prior_cost * posterior) {
      record_violation(suite, "closed form " + std::to_string(prior) + "/" +
                                  std::to_string(posterior) + " != oracle " +
                                  std::to_string(oracle.report.prior_cost) + "/" +
                                  std::to_string(oracle.report.min_posterior_cost) +
                                  " on " + describe(jr));
    }
  });
  return suite;
}

}  // namespace detail

namespace {

std::pair<std::uint64_t, std::uint64_t> maximal_leakage_counts(const ChannelView& view) {
  return {view.x_values.size() - view.min_conditional_size() + 1, 1};
}

SuiteResult one_shot_equality_suite(
    const std::function<void(const std::function<void(const JointRange&)>&)>& generate,
    std::size_t cap) {
  SuiteResult suite{"one-shot-oracle-equality", 0, 0, ""};
  generate([&](const JointRange& jr) {
    ++suite.instances;
    const OverlapPartition part = overlap_partition(jr, kX, kY);
    const OneShotOracleResult oracle = one_shot_sup_oracle(jr, kX, kY, LogBase::Two, cap);
    if (oracle.best.block_count() != part.block_count()) {
      record_violation(suite, "one-shot supremum has " +
                                  std::to_string(oracle.best.block_count()) +
                                  " blocks, overlap partition " +
                                  std::to_string(part.block_count()) + " on " +
                                  describe(jr));
      return;
    }
    // The unique maximizer is the overlap partition itself.
    if (!(oracle.best == AttributePartition(part.blocks))) {
      record_violation(suite, "one-shot maximizer differs from the overlap partition on " +
                                  describe(jr));
    }
  });
  return suite;
}

SuiteResult worst_case_suite(
    const std::function<void(const std::function<void(const JointRange&)>&)>& generate) {
  SuiteResult suite{"worst-case-attribute-achievability", 0, 0, ""};
  generate([&](const JointRange& jr) {
    ++suite.instances;
    const ChannelView view = make_channel_view(jr, kX, kY);
    const std::uint64_t expected = view.x_values.size() - view.min_conditional_size() + 1;
    const LeakageReport report =
        guessing_leakage(jr, worst_case_attribute(jr, kX, kY), kX, kY);
    if (report.prior_cost != expected * report.min_posterior_cost) {
      record_violation(suite, "worst-case attribute achieves " +
                                  std::to_string(report.prior_cost) + "/" +
                                  std::to_string(report.min_posterior_cost) +
                                  ", expected " + std::to_string(expected) + " on " +
                                  describe(jr));
    }
  });
  return suite;
}

SuiteResult middle_inequality_suite(
    const std::function<void(const std::function<void(const JointRange&)>&)>& generate,
    std::size_t cap) {
  SuiteResult suite{"middle-inequality", 0, 0, ""};
  generate([&](const JointRange& jr) {
    ++suite.instances;
    const ChannelView view = make_channel_view(jr, kX, kY);
    const std::size_t n = view.x_values.size();
    if (n > cap) return;
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t epoch = 0;
    for_each_set_partition(n, [&](const std::vector<int>& labels, int blocks) -> bool {
      for (const auto& group : view.x_given_y) {
        ++epoch;
        std::size_t posterior = 0;
        for (std::uint32_t xi : group) {
          const auto l = static_cast<std::size_t>(labels[xi]);
          if (seen[l] != epoch) {
            seen[l] = epoch;
            ++posterior;
          }
        }
        // |[[x]]| - |[[u]]| >= |[[x|y]]| - |[[u|y]]| for every partition u, y.
        if (n + posterior < group.size() + static_cast<std::size_t>(blocks)) {
          record_violation(suite,
                           "middle inequality fails for a " + std::to_string(blocks) +
                               "-block partition on " + describe(jr));
          return false;
        }
      }
      return true;
    });
  });
  return suite;
}

SuiteResult dpi_guessing_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"dpi-guessing-leakage", 0, 0, ""};
  const VariableSelector u("u");
  const VariableSelector z("z");
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const JointRange jr = random_chain_uxyz(rng, 5, 4, 4);

    // Route 1: conditional ranges of the u variable.
    const std::size_t prior = marginal_range(jr, u).size();
    auto min_posterior = [&](const VariableSelector& obs) {
      std::size_t best = prior;
      for (const Tuple& v : marginal_range(jr, obs)) {
        best = std::min(best, conditional_range(jr, u, obs, v).size());
      }
      return best;
    };
    const std::size_t via_y = min_posterior(kY);
    const std::size_t via_z = min_posterior(z);

    // Route 2: the preimage partition of the attribute map.
    std::vector<std::vector<Tuple>> blocks(prior);
    const auto u_values = marginal_range(jr, u);
    for (const Tuple& t : jr.tuples()) {
      const Tuple uv{t[0]};
      const Tuple xv{t[1]};
      const auto it = std::lower_bound(u_values.begin(), u_values.end(), uv);
      auto& block = blocks[static_cast<std::size_t>(it - u_values.begin())];
      if (std::find(block.begin(), block.end(), xv) == block.end()) {
        block.push_back(xv);
      }
    }
    const AttributePartition attr{blocks};
    const LeakageReport r_y = guessing_leakage(jr, attr, kX, kY);
    const LeakageReport r_z = guessing_leakage(jr, attr, kX, z);
    if (r_y.prior_cost != prior || r_y.min_posterior_cost != via_y ||
        r_z.min_posterior_cost != via_z) {
      record_violation(suite, "partition route disagrees with range route on " +
                                  describe(jr));
      continue;
    }
    // L(u -> z) <= L(u -> y): the posterior can only grow along the chain.
    if (via_z < via_y) {
      record_violation(suite, "guessing-leakage DPI fails on " + describe(jr));
    }
  }
  return suite;
}

SuiteResult dpi_maximal_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"dpi-maximal-leakage", 0, 0, ""};
  const VariableSelector z("z");
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const JointRange jr = random_chain_uxyz(rng, 5, 4, 4);
    const auto m_y = make_channel_view(jr, kX, kY).min_conditional_size();
    const auto m_z = make_channel_view(jr, kX, z).min_conditional_size();
    if (m_z < m_y) {
      record_violation(suite, "maximal-leakage DPI fails on " + describe(jr));
    }
  }
  return suite;
}

SuiteResult bounds_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"maximal-leakage-bounds", 0, 0, ""};
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const JointRange jr = random_joint_range(rng, 6, 5);
    const ChannelView view = make_channel_view(jr, kX, kY);
    const std::size_t n = view.x_values.size();
    const std::size_t m = view.min_conditional_size();
    const LeakageReport report = maximal_leakage(jr, kX, kY);

    if (report.leakage < 0.0) {
      record_violation(suite, "negative maximal leakage on " + describe(jr));
      continue;
    }
    if ((m == n) != is_unrelated(jr, kX, kY)) {
      record_violation(suite, "zero-leakage criterion disagrees with unrelatedness on " +
                                  describe(jr));
      continue;
    }
    if ((report.leakage == 0.0) != (m == n)) {
      record_violation(suite, "zero leakage does not match full conditionals on " +
                                  describe(jr));
      continue;
    }
    if (n - m + 1 > n) {
      record_violation(suite, "maximal leakage exceeds H0(x) on " + describe(jr));
      continue;
    }
    // H0(x|y) <= H0(x); equality whenever unrelated.
    const double h0 = hartley_entropy(jr, kX);
    const double h0_cond = conditional_hartley_entropy(jr, kX, kY);
    if (h0_cond > h0 + 1e-12) {
      record_violation(suite, "H0(x|y) exceeds H0(x) on " + describe(jr));
      continue;
    }
    if (is_unrelated(jr, kX, kY) && h0_cond != h0) {
      record_violation(suite, "unrelated pair with H0(x|y) != H0(x) on " + describe(jr));
      continue;
    }

    // Equality case of the entropy bound: observing x itself.
    std::vector<Tuple> copy_tuples;
    for (const Tuple& xv : view.x_values) {
      copy_tuples.push_back({xv[0], xv[0]});
    }
    const JointRange mirrored({"x", "y"}, copy_tuples);
    const LeakageReport full = maximal_leakage(mirrored, kX, kY);
    if (full.prior_cost != n) {
      record_violation(suite, "maximal leakage under y = x is not H0(x) on " +
                                  describe(jr));
    }
  }
  return suite;
}

SuiteResult additivity_guessing_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"additivity-guessing-leakage", 0, 0, ""};
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const UnrelatedProduct inst = random_unrelated_product(rng);
    const ChannelView view = make_channel_view(inst.product, inst.x, inst.y);
    const std::uint64_t a = view.x_values.size();
    const std::uint64_t b = view.min_conditional_size();

    std::uint64_t n_prod = 1;
    std::uint64_t m_prod = 1;
    for (const JointRange& factor : inst.factors) {
      const ChannelView fv = make_channel_view(factor, kX, kY);
      n_prod *= fv.x_values.size();
      m_prod *= fv.min_conditional_size();
    }
    // L(x -> y) over the product equals the sum over factors: a/b == prod(n_i/m_i).
    if (a * m_prod != b * n_prod) {
      record_violation(suite, "identity-attribute additivity fails on " +
                                  describe(inst.product));
    }
  }
  return suite;
}

SuiteResult maximin_symmetry_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"maximin-symmetry", 0, 0, ""};
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const JointRange jr = random_joint_range(rng, 6, 6);
    const auto forward = overlap_partition(jr, kX, kY).block_count();
    const auto backward = overlap_partition(jr, kY, kX).block_count();
    if (forward != backward) {
      record_violation(suite, "maximin information is asymmetric on " + describe(jr));
    }
  }
  return suite;
}

SuiteResult sandwich_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"maximin-below-maximal", 0, 0, ""};
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const JointRange jr = random_joint_range(rng, 7, 6);
    const ChannelView view = make_channel_view(jr, kX, kY);
    const std::size_t blocks = overlap_partition(jr, kX, kY).block_count();
    if (blocks > view.x_values.size() - view.min_conditional_size() + 1) {
      record_violation(suite, "maximin exceeds maximal leakage on " + describe(jr));
    }
  }
  return suite;
}

SuiteResult conversion_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"leakage-conversion-identity", 0, 0, ""};
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const JointRange jr = random_joint_range(rng, 7, 6);
    const ChannelView view = make_channel_view(jr, kX, kY);
    const auto identity = AttributePartition::identity(view.x_values);
    const double l_identity = guessing_leakage(jr, identity, kX, kY).leakage;
    const double l_star = maximal_leakage(jr, kX, kY).leakage;
    const std::uint64_t n = view.x_values.size();

    const double to_l = convert_leakage_maximal(n, l_star, ConvertDirection::MaximalToLeakage);
    const double to_star = convert_leakage_maximal(n, l_identity, ConvertDirection::LeakageToMaximal);
    const double tol = 1e-9;
    if (std::abs(to_l - l_identity) > tol * std::max(1.0, std::abs(l_identity)) ||
        std::abs(to_star - l_star) > tol * std::max(1.0, std::abs(l_star))) {
      record_violation(suite, "conversion identity fails on " + describe(jr));
    }
  }
  return suite;
}

SuiteResult identifiability_bound_suite(std::mt19937_64& rng, std::uint64_t count) {
  SuiteResult suite{"identifiability-bound", 0, 0, ""};
  std::uniform_real_distribution<double> extra(0.0, 2.0);
  std::bernoulli_distribution tight(0.5);
  for (std::uint64_t i = 0; i < count; ++i) {
    ++suite.instances;
    const JointRange jr = random_joint_range(rng, 7, 6);
    const ChannelView view = make_channel_view(jr, kX, kY);
    const auto identity = AttributePartition::identity(view.x_values);
    const LeakageReport l = guessing_leakage(jr, identity, kX, kY);
    const double epsilon = tight(rng) ? l.leakage : l.leakage + extra(rng);

    if (!is_epsilon_identifiable(jr, identity, kX, kY, epsilon)) {
      record_violation(suite, "release not identifiable at its own leakage on " +
                                  describe(jr));
      continue;
    }
    const double l_star = maximal_leakage(jr, kX, kY).leakage;
    const double bound = identifiability_bound(view.x_values.size(), epsilon);
    if (l_star > bound + 1e-9 * std::max(1.0, std::abs(bound))) {
      record_violation(suite, "maximal leakage exceeds the identifiability bound on " +
                                  describe(jr));
    }
  }
  return suite;
}

std::function<void(const std::function<void(const JointRange&)>&)> exhaustive_generator(
    int max_x, int max_y) {
  return [max_x, max_y](const std::function<void(const JointRange&)>& visit) {
    for_each_joint_range_up_to(max_x, max_y, visit);
  };
}

std::function<void(const std::function<void(const JointRange&)>&)> random_generator(
    std::uint64_t seed, std::uint64_t count, int max_x, int max_y) {
  return [seed, count, max_x, max_y](const std::function<void(const JointRange&)>& visit) {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < count; ++i) {
      visit(random_joint_range(rng, max_x, max_y));
    }
  };
}

}  // namespace

SelfTestReport run_selftest(const SelfTestOptions& opts) {
  SelfTestReport report;

  // The cap bounds every generator feeding an exhaustive-enumeration oracle.
  const int cap = static_cast<int>(opts.oracle_cap);
  const auto exhaustive = exhaustive_generator(std::min(opts.exhaustive_max_x, cap),
                                               opts.exhaustive_max_y);
  const auto random_small =
      random_generator(opts.seed, opts.random_instances, std::min(6, cap), 5);

  auto named = [](SuiteResult suite, const std::string& name) {
    suite.name = name;
    return suite;
  };

  report.suites.push_back(named(
      detail::oracle_equality_suite(exhaustive, opts.oracle_cap, maximal_leakage_counts),
      "oracle-equality-exhaustive"));
  report.suites.push_back(named(
      detail::oracle_equality_suite(random_small, opts.oracle_cap, maximal_leakage_counts),
      "oracle-equality-random"));
  report.suites.push_back(
      named(one_shot_equality_suite(exhaustive, opts.oracle_cap), "one-shot-oracle-exhaustive"));
  report.suites.push_back(
      named(one_shot_equality_suite(random_small, opts.oracle_cap), "one-shot-oracle-random"));
  report.suites.push_back(named(worst_case_suite(exhaustive), "worst-case-attribute-exhaustive"));
  report.suites.push_back(named(worst_case_suite(random_small), "worst-case-attribute-random"));
  report.suites.push_back(
      named(middle_inequality_suite(exhaustive, opts.oracle_cap), "middle-inequality-exhaustive"));
  report.suites.push_back(
      named(middle_inequality_suite(random_small, opts.oracle_cap), "middle-inequality-random"));

  std::mt19937_64 rng(opts.seed + 1);
  report.suites.push_back(dpi_guessing_suite(rng, opts.random_instances));
  report.suites.push_back(dpi_maximal_suite(rng, opts.random_instances));
  report.suites.push_back(bounds_suite(rng, opts.random_instances));
  report.suites.push_back(additivity_guessing_suite(rng, opts.random_instances));
  report.suites.push_back(maximin_symmetry_suite(rng, opts.random_instances));
  report.suites.push_back(sandwich_suite(rng, opts.random_instances));
  report.suites.push_back(conversion_suite(rng, opts.random_instances));
  report.suites.push_back(identifiability_bound_suite(rng, opts.random_instances));

  return report;
}

}  // namespace nsleak

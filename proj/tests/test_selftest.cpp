#include <doctest.h>

#include <set>

#include "nsleak/joint_range.hpp"
#include "nsleak/selftest.hpp"

using namespace nsleak;

TEST_CASE("exhaustive generation counts surjective supports") {
  // 2x2 grid: subsets covering both rows and both columns
  int count = 0;
  std::set<std::vector<Tuple>> seen;
  for_each_joint_range(2, 2, [&](const JointRange& jr) {
    ++count;
    CHECK(marginal_range(jr, "x").size() == 2);
    CHECK(marginal_range(jr, "y").size() == 2);
    seen.insert(jr.tuples());
  });
  CHECK(count == 7);  // 2^4 minus 9 with an empty row or column
  CHECK(seen.size() == 7);

  int single = 0;
  for_each_joint_range(1, 1, [&](const JointRange&) { ++single; });
  CHECK(single == 1);
}

TEST_CASE("random generators honor their bounds") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    const JointRange jr = random_joint_range(rng, 5, 4);
    CHECK(marginal_range(jr, "x").size() <= 5);
    CHECK(marginal_range(jr, "y").size() <= 4);
  }
  for (int round = 0; round < 100; ++round) {
    const JointRange chain = random_chain_uxyz(rng, 4, 3, 3);
    CHECK(chain.variables() == std::vector<std::string>{"u", "x", "y", "z"});
    CHECK(is_markov_chain(chain, "u", "x", "y"));
    CHECK(is_markov_chain(chain, "u", "y", "z"));
    CHECK(is_markov_chain(chain, "x", "y", "z"));
  }
  for (int round = 0; round < 50; ++round) {
    const UnrelatedProduct inst = random_unrelated_product(rng);
    CHECK(inst.factors.size() >= 2);
    CHECK(is_unrelated(inst.product, {"x1", "y1"}, {"x2", "y2"}));
  }
}

TEST_CASE("selftest passes on a small deterministic run") {
  SelfTestOptions opts;
  opts.exhaustive_max_x = 3;
  opts.exhaustive_max_y = 2;
  opts.random_instances = 50;
  const SelfTestReport report = run_selftest(opts);
  for (const auto& suite : report.suites) {
    INFO(suite.name, ": ", suite.first_counterexample);
    CHECK(suite.violations == 0);
  }
  CHECK(report.passed());
  CHECK(report.total_instances() > 0);
}

TEST_CASE("a mutated closed form is caught with a counterexample") {
  // negative control: report the wrong prior and the oracle must disagree
  const auto generate = [](const std::function<void(const JointRange&)>& visit) {
    for_each_joint_range_up_to(3, 2, visit);
  };
  const auto mutated = [](const ChannelView& view) {
    return std::make_pair<std::uint64_t, std::uint64_t>(
        view.x_values.size() - view.min_conditional_size() + 2, 1);
  };
  const SuiteResult suite = detail::oracle_equality_suite(generate, 8, mutated);
  CHECK(suite.violations > 0);
  CHECK_FALSE(suite.first_counterexample.empty());

  const auto faithful = [](const ChannelView& view) {
    return std::make_pair<std::uint64_t, std::uint64_t>(
        view.x_values.size() - view.min_conditional_size() + 1, 1);
  };
  CHECK(detail::oracle_equality_suite(generate, 8, faithful).violations == 0);
}

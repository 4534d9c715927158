#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "nsleak/errors.hpp"
#include "nsleak/joint_range.hpp"
#include "nsleak/selftest.hpp"

using namespace nsleak;

namespace {

// Joint range {(x1,y1),(x2,y1),(x3,y2)}: the standard asymmetric example.
JointRange asymmetric() {
  return JointRange({"x", "y"}, {{Symbol("x1"), Symbol("y1")},
                                 {Symbol("x2"), Symbol("y1")},
                                 {Symbol("x3"), Symbol("y2")}});
}

// Full product {x1,x2} x {y1,y2}: unrelated variables.
JointRange product() {
  return JointRange({"x", "y"}, {{Symbol("x1"), Symbol("y1")},
                                 {Symbol("x1"), Symbol("y2")},
                                 {Symbol("x2"), Symbol("y1")},
                                 {Symbol("x2"), Symbol("y2")}});
}

}  // namespace

TEST_CASE("joint range canonicalizes and validates") {
  const JointRange jr({"a", "b"}, {{Symbol(1), Symbol(0)},
                                   {Symbol(0), Symbol(0)},
                                   {Symbol(1), Symbol(0)}});
  CHECK(jr.size() == 2);  // duplicate removed
  CHECK(jr.tuples().front() == Tuple{Symbol(0), Symbol(0)});

  CHECK_THROWS_AS(JointRange({"a", "a"}, {{Symbol(0), Symbol(0)}}), SelectorError);
  CHECK_THROWS_AS(JointRange({"a"}, {}), DataError);
  CHECK_THROWS_AS(JointRange({"a", "b"}, {{Symbol(0)}}), DataError);
}

TEST_CASE("marginal ranges project and deduplicate") {
  const auto jr = asymmetric();
  const auto xs = marginal_range(jr, "x");
  REQUIRE(xs.size() == 3);
  CHECK(xs[0] == Tuple{Symbol("x1")});
  CHECK(xs[2] == Tuple{Symbol("x3")});
  CHECK(marginal_range(jr, "y").size() == 2);

  const JointRange single({"x", "y"}, {{Symbol(5), Symbol(7)}});
  CHECK(marginal_range(single, "x").size() == 1);
  CHECK(marginal_range(single, VariableSelector{"y", "x"}).front() ==
        Tuple{Symbol(7), Symbol(5)});

  CHECK_THROWS_AS(marginal_range(jr, "nope"), SelectorError);
}

TEST_CASE("conditional ranges restrict to realizable conditions") {
  const auto jr = asymmetric();
  CHECK(conditional_range(jr, "x", "y", {Symbol("y1")}) ==
        std::vector<Tuple>{{Symbol("x1")}, {Symbol("x2")}});
  CHECK(conditional_range(jr, "x", "y", {Symbol("y2")}) ==
        std::vector<Tuple>{{Symbol("x3")}});
  CHECK(conditional_range(product(), "x", "y", {Symbol("y1")}).size() == 2);

  CHECK_THROWS_AS(conditional_range(jr, "x", "y", {Symbol("y9")}), EmptyConditionError);
  CHECK_THROWS_AS(conditional_range(jr, "x", "x", {Symbol("x1")}), SelectorError);
  CHECK_THROWS_AS(conditional_range(jr, "x", "y", {Symbol("y1"), Symbol("y1")}),
                  SelectorError);
}

TEST_CASE("unrelatedness is product structure") {
  CHECK(is_unrelated(product(), "x", "y"));
  CHECK_FALSE(is_unrelated(asymmetric(), "x", "y"));  // [[x|y2]] = {x3} != [[x]]
  const JointRange single({"x", "y"}, {{Symbol(0), Symbol(1)}});
  CHECK(is_unrelated(single, "x", "y"));
  CHECK_THROWS_AS(is_unrelated(product(), "x", "x"), SelectorError);
}

TEST_CASE("unrelatedness is symmetric") {
  for (const auto& jr : {asymmetric(), product()}) {
    CHECK(is_unrelated(jr, "x", "y") == is_unrelated(jr, "y", "x"));
  }
}

TEST_CASE("markov chains") {
  // u determined by x: always a chain u - x - anything.
  const JointRange fn({"u", "x", "y"}, {{Symbol(0), Symbol(0), Symbol(0)},
                                        {Symbol(0), Symbol(0), Symbol(1)},
                                        {Symbol(1), Symbol(1), Symbol(0)}});
  CHECK(is_markov_chain(fn, "u", "x", "y"));
  CHECK(is_markov_chain(fn, "y", "x", "u"));  // symmetry

  // u not resolved by x alone: z reveals it.
  const JointRange leaky({"u", "x", "z"}, {{Symbol(0), Symbol(0), Symbol(0)},
                                           {Symbol(1), Symbol(0), Symbol(1)}});
  CHECK_FALSE(is_markov_chain(leaky, "u", "x", "z"));

  // Three-fold product: every ordering is a chain.
  std::vector<Tuple> cube;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) cube.push_back({Symbol(a), Symbol(b), Symbol(c)});
  const JointRange indep({"a", "b", "c"}, cube);
  CHECK(is_markov_chain(indep, "a", "b", "c"));
  CHECK(is_markov_chain(indep, "b", "a", "c"));
  CHECK(is_markov_chain(indep, "a", "c", "b"));

  CHECK_THROWS_AS(is_markov_chain(fn, "u", "x", "x"), SelectorError);
}

TEST_CASE("entropy of a k-element marginal is exactly log k") {
  std::vector<Tuple> tuples;
  for (int k = 1; k <= 100; ++k) {
    tuples.push_back({Symbol(k), Symbol(k % 7)});
    const JointRange jr({"x", "y"}, tuples);
    CHECK(hartley_entropy(jr, "x") == std::log2(static_cast<double>(k)));
    CHECK(hartley_entropy(jr, "x", LogBase::Ten) ==
          std::log10(static_cast<double>(k)));
  }
}

TEST_CASE("order-0 entropies") {
  const auto jr = asymmetric();
  CHECK(hartley_entropy(jr, "x") == doctest::Approx(1.5849625007211562));
  CHECK(hartley_entropy(JointRange({"x"}, {{Symbol(1)}}), "x") == 0.0);

  // max(|{x1,x2}|, |{x3}|) = 2
  CHECK(conditional_hartley_entropy(jr, "x", "y") == 1.0);

  // duplicated column: conditionals are singletons
  const JointRange dup({"x", "y"}, {{Symbol(0), Symbol(0)}, {Symbol(1), Symbol(1)}});
  CHECK(conditional_hartley_entropy(dup, "x", "y") == 0.0);

  // unrelated: conditionals are full
  CHECK(conditional_hartley_entropy(product(), "x", "y") ==
        hartley_entropy(product(), "x"));

  CHECK(zero_mutual_information(jr, "x", "y") ==
        doctest::Approx(1.5849625007211562 - 1.0));
  CHECK(zero_mutual_information(product(), "x", "y") == 0.0);
  CHECK(zero_mutual_information(dup, "x", "y") == hartley_entropy(dup, "x"));
}

TEST_CASE("conditional ranges are non-empty subsets of the marginal") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 200; ++round) {
    const JointRange jr = random_joint_range(rng, 6, 5);
    const auto full = marginal_range(jr, "x");
    for (const Tuple& yv : marginal_range(jr, "y")) {
      const auto cond = conditional_range(jr, "x", "y", yv);
      REQUIRE(!cond.empty());
      REQUIRE(std::includes(full.begin(), full.end(), cond.begin(), cond.end()));
    }
  }
}

TEST_CASE("markov chains are symmetric on random instances") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 100; ++round) {
    const JointRange chain = random_chain_uxyz(rng, 4, 3, 3);
    for (const auto& [a, b, c] :
         {std::array<const char*, 3>{"u", "x", "y"},
          std::array<const char*, 3>{"u", "y", "z"},
          std::array<const char*, 3>{"u", "z", "x"},
          std::array<const char*, 3>{"x", "u", "z"}}) {
      CHECK(is_markov_chain(chain, a, b, c) == is_markov_chain(chain, c, b, a));
    }
  }
}

TEST_CASE("channel view indexes conditional ranges") {
  const auto view = make_channel_view(asymmetric(), "x", "y");
  REQUIRE(view.y_values.size() == 2);
  CHECK(view.x_given_y[0].size() == 2);
  CHECK(view.x_given_y[1].size() == 1);
  CHECK(view.min_conditional_size() == 1);
  CHECK(view.argmin_y() == std::vector<std::size_t>{1});
}

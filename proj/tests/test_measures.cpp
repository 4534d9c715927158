#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nsleak/errors.hpp"
#include "nsleak/leakage.hpp"
#include "nsleak/measures.hpp"

using namespace nsleak;

namespace {

Table synthetic_table() {
  // Three ages observing two pressure buckets; age 70 is pinned by y = 200.
  Table t;
  t.columns = {"age", "bp"};
  t.rows = {{40.0, 120.0}, {40.0, 130.0}, {50.0, 120.0},
            {50.0, 130.0}, {70.0, 200.0}, {40.0, 120.0}};
  return t;
}

}  // namespace

TEST_CASE("measure_columns reports every measure consistently") {
  const Table t = synthetic_table();
  const auto m = measure_columns(t, "age", "bp", std::nullopt, RangeSemantics::Value,
                                 LogBase::Two, 1.0);

  CHECK(m.h0_x == doctest::Approx(std::log2(3.0)));
  CHECK(m.h0_x_given_y == 1.0);  // [[age | 120]] = {40, 50}
  CHECK(m.i0 == doctest::Approx(std::log2(3.0) - 1.0));
  // min conditional is {70} at bp = 200
  CHECK(m.l_star == doctest::Approx(std::log2(3.0)));
  CHECK(m.l_guessing == doctest::Approx(std::log2(3.0)));
  CHECK(m.i_star == 1.0);  // {40, 50} chain, {70} isolated
  CHECK(m.sibson_inf > 0.0);
  REQUIRE(m.epsilon.has_value());
  CHECK(*m.epsilon_identifiable == false);

  const auto loose = measure_columns(t, "age", "bp", std::nullopt, RangeSemantics::Value,
                                     LogBase::Two, 2.0);
  CHECK(*loose.epsilon_identifiable == true);
}

TEST_CASE("record semantics pin the entropy to the row count") {
  const Table t = synthetic_table();
  const auto m = measure_columns(t, "age", "bp", QuantizerSpec{1.0},
                                 RangeSemantics::Record, LogBase::Two, std::nullopt);
  CHECK(m.h0_x == doctest::Approx(std::log2(6.0)));
  CHECK(m.max_distortion == 0.5);  // integer data, delta 1

  // the stochastic measure ignores the record tagging
  const auto v = measure_columns(t, "age", "bp", QuantizerSpec{1.0},
                                 RangeSemantics::Value, LogBase::Two, std::nullopt);
  CHECK(m.sibson_inf == v.sibson_inf);
}

TEST_CASE("sweep rows are sorted and self-consistent") {
  const Table t = synthetic_table();
  const auto rows = sweep_columns(t, "age", "bp", {16.0, 1.0, 4.0},
                                  RangeSemantics::Record, LogBase::Two);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].delta == 1.0);
  CHECK(rows[2].delta == 16.0);
  for (const auto& r : rows) {
    CHECK(r.i_star <= r.l_star + 1e-12);
    const double converted =
        convert_leakage_maximal(6, r.l_star, ConvertDirection::MaximalToLeakage);
    CHECK(converted == doctest::Approx(r.l_identity).epsilon(1e-9));
  }

  // a degenerate sweep equals the measure report
  const auto one = sweep_columns(t, "age", "bp", {4.0}, RangeSemantics::Record,
                                 LogBase::Two);
  const auto m = measure_columns(t, "age", "bp", QuantizerSpec{4.0},
                                 RangeSemantics::Record, LogBase::Two, std::nullopt);
  REQUIRE(one.size() == 1);
  CHECK(one[0].l_star == m.l_star);
  CHECK(one[0].i_star == m.i_star);
  CHECK(one[0].sibson_inf == m.sibson_inf);
  CHECK(one[0].max_distortion == m.max_distortion);
}

TEST_CASE("vote table reproduces the closed forms") {
  const auto rows = vote_table(10);
  REQUIRE(rows.size() == 10);

  // single ballots: a bit leaks only while there are at most two voters
  CHECK(rows[0].l_individual == 1.0);
  CHECK(rows[1].l_individual == 1.0);
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i].l_individual == 0.0);

  // full-tally leakage alternates: exactly 1 for odd n
  for (const auto& r : rows) {
    if (r.n % 2 == 1) CHECK(r.l_all == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.i_star == 1.0);
  }
  CHECK(rows[1].l_all == 2.0);
  CHECK(rows[3].l_all == doctest::Approx(1.67807190511264).epsilon(1e-12));

  // worst-case curve spot checks
  CHECK(rows[2].l_star == doctest::Approx(2.32192809488736).epsilon(1e-12));
  CHECK(rows[9].l_star == doctest::Approx(9.31967212094699).epsilon(1e-12));

  CHECK_THROWS_AS(vote_table(0), DomainError);
  CHECK_THROWS_AS(vote_table(21), DomainError);
}

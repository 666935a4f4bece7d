#include "doctest.h"

#include "approxstable/config.hpp"
#include "approxstable/gda.hpp"
#include "approxstable/instances.hpp"
#include "approxstable/json_io.hpp"
#include "approxstable/stability.hpp"
#include "test_helpers.hpp"

using namespace approxstable;

namespace {

const char* kHandWritten = R"({
  "doctors": ["d1", "d2", "d3"],
  "hospitals": ["h1", "h2"],
  "preferences": {"d1": ["h1", "h2"], "d2": ["h1"], "d3": []},
  "utilities": {
    "h1": {"kind": "additive", "values": {"d1": 2.0, "d2": 1}},
    "h2": {"kind": "coverage", "elements": {"x": 1.5, "y": 2}, "covers": {"d1": ["x"], "d3": ["x", "y"]}}
  },
  "constraints": {
    "h1": {"kind": "intersection", "of": [
      {"kind": "partition_matroid", "parts": [["d1", "d2"]], "quotas": [1], "rank": null},
      {"kind": "capacity", "rank": 2}
    ]},
    "h2": {"kind": "knapsack", "weights": {"d1": [0.5, 0.25], "d3": [0.5, 0.75]}}
  }
})";

}  // namespace

TEST_CASE("hand-written schema parses to the expected semantics") {
  const Market m = market_from_string(kHandWritten);
  CHECK(m.doctor_count() == 3);
  CHECK(m.preferences[0] == std::vector<int>{0, 1});
  CHECK(m.preferences[2].empty());

  CHECK(evaluate(m.utilities[0], DoctorSet{0, 1}) == 3.0);
  CHECK(evaluate(m.utilities[1], DoctorSet{0}) == 1.5);
  CHECK(evaluate(m.utilities[1], DoctorSet{0, 2}) == 3.5);

  CHECK(!is_independent(m.constraints[0], DoctorSet{0, 1}));  // shared part
  CHECK(is_independent(m.constraints[1], DoctorSet{0, 2}));   // loads 1.0 per dim
  // d2 has no knapsack row: an all-zero weight vector.
  CHECK(is_independent(m.constraints[1], DoctorSet{0, 1, 2}));
}

TEST_CASE("generate, parse, serialize is byte-stable") {
  std::vector<Market> markets = {
      gen_example1(Example1Rendering::Explicit),
      gen_example1(Example1Rendering::MatroidPair),
      gen_example1(Example1Rendering::Knapsack, 0.25),
      gen_example2(),
      gen_thm62_market(3).market,
      gen_thm63_market(1, 0.3).market,
      gen_budget({3.0, 4.0, 5.0}, 10.0),
  };
  RandomMarketParams params;
  params.doctors = 7;
  params.hospitals = 3;
  params.utility = UtilityClass::Coverage;
  params.constraint = ConstraintClass::KMatroidIntersection;
  markets.push_back(gen_random(21, params));

  for (const Market& m : markets) {
    const std::string once = market_to_string(m);
    const std::string twice = market_to_string(market_from_string(once));
    CHECK(once == twice);
  }
}

TEST_CASE("matchings round-trip through pairs") {
  const Market m = gen_example1();
  Matching mu = Matching::unmatched(4);
  mu.assignment[0] = 0;
  mu.assignment[2] = 1;
  const Json j = matching_to_json(m, mu);
  CHECK(j["pairs"].size() == 2);
  const Matching back = matching_from_json(m, j);
  CHECK(back.assignment == mu.assignment);
}

TEST_CASE("malformed inputs raise validation errors") {
  CHECK_THROWS_AS(market_from_string(R"({"doctors": ["a"], "hospitals": []})"), ValidationError);
  CHECK_THROWS_AS(market_from_string(R"({
    "doctors": ["a"], "hospitals": ["h"],
    "preferences": {"a": ["nope"]},
    "utilities": {"h": {"kind": "cardinality"}},
    "constraints": {"h": {"kind": "capacity", "rank": 1}}
  })"), ValidationError);
  CHECK_THROWS_AS(market_from_string(R"({
    "doctors": ["a"], "hospitals": ["h"],
    "preferences": {"a": ["h", "h"]},
    "utilities": {"h": {"kind": "cardinality"}},
    "constraints": {"h": {"kind": "capacity", "rank": 1}}
  })"), ValidationError);
  CHECK_THROWS_AS(market_from_string(R"({
    "doctors": ["a"], "hospitals": ["h"],
    "preferences": {},
    "utilities": {"h": {"kind": "mystery"}},
    "constraints": {"h": {"kind": "capacity", "rank": 1}}
  })"), ValidationError);
  CHECK_THROWS_AS(market_from_string(R"({
    "doctors": ["a"], "hospitals": ["h"],
    "preferences": {},
    "utilities": {"h": {"kind": "cardinality"}},
    "constraints": {"h": {"kind": "knapsack", "weights": {}}}
  })"), ValidationError);

  const Market m = gen_example1();
  CHECK_THROWS_AS(matching_from_json(m, Json::parse(R"({"pairs": [["dX", "h1"]]})")), ValidationError);
  CHECK_THROWS_AS(matching_from_json(m, Json::parse(R"({"pairs": [["d1", "h1"], ["d1", "h2"]]})")),
                  ValidationError);
}

TEST_CASE("reports and traces serialize with names") {
  const Market m = gen_example1();
  Matching mu = Matching::unmatched(4);
  mu.assignment[0] = 0;
  mu.assignment[2] = 1;

  const Json blocked = report_to_json(m, alpha_stability_check(m, mu, 1.99));
  CHECK(blocked["verdict"] == "blocked");
  CHECK(blocked["blocking"]["hospital"] == "h1");
  CHECK(blocked["blocking"]["coalition"] == Json::array({"d2", "d4"}));
  CHECK(blocked["per_hospital"].size() == 2);

  const Json stable = report_to_json(m, alpha_stability_check(m, mu, 2.0));
  CHECK(stable["verdict"] == "stable");
  CHECK(!stable.contains("blocking"));

  const auto [result, trace] = run_gda(m, OnlineAlgKind::GreedyMatroid);
  const Json t = trace_to_json(m, trace);
  CHECK(t["rounds"].get<int>() == trace.round_count());
  CHECK(t["proposals"].size() == trace.proposals.size());
  CHECK(t["matching"]["pairs"].is_array());
}

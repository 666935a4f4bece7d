#include <cmath>
#include <limits>

#include "doctest.h"

#include "approxstable/config.hpp"
#include "approxstable/instances.hpp"
#include "approxstable/packing.hpp"
#include "test_helpers.hpp"

using namespace approxstable;

TEST_CASE("solve_exact on the crossed example") {
  const Market m = gen_example1();
  const PackingSolution best = solve_exact({DoctorSet::full(4), m.utilities[0], m.constraints[0]});
  CHECK(best.value == 2.0);
  CHECK(is_independent(m.constraints[0], best.chosen));
  CHECK(best.chosen.count() == 2);
}

TEST_CASE("solve_exact on the coverage example picks the top pair") {
  const Market m = gen_example2();
  const PackingSolution best = solve_exact({DoctorSet::full(4), m.utilities[0], m.constraints[0]});
  CHECK(best.chosen == DoctorSet{2, 3});
  CHECK(best.value == doctest::Approx(10.0 + 2.0 * std::sqrt(17.0)).epsilon(1e-12));
}

TEST_CASE("solve_exact on the empty ground set") {
  const PackingSolution best = solve_exact({DoctorSet{}, Cardinality{}, make_capacity(4, 2)});
  CHECK(best.chosen.empty());
  CHECK(best.value == 0.0);
}

TEST_CASE("solve_exact matches the plain enumeration oracle") {
  int fast_path_cases = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 6);
    const auto ucls = static_cast<UtilityClass>(seed % 3);
    const auto ccls = static_cast<ConstraintClass>((seed / 3) % 4);
    const auto packing = gen_random_packing(seed, n, ucls, ccls, 2, 2, 0.2);
    const DoctorSet ground = DoctorSet::full(n);

    const double expected = testutil::bruteforce_packing_value(packing.utility, packing.system, ground);
    const PackingSolution got = solve_exact({ground, packing.utility, packing.system});
    CHECK(got.value == doctest::Approx(expected).epsilon(1e-9));
    CHECK(is_independent(packing.system, got.chosen));
    CHECK(evaluate(packing.utility, got.chosen) == doctest::Approx(got.value).epsilon(1e-12));
    if (is_structural_matroid(packing.system) && is_additive_or_cardinality(packing.utility))
      ++fast_path_cases;
  }
  CHECK(fast_path_cases > 0);  // the greedy path was actually exercised
}

TEST_CASE("solve_exact dominates every independent subset") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto packing = gen_random_packing(seed, 8, UtilityClass::Additive,
                                            ConstraintClass::Knapsack, 1, 2, 0.3);
    const DoctorSet ground = DoctorSet::full(8);
    const double best = solve_exact({ground, packing.utility, packing.system}).value;
    testutil::for_all_subsets(ground.to_vector(), [&](const DoctorSet& s) {
      if (is_independent(packing.system, s))
        CHECK(best >= evaluate(packing.utility, s) - kStabilityTol);
    });
  }
}

TEST_CASE("restriction never improves the optimum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto packing = gen_random_packing(seed, 7, UtilityClass::Coverage,
                                            ConstraintClass::KMatroidIntersection, 2, 1, 0.2);
    const DoctorSet ground = DoctorSet::full(7);
    const double whole = solve_exact({ground, packing.utility, packing.system}).value;
    const DoctorSet a = testutil::from_mask(static_cast<unsigned>(seed * 37 + 5) & 127u,
                                            ground.to_vector());
    const double restricted = solve_exact({a, packing.utility, restrict(packing.system, a)}).value;
    CHECK(restricted <= whole + kStabilityTol);
  }
}

TEST_CASE("ties resolve to the smallest bit pattern") {
  // Two disjoint blocks of equal value; {d1,d3} and {d2,d4} tie at 2.
  const Market m = gen_example1();
  const PackingSolution best = solve_exact({DoctorSet::full(4), m.utilities[0], m.constraints[0]});
  CHECK(best.chosen == DoctorSet{0, 2});
}

TEST_CASE("approximation_ratio conventions") {
  const Market m = gen_example1();
  const PackingInstance p{DoctorSet::full(4), m.utilities[0], m.constraints[0]};
  const PackingSolution best = solve_exact(p);
  CHECK(approximation_ratio(p, best.chosen) == 1.0);
  CHECK(approximation_ratio(p, DoctorSet{0}) == 2.0);
  CHECK(approximation_ratio(p, DoctorSet{}) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(approximation_ratio(p, DoctorSet{0, 1}), std::invalid_argument);

  const PackingInstance zero{DoctorSet::full(2), Additive{{0.0, 0.0}}, make_capacity(2, 1)};
  CHECK(approximation_ratio(zero, DoctorSet{}) == 1.0);
}

TEST_CASE("oversized instances without a fast path are refused") {
  const int n = 26;
  std::vector<std::vector<double>> weights(n, std::vector<double>{0.01});
  const PackingInstance p{DoctorSet::full(n), Cardinality{}, make_knapsack(n, weights)};
  CHECK_THROWS_AS(solve_exact(p), OracleLimitError);

  // The same size under a structural matroid takes the greedy path.
  const PackingInstance fast{DoctorSet::full(n), Cardinality{}, make_capacity(n, 5)};
  CHECK(solve_exact(fast).value == 5.0);
}

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "approxstable/config.hpp"
#include "approxstable/instances.hpp"
#include "approxstable/online.hpp"
#include "approxstable/packing.hpp"
#include "approxstable/rng.hpp"
#include "test_helpers.hpp"

using namespace approxstable;

namespace {

IndependenceSystem crossed_family() { return gen_example1().constraints[0]; }

// OPT over every arrived prefix, via the exact offline solver.
void check_competitive(OnlineAlgKind kind, const IndependenceSystem& sys, const Utility& u,
                       const std::vector<int>& arrivals, double ratio) {
  const auto selections = replay(kind, sys, u, arrivals);
  DoctorSet arrived;
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    arrived.insert(arrivals[i]);
    const double opt = solve_exact({arrived, u, restrict(sys, arrived)}).value;
    CHECK(ratio * evaluate(u, selections[i]) >= opt - kStabilityTol);
  }
}

}  // namespace

TEST_CASE("greedy accepts exactly when the selection stays independent") {
  const auto sys = crossed_family();
  CHECK(replay(OnlineAlgKind::GreedyMatroid, sys, Cardinality{}, {0, 1}).back() == DoctorSet{0});
  CHECK(replay(OnlineAlgKind::GreedyMatroid, sys, Cardinality{}, {0, 2}).back() == DoctorSet{0, 2});
  CHECK(replay(OnlineAlgKind::GreedyMatroid, make_capacity(4, 1), Cardinality{}, {3}).back() ==
        DoctorSet{3});
}

TEST_CASE("replay of the crossed family steps the membership oracle") {
  const auto selections = replay(OnlineAlgKind::GreedyMatroid, crossed_family(), Cardinality{},
                                 {0, 1, 2, 3});
  REQUIRE(selections.size() == 4);
  CHECK(selections[0] == DoctorSet{0});
  CHECK(selections[1] == DoctorSet{0});
  CHECK(selections[2] == DoctorSet{0, 2});
  CHECK(selections[3] == DoctorSet{0, 2});

  CHECK(replay(OnlineAlgKind::GreedyMatroid, crossed_family(), Cardinality{}, {}).empty());
}

TEST_CASE("repeated arrivals are rejected") {
  const auto sys = crossed_family();
  const Utility u = Cardinality{};
  OnlineRun run(make_online_algorithm(OnlineAlgKind::GreedyMatroid, sys, u), sys);
  run.arrive(0);
  CHECK_THROWS_AS(run.arrive(0), std::invalid_argument);
}

TEST_CASE("density greedy removes the least dense element on overflow") {
  const auto sys = make_knapsack(2, {{0.6}, {0.6}});
  const Utility u = Additive{{1.0, 2.0}};
  const auto selections = replay(OnlineAlgKind::GreedyKnapsack, sys, u, {0, 1});
  CHECK(selections[0] == DoctorSet{0});
  CHECK(selections[1] == DoctorSet{1});
}

TEST_CASE("density greedy on the knapsack lower-bound head-to-head") {
  // One heavy doctor (weight 1-eps, utility r*rho) against a light arrival
  // from the first block (weight 1/r, utility (r*rho)^(1/m)).
  const double eps = 0.3;
  const int r = 3;
  const auto sys = make_knapsack(2, {{1.0 - eps}, {1.0 / r}});
  const Utility u = Additive{{3.0, std::sqrt(3.0)}};
  const auto selections = replay(OnlineAlgKind::GreedyKnapsack, sys, u, {0, 1});
  CHECK(selections[0] == DoctorSet{0});
  CHECK(selections[1] == DoctorSet{1});  // densities 3/0.7 < sqrt(3)*3
}

TEST_CASE("degenerate densities: 0/0 drops first, positive/0 never drops") {
  const auto sys = make_knapsack(4, {{0.9}, {0.0}, {0.8}, {0.0}});
  const Utility u = Additive{{1.0, 0.0, 1.0, 5.0}};
  const auto selections = replay(OnlineAlgKind::GreedyKnapsack, sys, u, {0, 1, 3, 2});
  CHECK(selections[0] == DoctorSet{0});
  CHECK(selections[1] == DoctorSet{0, 1});
  CHECK(selections[2] == DoctorSet{0, 1, 3});
  // d2 overflows: the 0/0 doctor goes first, then the lighter of the rest.
  CHECK(selections[3] == DoctorSet{2, 3});
}

TEST_CASE("density greedy with cardinality keeps two of the 0.4-weights") {
  const auto sys = make_knapsack(4, {{0.4}, {0.4}, {0.4}, {0.4}});
  const auto selections = replay(OnlineAlgKind::GreedyKnapsack, sys, Cardinality{}, {2, 0, 3, 1});
  std::vector<int> sizes;
  for (const auto& s : selections) sizes.push_back(s.count());
  CHECK(sizes == std::vector<int>{1, 2, 2, 2});
}

TEST_CASE("the density greedy refuses coverage utilities") {
  const auto sys = make_knapsack(2, {{0.4}, {0.4}});
  WeightedCoverage cov;
  cov.element_names = {"e1"};
  cov.element_weights = {1.0};
  cov.covers = {{0}, {0}};
  CHECK_THROWS_AS(make_online_algorithm(OnlineAlgKind::GreedyKnapsack, sys, Utility{cov}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_online_algorithm(OnlineAlgKind::GreedyKnapsack, crossed_family(),
                                        Utility{Cardinality{}}),
                  std::invalid_argument);
}

TEST_CASE("greedy is k-competitive on matroid intersections (cardinality)") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 5 + static_cast<int>(seed % 4);
    const int k = 1 + static_cast<int>(seed % 3);
    const auto packing = gen_random_packing(seed, n, UtilityClass::Cardinality,
                                            ConstraintClass::KMatroidIntersection, k, 1, 0.2);
    std::vector<int> arrivals(static_cast<std::size_t>(n));
    std::iota(arrivals.begin(), arrivals.end(), 0);
    SeededRng rng(seed + 999);
    rng.shuffle(arrivals);
    check_competitive(OnlineAlgKind::GreedyMatroid, packing.system, packing.utility, arrivals,
                      static_cast<double>(k));
  }
}

TEST_CASE("density greedy meets its knapsack ratios") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 5 + static_cast<int>(seed % 4);
    const int rho = 1 + static_cast<int>(seed % 2);
    const double eps = 0.3;
    std::vector<int> arrivals(static_cast<std::size_t>(n));
    std::iota(arrivals.begin(), arrivals.end(), 0);
    SeededRng rng(seed + 77);
    rng.shuffle(arrivals);

    const auto card = gen_random_packing(seed, n, UtilityClass::Cardinality,
                                         ConstraintClass::Knapsack, 1, rho, eps);
    check_competitive(OnlineAlgKind::GreedyKnapsack, card.system, card.utility, arrivals,
                      static_cast<double>(rho));

    const auto add = gen_random_packing(seed + 1000, n, UtilityClass::Additive,
                                        ConstraintClass::Knapsack, 1, rho, eps);
    const double slack = *knapsack_slack(add.system);
    check_competitive(OnlineAlgKind::GreedyKnapsack, add.system, add.utility, arrivals,
                      static_cast<double>(rho) / slack);
  }
}

TEST_CASE("the density greedy always retains the top-density prefix that fits") {
  // With distinct densities, the arrived elements sorted by u(d)/maxw(d)
  // descending have a maximal prefix whose max-weights sum to at most 1;
  // that prefix survives every removal round.
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const int n = 6 + static_cast<int>(seed % 5);
    const auto packing = gen_random_packing(seed, n, UtilityClass::Additive,
                                            ConstraintClass::Knapsack, 1, 2, 0.2);
    const auto& knap = std::get<Knapsack>(packing.system.expr);
    std::vector<double> max_weight(static_cast<std::size_t>(n), 0.0);
    std::vector<double> density(static_cast<std::size_t>(n), 0.0);
    for (int d = 0; d < n; ++d) {
      for (double w : knap.weights[static_cast<std::size_t>(d)])
        max_weight[static_cast<std::size_t>(d)] = std::max(max_weight[static_cast<std::size_t>(d)], w);
      density[static_cast<std::size_t>(d)] =
          singleton_value(packing.utility, d) / max_weight[static_cast<std::size_t>(d)];
    }

    std::vector<int> arrivals(static_cast<std::size_t>(n));
    std::iota(arrivals.begin(), arrivals.end(), 0);
    SeededRng rng(seed + 5);
    rng.shuffle(arrivals);
    const auto selections =
        replay(OnlineAlgKind::GreedyKnapsack, packing.system, packing.utility, arrivals);

    std::vector<int> arrived;
    for (std::size_t i = 0; i < arrivals.size(); ++i) {
      arrived.push_back(arrivals[i]);
      std::vector<int> by_density = arrived;
      std::sort(by_density.begin(), by_density.end(), [&](int a, int b) {
        return density[static_cast<std::size_t>(a)] > density[static_cast<std::size_t>(b)];
      });
      double load = 0.0;
      for (int d : by_density) {
        load += max_weight[static_cast<std::size_t>(d)];
        if (load > 1.0 + kKnapsackTol) break;
        CHECK(selections[i].contains(d));
      }
    }
  }
}

TEST_CASE("rejected sets only grow, and selection partitions the arrivals") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto packing = gen_random_packing(seed, 7, UtilityClass::Additive,
                                            ConstraintClass::Knapsack, 1, 2, 0.25);
    OnlineRun run(make_online_algorithm(OnlineAlgKind::GreedyKnapsack, packing.system, packing.utility),
                  packing.system);
    DoctorSet arrived;
    DoctorSet previous_rejected;
    for (int d = 0; d < 7; ++d) {
      run.arrive(d);
      arrived.insert(d);
      CHECK(previous_rejected.subset_of(run.rejected()));
      CHECK(!run.selection().intersects(run.rejected()));
      CHECK((run.selection() | run.rejected()) == arrived);
      previous_rejected = run.rejected();
    }
  }
}

TEST_CASE("selections agree on a common prefix of arrivals") {
  const auto knap = gen_random_packing(5, 8, UtilityClass::Additive,
                                       ConstraintClass::Knapsack, 1, 2, 0.2);
  {
    const auto a = replay(OnlineAlgKind::GreedyKnapsack, knap.system, knap.utility, {3, 1, 4, 0, 2});
    const auto b = replay(OnlineAlgKind::GreedyKnapsack, knap.system, knap.utility, {3, 1, 4, 2, 5});
    for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == b[i]);
  }
  const auto mat = gen_random_packing(6, 8, UtilityClass::Cardinality,
                                      ConstraintClass::KMatroidIntersection, 2, 1, 0.2);
  const auto a = replay(OnlineAlgKind::GreedyMatroid, mat.system, mat.utility, {3, 1, 4, 0, 2});
  const auto b = replay(OnlineAlgKind::GreedyMatroid, mat.system, mat.utility, {3, 1, 4, 2, 5});
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("the exact replay is 1-competitive when it respects the contract") {
  const auto sys = make_capacity(6, 2);
  const Utility u = Additive{{1.0, 5.0, 2.0, 4.0, 3.0, 6.0}};
  check_competitive(OnlineAlgKind::OfflineExact, sys, u, {0, 1, 2, 3, 4, 5}, 1.0);
}

TEST_CASE("the exact replay can violate the no-return rule") {
  // Blocks {a,b} and {c} with c worth more than either alone but less than
  // both: the optimum swaps a out and later wants it back.
  const auto sys = make_explicit(3, {DoctorSet{0, 2}, DoctorSet{1}});
  const Utility u = Additive{{1.0, 1.5, 1.0}};
  CHECK_THROWS_AS(replay(OnlineAlgKind::OfflineExact, sys, u, {0, 1, 2}), ContractViolation);
}

TEST_CASE("certified ratios follow the representation") {
  const auto crossed = gen_example1(Example1Rendering::MatroidPair).constraints[0];
  CHECK(certified_ratio(OnlineAlgKind::GreedyMatroid, crossed, Cardinality{}) == 2.0);
  CHECK(certified_ratio(OnlineAlgKind::GreedyMatroid, make_capacity(4, 2), Cardinality{}) == 1.0);
  CHECK(std::isinf(certified_ratio(OnlineAlgKind::GreedyMatroid, crossed_family(), Cardinality{})));

  const auto knap1 = make_knapsack(2, {{0.5}, {0.25}});
  CHECK(certified_ratio(OnlineAlgKind::GreedyKnapsack, knap1, Cardinality{}) == 1.0);
  CHECK(certified_ratio(OnlineAlgKind::GreedyKnapsack, knap1, Additive{{1.0, 2.0}}) ==
        doctest::Approx(2.0).epsilon(1e-12));  // rho/eps = 1/0.5

  CHECK(certified_ratio(OnlineAlgKind::OfflineExact, crossed_family(), Cardinality{}) == 1.0);
}

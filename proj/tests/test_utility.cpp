#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "approxstable/config.hpp"
#include "approxstable/instances.hpp"
#include "approxstable/rng.hpp"
#include "approxstable/utility.hpp"
#include "test_helpers.hpp"

using namespace approxstable;

namespace {

const double kRoot17 = std::sqrt(17.0);

Utility example2_coverage() { return gen_example2().utilities[0]; }

}  // namespace

TEST_CASE("cardinality counts the set") {
  CHECK(evaluate(Cardinality{}, DoctorSet{0, 1}) == 2.0);
  CHECK(evaluate(Cardinality{}, DoctorSet{}) == 0.0);
}

TEST_CASE("weighted coverage sums the covered elements once") {
  const Utility u = example2_coverage();
  CHECK(evaluate(u, DoctorSet{0, 1}) == doctest::Approx(6.0 + 2.0 * kRoot17).epsilon(1e-12));
  CHECK(evaluate(u, DoctorSet{2, 3}) == doctest::Approx(10.0 + 2.0 * kRoot17).epsilon(1e-12));
  CHECK(evaluate(u, DoctorSet{3}) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(evaluate(u, DoctorSet{0, 3}) == doctest::Approx(7.0 + kRoot17).epsilon(1e-12));
}

TEST_CASE("evaluate rejects foreign doctors") {
  const Utility u = Additive{{1.0, 2.0}};
  CHECK_THROWS_AS(evaluate(u, DoctorSet{5}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(example2_coverage(), DoctorSet{9}), std::invalid_argument);
}

TEST_CASE("every variant is normalized") {
  CHECK(evaluate(Cardinality{}, DoctorSet{}) == 0.0);
  CHECK(evaluate(Additive{{3.0, 4.0}}, DoctorSet{}) == 0.0);
  CHECK(evaluate(example2_coverage(), DoctorSet{}) == 0.0);
}

TEST_CASE("verify_monotone") {
  CHECK(verify_monotone(Cardinality{}, DoctorSet::full(4)));
  CHECK(verify_monotone(Additive{{0.0, 0.0, 0.0}}, DoctorSet::full(3)));
  CHECK(verify_monotone(example2_coverage(), DoctorSet::full(4)));
  CHECK_THROWS_AS(verify_monotone(Cardinality{}, DoctorSet::full(21)), OracleLimitError);
}

TEST_CASE("verify_submodular") {
  CHECK(verify_submodular(Additive{{1.5, 0.0, 2.0, 7.0}}, DoctorSet::full(4)));
  CHECK(verify_submodular(example2_coverage(), DoctorSet::full(4)));
  CHECK_THROWS_AS(verify_submodular(Cardinality{}, DoctorSet::full(17)), OracleLimitError);
}

TEST_CASE("a coverage-with-bonus utility is submodular") {
  // Ground elements x1..x3 at weight 1 plus a weight-2 element owned by the
  // first doctor; the other doctors cover overlapping triples.
  WeightedCoverage cov;
  cov.element_names = {"x1", "x2", "x3", "bonus"};
  cov.element_weights = {1.0, 1.0, 1.0, 2.0};
  cov.covers = {{3}, {0, 1, 2}, {0}, {1, 2}, {0, 2}};
  CHECK(verify_submodular(cov, DoctorSet::full(5)));
  CHECK(verify_monotone(cov, DoctorSet::full(5)));
}

TEST_CASE("additive utilities are modular") {
  const Additive add{{0.5, 2.25, 0.0, 3.75, 1.0}};
  testutil::for_all_subsets({0, 1, 2, 3, 4}, [&](const DoctorSet& s) {
    double singles = 0.0;
    s.for_each([&](int d) { singles += evaluate(add, DoctorSet::single(d)); });
    CHECK(evaluate(add, s) == doctest::Approx(singles).epsilon(1e-12));
  });
}

TEST_CASE("coverage is invariant under element permutation") {
  WeightedCoverage cov = std::get<WeightedCoverage>(example2_coverage());
  // Reverse the element order, remapping covers accordingly.
  WeightedCoverage rev = cov;
  const int e = static_cast<int>(cov.element_weights.size());
  std::reverse(rev.element_names.begin(), rev.element_names.end());
  std::reverse(rev.element_weights.begin(), rev.element_weights.end());
  for (auto& cover : rev.covers)
    for (int& id : cover) id = e - 1 - id;

  testutil::for_all_subsets({0, 1, 2, 3}, [&](const DoctorSet& s) {
    CHECK(evaluate(Utility{cov}, s) == doctest::Approx(evaluate(Utility{rev}, s)).epsilon(1e-12));
  });
}

TEST_CASE("cardinality coincides with the all-ones additive utility") {
  const Additive ones{std::vector<double>(5, 1.0)};
  testutil::for_all_subsets({0, 1, 2, 3, 4}, [&](const DoctorSet& s) {
    CHECK(evaluate(Cardinality{}, s) == evaluate(ones, s));
  });
}

TEST_CASE("incremental evaluation tracks full evaluation") {
  const Utility u = example2_coverage();
  IncrementalValue inc(u);
  DoctorSet current;
  SeededRng rng(11);
  for (int step = 0; step < 200; ++step) {
    const int d = rng.below(4);
    if (current.contains(d)) {
      inc.remove(d);
      current.erase(d);
    } else {
      inc.add(d);
      current.insert(d);
    }
    CHECK(inc.value() == doctest::Approx(evaluate(u, current)).epsilon(1e-12));
  }
}

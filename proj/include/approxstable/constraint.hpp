#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "approxstable/doctor_set.hpp"

namespace approxstable {

struct IndependenceSystem;

/// |S| <= rank. The uniform matroid.
struct Capacity {
  int rank = 0;
};

/// |S n part_t| <= quota_t for every part, plus an optional overall rank.
/// Parts are disjoint; doctors outside every part are unconstrained by the
/// quotas. Always a matroid.
struct PartitionMatroid {
  std::vector<DoctorSet> parts;
  std::vector<int> quotas;
  std::optional<int> rank;
};

/// Downward closure of a list of maximal sets: S independent iff S is a
/// subset of some listed set. The empty set is independent even when the
/// list is empty.
struct ExplicitFamily {
  std::vector<DoctorSet> maximal_sets;
};

/// Independent iff independent in every child.
struct Intersection {
  std::vector<IndependenceSystem> children;
};

/// Per-doctor weight vectors of length dims; S independent iff every
/// dimension's load is <= 1 (+ kKnapsackTol).
struct Knapsack {
  int dims = 1;
  std::vector<std::vector<double>> weights;  // weights[d] has size dims
};

/// Inner system restricted to `allowed`: S independent iff S is a subset of
/// `allowed` and independent in the inner system.
struct Restriction {
  std::shared_ptr<const IndependenceSystem> inner;
  DoctorSet allowed;
};

struct IndependenceSystem {
  using Expr = std::variant<Capacity, PartitionMatroid, ExplicitFamily, Intersection, Knapsack, Restriction>;

  int ground_size = 0;
  Expr expr;
};

IndependenceSystem make_capacity(int ground_size, int rank);
IndependenceSystem make_partition_matroid(int ground_size, std::vector<DoctorSet> parts,
                                          std::vector<int> quotas, std::optional<int> rank = std::nullopt);
IndependenceSystem make_explicit(int ground_size, std::vector<DoctorSet> maximal_sets);
IndependenceSystem make_intersection(std::vector<IndependenceSystem> children);
IndependenceSystem make_knapsack(int ground_size, std::vector<std::vector<double>> weights);

bool is_independent(const IndependenceSystem& sys, const DoctorSet& s);

/// The system accepting S iff S is a subset of `allowed` and independent in
/// `sys`. Nested restrictions collapse to a single wrapper.
IndependenceSystem restrict(const IndependenceSystem& sys, const DoctorSet& allowed);

/// 1 - max weight over all doctors and dimensions; the epsilon of the
/// knapsack-with-slack class. May be <= 0 when some weight reaches 1.
double slack_epsilon(const Knapsack& k);

/// Slack of the system if it is (a restriction of) a knapsack.
std::optional<double> knapsack_slack(const IndependenceSystem& sys);

/// True for representations that are matroids by construction: capacity,
/// partition matroid, and restrictions/one-child intersections of those.
bool is_structural_matroid(const IndependenceSystem& sys);

/// Number of matroid factors for the structural representations: 1 for
/// capacity/partition matroid, the child count for intersections of such.
/// Empty when the representation carries no matroid guarantee.
std::optional<int> matroid_factor_count(const IndependenceSystem& sys);

/// Exhaustively checks that the empty set is independent and that
/// independence is preserved by single-element deletions (axioms I1/I2).
/// Refuses ground sets above 20 doctors.
bool verify_independence_axioms(const IndependenceSystem& sys, const DoctorSet& ground);

struct ExchangeFailure {
  DoctorSet smaller;
  DoctorSet larger;
};

/// Searches for independent S, T with |T| = |S| + 1 such that no element of
/// T \ S augments S. Empty result means the system satisfies the matroid
/// exchange axiom on `ground` (at most 16 doctors).
std::optional<ExchangeFailure> find_matroid_exchange_failure(const IndependenceSystem& sys,
                                                             const DoctorSet& ground);

bool verify_matroid_exchange(const IndependenceSystem& sys, const DoctorSet& ground);

}  // namespace approxstable

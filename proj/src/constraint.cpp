#include "approxstable/constraint.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "approxstable/config.hpp"

namespace approxstable {

namespace {

void check_ground(const IndependenceSystem& sys, const DoctorSet& s) {
  if (!s.subset_of(DoctorSet::full(sys.ground_size))) throw std::invalid_argument("foreign doctor");
}

}  // namespace

IndependenceSystem make_capacity(int ground_size, int rank) {
  if (rank < 0) throw std::invalid_argument("capacity rank must be nonnegative");
  return {ground_size, Capacity{rank}};
}

IndependenceSystem make_partition_matroid(int ground_size, std::vector<DoctorSet> parts,
                                          std::vector<int> quotas, std::optional<int> rank) {
  if (parts.size() != quotas.size()) throw std::invalid_argument("one quota per part required");
  DoctorSet seen;
  for (const DoctorSet& p : parts) {
    if (p.intersects(seen)) throw std::invalid_argument("partition parts must be disjoint");
    seen |= p;
  }
  for (int q : quotas)
    if (q < 0) throw std::invalid_argument("quotas must be nonnegative");
  if (rank && *rank < 0) throw std::invalid_argument("rank must be nonnegative");
  return {ground_size, PartitionMatroid{std::move(parts), std::move(quotas), rank}};
}

IndependenceSystem make_explicit(int ground_size, std::vector<DoctorSet> maximal_sets) {
  return {ground_size, ExplicitFamily{std::move(maximal_sets)}};
}

IndependenceSystem make_intersection(std::vector<IndependenceSystem> children) {
  if (children.empty()) throw std::invalid_argument("intersection needs at least one child");
  const int n = children.front().ground_size;
  for (const auto& c : children)
    if (c.ground_size != n) throw std::invalid_argument("intersection children disagree on ground set");
  return {n, Intersection{std::move(children)}};
}

IndependenceSystem make_knapsack(int ground_size, std::vector<std::vector<double>> weights) {
  if (weights.size() != static_cast<std::size_t>(ground_size))
    throw std::invalid_argument("knapsack needs one weight row per doctor");
  if (ground_size == 0) throw std::invalid_argument("knapsack needs a nonempty ground set");
  const std::size_t dims = weights.front().size();
  if (dims == 0) throw std::invalid_argument("knapsack needs at least one dimension");
  for (const auto& row : weights) {
    if (row.size() != dims) throw std::invalid_argument("knapsack weight rows must share one length");
    for (double w : row)
      if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("knapsack weights must lie in [0,1]");
  }
  return {ground_size, Knapsack{static_cast<int>(dims), std::move(weights)}};
}

bool is_independent(const IndependenceSystem& sys, const DoctorSet& s) {
  check_ground(sys, s);
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Capacity>) {
          return s.count() <= c.rank;
        } else if constexpr (std::is_same_v<T, PartitionMatroid>) {
          if (c.rank && s.count() > *c.rank) return false;
          for (std::size_t t = 0; t < c.parts.size(); ++t)
            if ((s & c.parts[t]).count() > c.quotas[t]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ExplicitFamily>) {
          if (s.empty()) return true;
          for (const DoctorSet& m : c.maximal_sets)
            if (s.subset_of(m)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, Intersection>) {
          for (const auto& child : c.children)
            if (!is_independent(child, s)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Knapsack>) {
          for (int i = 0; i < c.dims; ++i) {
            double load = 0.0;
            s.for_each([&](int d) { load += c.weights[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)]; });
            if (load > 1.0 + kKnapsackTol) return false;
          }
          return true;
        } else {
          static_assert(std::is_same_v<T, Restriction>);
          return s.subset_of(c.allowed) && is_independent(*c.inner, s);
        }
      },
      sys.expr);
}

IndependenceSystem restrict(const IndependenceSystem& sys, const DoctorSet& allowed) {
  check_ground(sys, allowed);
  if (const auto* r = std::get_if<Restriction>(&sys.expr)) {
    return {sys.ground_size, Restriction{r->inner, r->allowed & allowed}};
  }
  return {sys.ground_size, Restriction{std::make_shared<IndependenceSystem>(sys), allowed}};
}

double slack_epsilon(const Knapsack& k) {
  double max_w = 0.0;
  for (const auto& row : k.weights)
    for (double w : row) max_w = std::max(max_w, w);
  return 1.0 - max_w;
}

std::optional<double> knapsack_slack(const IndependenceSystem& sys) {
  if (const auto* k = std::get_if<Knapsack>(&sys.expr)) return slack_epsilon(*k);
  if (const auto* r = std::get_if<Restriction>(&sys.expr)) return knapsack_slack(*r->inner);
  return std::nullopt;
}

bool is_structural_matroid(const IndependenceSystem& sys) {
  return matroid_factor_count(sys) == 1;
}

std::optional<int> matroid_factor_count(const IndependenceSystem& sys) {
  return std::visit(
      [&](const auto& c) -> std::optional<int> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Capacity> || std::is_same_v<T, PartitionMatroid>) {
          return 1;
        } else if constexpr (std::is_same_v<T, Intersection>) {
          int total = 0;
          for (const auto& child : c.children) {
            auto k = matroid_factor_count(child);
            if (!k) return std::nullopt;
            total += *k;
          }
          return total;
        } else if constexpr (std::is_same_v<T, Restriction>) {
          // A restriction of a matroid is a matroid.
          return matroid_factor_count(*c.inner);
        } else {
          return std::nullopt;
        }
      },
      sys.expr);
}

bool verify_independence_axioms(const IndependenceSystem& sys, const DoctorSet& ground) {
  const std::vector<int> ids = ground.to_vector();
  if (ids.size() > 20)
    throw OracleLimitError("verify_independence_axioms: exhaustive limit is 20 doctors");
  if (!is_independent(sys, DoctorSet{})) return false;
  const std::size_t total = std::size_t{1} << ids.size();
  for (std::size_t mask = 1; mask < total; ++mask) {
    DoctorSet s;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if ((mask >> i) & 1) s.insert(ids[i]);
    if (!is_independent(sys, s)) continue;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!((mask >> i) & 1)) continue;
      DoctorSet t = s;
      t.erase(ids[i]);
      if (!is_independent(sys, t)) return false;
    }
  }
  return true;
}

std::optional<ExchangeFailure> find_matroid_exchange_failure(const IndependenceSystem& sys,
                                                             const DoctorSet& ground) {
  const std::vector<int> ids = ground.to_vector();
  if (ids.size() > 16)
    throw OracleLimitError("verify_matroid_exchange: exhaustive limit is 16 doctors");
  const std::size_t total = std::size_t{1} << ids.size();

  // Independent subsets grouped by size; the axiom for |T| = |S| + 1 implies
  // it for all |S| < |T|.
  std::vector<std::vector<DoctorSet>> by_size(ids.size() + 1);
  for (std::size_t mask = 0; mask < total; ++mask) {
    DoctorSet s;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if ((mask >> i) & 1) s.insert(ids[i]);
    if (is_independent(sys, s)) by_size[static_cast<std::size_t>(s.count())].push_back(s);
  }

  for (std::size_t k = 0; k + 1 < by_size.size(); ++k) {
    for (const DoctorSet& small : by_size[k]) {
      for (const DoctorSet& large : by_size[k + 1]) {
        bool augmentable = false;
        (large - small).for_each([&](int d) {
          if (augmentable) return;
          DoctorSet t = small;
          t.insert(d);
          if (is_independent(sys, t)) augmentable = true;
        });
        if (!augmentable) return ExchangeFailure{small, large};
      }
    }
  }
  return std::nullopt;
}

bool verify_matroid_exchange(const IndependenceSystem& sys, const DoctorSet& ground) {
  return !find_matroid_exchange_failure(sys, ground).has_value();
}

}  // namespace approxstable

#include "approxstable/packing.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "approxstable/config.hpp"

namespace approxstable {

OracleLimits OracleLimits::from_env() {
  OracleLimits limits;
  if (const char* env = std::getenv("APPROX_STABLE_ORACLE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) {
      limits.packing_states = static_cast<std::size_t>(v);
      limits.assignment_states = static_cast<std::size_t>(v);
    }
  }
  return limits;
}

const OracleLimits& oracle_limits() {
  static const OracleLimits limits = OracleLimits::from_env();
  return limits;
}

namespace {

bool greedy_fast_path_applies(const PackingInstance& p) {
  return is_additive_or_cardinality(p.utility) && is_structural_matroid(p.system);
}

PackingSolution solve_greedy_matroid(const PackingInstance& p) {
  std::vector<std::pair<double, int>> ranked;
  p.ground.for_each([&](int d) { ranked.emplace_back(singleton_value(p.utility, d), d); });
  // Decreasing value, index ascending among ties.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<int> order;
  for (const auto& [v, d] : ranked) order.push_back(d);

  DoctorSet chosen;
  for (int d : order) {
    DoctorSet next = chosen;
    next.insert(d);
    if (is_independent(p.system, next)) chosen = next;
  }
  return {chosen, evaluate(p.utility, chosen)};
}

struct Enumerator {
  const PackingInstance& p;
  std::vector<int> ids;
  IncrementalValue inc;
  DoctorSet current;
  DoctorSet best;
  double best_value = 0.0;

  explicit Enumerator(const PackingInstance& inst) : p(inst), ids(inst.ground.to_vector()), inc(inst.utility) {}

  void consider() {
    // The incremental value only gates candidacy; candidates are re-scored
    // with a fresh canonical-order sum so stored values carry no walk drift.
    if (inc.value() < best_value - kStabilityTol) return;
    const double exact = evaluate(p.utility, current);
    if (exact > best_value || (exact == best_value && current.bits_less(best))) {
      best = current;
      best_value = exact;
    }
  }

  void walk(std::size_t pos) {
    if (pos == ids.size()) {
      consider();
      return;
    }
    walk(pos + 1);
    const int d = ids[pos];
    DoctorSet next = current;
    next.insert(d);
    // Supersets of a dependent set are dependent (I2): prune the subtree.
    if (!is_independent(p.system, next)) return;
    current = next;
    inc.add(d);
    walk(pos + 1);
    inc.remove(d);
    current.erase(d);
  }
};

PackingSolution solve_enumerate(const PackingInstance& p) {
  const std::size_t n = static_cast<std::size_t>(p.ground.count());
  const std::size_t budget = oracle_limits().packing_states;
  if (n >= 63 || (std::size_t{1} << n) > budget) {
    throw OracleLimitError("packing: instance too large, 2^" + std::to_string(n) +
                           " subsets exceed the oracle budget of " + std::to_string(budget) +
                           " states (set APPROX_STABLE_ORACLE_LIMIT to raise)");
  }
  Enumerator e(p);
  // The empty set is independent (I1), so best = {} / 0 is a valid seed.
  e.walk(0);
  return {e.best, e.best_value};
}

}  // namespace

PackingSolution solve_exact(const PackingInstance& p) {
  if (!p.ground.subset_of(DoctorSet::full(p.system.ground_size)))
    throw std::invalid_argument("foreign doctor in packing ground set");
  if (greedy_fast_path_applies(p)) return solve_greedy_matroid(p);
  return solve_enumerate(p);
}

double approximation_ratio(const PackingInstance& p, const DoctorSet& candidate) {
  if (!candidate.subset_of(p.ground)) throw std::invalid_argument("candidate outside ground set");
  if (!is_independent(p.system, candidate)) throw std::invalid_argument("candidate is not independent");
  const double opt = solve_exact(p).value;
  const double cand = evaluate(p.utility, candidate);
  if (cand > 0.0) return opt / cand;
  return opt > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

}  // namespace approxstable

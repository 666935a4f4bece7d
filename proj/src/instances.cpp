#include "approxstable/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "approxstable/config.hpp"
#include "approxstable/packing.hpp"
#include "approxstable/rng.hpp"

namespace approxstable {

namespace {

std::vector<std::string> indexed_names(const std::string& prefix, int count, int start = 1) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) names.push_back(prefix + std::to_string(start + i));
  return names;
}

}  // namespace

Market gen_example1(Example1Rendering rendering, std::optional<double> knapsack_eps) {
  Market m;
  m.doctor_names = indexed_names("d", 4);
  m.hospital_names = indexed_names("h", 2);
  m.preferences = {{0, 1}, {0, 1}, {1, 0}, {1, 0}};
  m.utilities = {Cardinality{}, Cardinality{}};

  switch (rendering) {
    case Example1Rendering::Explicit:
      m.constraints.push_back(make_explicit(4, {DoctorSet{0, 2}, DoctorSet{1, 3}}));
      m.constraints.push_back(make_explicit(4, {DoctorSet{0, 3}, DoctorSet{1, 2}}));
      break;
    case Example1Rendering::MatroidPair: {
      auto pm = [](DoctorSet a, DoctorSet b) {
        return make_partition_matroid(4, {a, b}, {1, 1});
      };
      m.constraints.push_back(make_intersection({pm({0, 1}, {2, 3}), pm({0, 3}, {1, 2})}));
      m.constraints.push_back(make_intersection({pm({0, 1}, {2, 3}), pm({0, 2}, {1, 3})}));
      break;
    }
    case Example1Rendering::Knapsack: {
      const double eps = knapsack_eps.value_or(0.25);
      if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("example1 knapsack rendering needs slack in (0, 1/2)");
      const double big = 1.0 - eps;
      m.constraints.push_back(make_knapsack(4, {{big, 0.0}, {0.5, 0.5}, {0.0, big}, {0.5, 0.5}}));
      m.constraints.push_back(make_knapsack(4, {{big, 0.0}, {0.5, 0.5}, {0.5, 0.5}, {0.0, big}}));
      break;
    }
  }
  return m;
}

Market gen_example2() {
  Market m;
  m.doctor_names = indexed_names("d", 4);
  m.hospital_names = indexed_names("h", 2);
  m.preferences = {{0}, {0}, {1, 0}, {0, 1}};

  const double s = std::sqrt(17.0) - 1.0;
  WeightedCoverage cov;
  cov.element_names = indexed_names("a", 5);
  cov.element_weights = {4.0, 4.0, s, s, 4.0};
  cov.covers = {{0, 2}, {1, 3}, {2, 3, 4}, {0, 1}};
  m.utilities.push_back(cov);
  m.utilities.push_back(Additive{{0.0, 0.0, 1.0, 2.0}});

  m.constraints.push_back(make_capacity(4, 2));
  m.constraints.push_back(make_capacity(4, 1));
  return m;
}

namespace {

void validate_spec(const LowerBoundSpec& spec) {
  const int n = static_cast<int>(spec.doctor_names.size());
  if (spec.packing_system.ground_size != n)
    throw ValidationError("lower bound: packing system ground set differs from doctor count");
  if (spec.parts.size() != spec.quotas.size())
    throw ValidationError("lower bound: one quota per part required");
  if (spec.alpha < 1.0) throw ValidationError("lower bound: alpha must be at least 1");

  DoctorSet seen;
  for (std::size_t t = 0; t < spec.parts.size(); ++t) {
    const auto& part = spec.parts[t];
    if (part.empty()) throw ValidationError("lower bound: empty part");
    if (spec.quotas[t] < 1 || spec.quotas[t] > static_cast<int>(part.size()))
      throw ValidationError("lower bound: quota must lie in [1, part size]");
    for (int d : part) {
      if (d < 0 || d >= n) throw ValidationError("lower bound: part names an unknown doctor");
      if (seen.contains(d)) throw ValidationError("lower bound: parts are not disjoint");
      seen.insert(d);
    }
  }
  if (seen != DoctorSet::full(n)) throw ValidationError("lower bound: parts must cover every doctor");
}

}  // namespace

DoctorSet lower_bound_closure(const LowerBoundSpec& spec, const DoctorSet& chosen) {
  DoctorSet cl;
  for (std::size_t t = 0; t < spec.parts.size(); ++t) {
    const auto& part = spec.parts[t];
    int count = 0;
    std::size_t max_pos = 0;  // 1-based position of the highest chosen doctor
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (chosen.contains(part[i])) {
        ++count;
        max_pos = i + 1;
      }
    }
    const std::size_t upto = count < spec.quotas[t] ? part.size() : max_pos;
    for (std::size_t i = 0; i < upto; ++i) cl.insert(part[i]);
  }
  return cl;
}

bool within_part_quotas(const LowerBoundSpec& spec, const DoctorSet& chosen) {
  for (std::size_t t = 0; t < spec.parts.size(); ++t) {
    int count = 0;
    for (int d : spec.parts[t])
      if (chosen.contains(d)) ++count;
    if (count > spec.quotas[t]) return false;
  }
  return true;
}

void verify_lower_bound_gap(const LowerBoundSpec& spec) {
  validate_spec(spec);
  const std::vector<int> ids = [&] {
    std::vector<int> v(spec.doctor_names.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }();
  if ((std::size_t{1} << ids.size()) > oracle_limits().packing_states)
    throw OracleLimitError("lower bound gap check: ground set too large for the oracle budget");

  const std::size_t total = std::size_t{1} << ids.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    DoctorSet s;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if ((mask >> i) & 1) s.insert(ids[i]);
    if (!within_part_quotas(spec, s) || !is_independent(spec.packing_system, s)) continue;
    const DoctorSet cl = lower_bound_closure(spec, s);
    PackingInstance p{cl, spec.packing_utility, restrict(spec.packing_system, cl)};
    const double best = solve_exact(p).value;
    const double have = evaluate(spec.packing_utility, s);
    if (!(best > spec.alpha * have + kStabilityTol))
      throw ValidationError("lower bound gap violated at alpha=" + std::to_string(spec.alpha) +
                            ": some quota-respecting independent set is not improvable within its closure");
  }
}

Market gen_lower_bound_market(const LowerBoundSpec& spec) {
  validate_spec(spec);
  const int n = static_cast<int>(spec.doctor_names.size());

  Market m;
  m.doctor_names = spec.doctor_names;
  m.hospital_names.push_back("h*");

  // hospital_of[t][i] is the rank-1 hospital owned by position i+1 of part t,
  // present only beyond the quota.
  std::vector<std::vector<int>> hospital_of(spec.parts.size());
  for (std::size_t t = 0; t < spec.parts.size(); ++t) {
    hospital_of[t].assign(spec.parts[t].size(), -1);
    for (std::size_t i = static_cast<std::size_t>(spec.quotas[t]); i < spec.parts[t].size(); ++i) {
      hospital_of[t][i] = static_cast<int>(m.hospital_names.size());
      m.hospital_names.push_back("h" + std::to_string(t + 1) + "_" + std::to_string(i + 1));
    }
  }

  m.preferences.assign(static_cast<std::size_t>(n), {});
  for (std::size_t t = 0; t < spec.parts.size(); ++t) {
    const auto& part = spec.parts[t];
    for (std::size_t i = 0; i < part.size(); ++i) {
      auto& prefs = m.preferences[static_cast<std::size_t>(part[i])];
      if (i < static_cast<std::size_t>(spec.quotas[t])) {
        prefs.push_back(0);
        for (std::size_t j = static_cast<std::size_t>(spec.quotas[t]); j < part.size(); ++j)
          prefs.push_back(hospital_of[t][j]);
      } else {
        prefs.push_back(hospital_of[t][i]);
        prefs.push_back(0);
        for (std::size_t j = i + 1; j < part.size(); ++j) prefs.push_back(hospital_of[t][j]);
      }
    }
  }

  m.utilities.push_back(spec.packing_utility);
  m.constraints.push_back(spec.packing_system);
  for (std::size_t t = 0; t < spec.parts.size(); ++t) {
    const auto& part = spec.parts[t];
    Additive decayed;
    decayed.values.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t j = 0; j < part.size(); ++j)
      decayed.values[static_cast<std::size_t>(part[j])] =
          std::pow(spec.alpha + 1.0, -static_cast<double>(j + 1));
    for (std::size_t i = static_cast<std::size_t>(spec.quotas[t]); i < part.size(); ++i) {
      m.utilities.push_back(decayed);
      m.constraints.push_back(make_capacity(n, 1));
    }
  }
  return m;
}

Thm62Market gen_thm62_market(int k, std::optional<double> alpha, bool additive) {
  if (k < 2) throw std::invalid_argument("thm62 needs k >= 2");
  const double a = alpha.value_or(static_cast<double>(k) - 0.1);

  LowerBoundSpec spec;
  for (int t = 1; t <= 2; ++t)
    for (int i = 1; i <= k; ++i)
      spec.doctor_names.push_back("d" + std::to_string(t) + "_" + std::to_string(i));
  const int n = 2 * k;

  DoctorSet first_block, second_block;
  std::vector<int> first, second;
  for (int i = 0; i < k; ++i) {
    first_block.insert(i);
    first.push_back(i);
    second_block.insert(k + i);
    second.push_back(k + i);
  }
  spec.packing_system = make_explicit(n, {first_block, second_block});
  if (additive) {
    spec.packing_utility = Additive{std::vector<double>(static_cast<std::size_t>(n), 1.0)};
  } else {
    spec.packing_utility = Cardinality{};
  }
  spec.parts = {first, second};
  spec.quotas = {1, 1};
  spec.alpha = a;

  verify_lower_bound_gap(spec);
  return {gen_lower_bound_market(spec), a};
}

Thm63Market gen_thm63_market(int rho, double eps, std::optional<int> m_opt,
                             std::optional<double> alpha_opt) {
  if (rho < 1) throw std::invalid_argument("thm63 needs rho >= 1");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("thm63 needs eps in (0, 1/2)");

  const int r = static_cast<int>(std::ceil(1.0 / eps)) - 1;
  const int rr = r * rho;
  const double bound = static_cast<double>(rho) / (2.0 * eps);

  const auto gap_holds = [&](int m) {
    return std::pow(static_cast<double>(rr), 1.0 - 1.0 / static_cast<double>(m)) > bound;
  };
  int m = 0;
  if (m_opt) {
    m = *m_opt;
    if (m < 1 || !gap_holds(m))
      throw std::invalid_argument("thm63: infeasible parameters, (r*rho)^(1-1/m) must exceed rho/(2*eps)");
  } else {
    m = 2;
    while (!gap_holds(m)) ++m;
  }
  const double alpha = alpha_opt.value_or(bound);

  const int n = m * rr + 1;
  LowerBoundSpec spec;
  spec.doctor_names.push_back("d0");
  for (int i = 1; i < n; ++i) spec.doctor_names.push_back("d" + std::to_string(i));

  Additive util;
  util.values.assign(static_cast<std::size_t>(n), 0.0);
  util.values[0] = static_cast<double>(rr);
  std::vector<std::vector<double>> weights(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(rho), 0.0));
  for (int ell = 0; ell < rho; ++ell) weights[0][static_cast<std::size_t>(ell)] = 1.0 - eps;

  Thm63Market out;
  out.blocks.assign(static_cast<std::size_t>(rho),
                    std::vector<std::vector<int>>(static_cast<std::size_t>(m)));
  for (int i = 1; i < n; ++i) {
    const int b = (i - 1) / rr + 1;
    const int within = i - rr * (b - 1);
    const int a = (within - 1) / r + 1;
    util.values[static_cast<std::size_t>(i)] =
        std::pow(static_cast<double>(rr), static_cast<double>(b) / static_cast<double>(m));
    weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)] = 1.0 / static_cast<double>(r);
    out.blocks[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)].push_back(i);
  }

  spec.packing_utility = util;
  spec.packing_system = make_knapsack(n, std::move(weights));
  spec.parts = {{0}, {}};
  for (int i = 1; i < n; ++i) spec.parts[1].push_back(i);
  spec.quotas = {1, 1};
  spec.alpha = alpha;

  verify_lower_bound_gap(spec);
  out.market = gen_lower_bound_market(spec);
  out.alpha = alpha;
  out.r = r;
  out.m = m;
  return out;
}

namespace {

Market single_hospital_market(int doctor_count, Utility utility, IndependenceSystem constraint) {
  Market m;
  m.doctor_names = indexed_names("d", doctor_count);
  m.hospital_names = {"h"};
  m.preferences.assign(static_cast<std::size_t>(doctor_count), {0});
  m.utilities.push_back(std::move(utility));
  m.constraints.push_back(std::move(constraint));
  return m;
}

std::vector<DoctorSet> to_sets(const std::vector<std::vector<int>>& lists) {
  std::vector<DoctorSet> sets;
  sets.reserve(lists.size());
  for (const auto& list : lists) {
    DoctorSet s;
    for (int d : list) s.insert(d);
    sets.push_back(s);
  }
  return sets;
}

}  // namespace

Market gen_typed_quotas(const std::vector<std::vector<int>>& type_partition,
                        const std::vector<int>& type_quotas, int capacity, int doctor_count) {
  return single_hospital_market(
      doctor_count, Cardinality{},
      make_partition_matroid(doctor_count, to_sets(type_partition), type_quotas, capacity));
}

Market gen_overlapping_types(const std::vector<std::vector<std::vector<int>>>& partitions,
                             const std::vector<std::vector<int>>& quotas, int capacity,
                             int doctor_count) {
  if (partitions.empty() || partitions.size() != quotas.size())
    throw std::invalid_argument("overlapping types: one quota table per partition required");
  std::vector<IndependenceSystem> children;
  // The overall capacity folds into the first factor; truncation keeps it a
  // matroid.
  children.push_back(
      make_partition_matroid(doctor_count, to_sets(partitions[0]), quotas[0], capacity));
  for (std::size_t i = 1; i < partitions.size(); ++i)
    children.push_back(make_partition_matroid(doctor_count, to_sets(partitions[i]), quotas[i]));
  return single_hospital_market(doctor_count, Cardinality{}, make_intersection(std::move(children)));
}

Market gen_budget(const std::vector<double>& wages, double budget) {
  if (budget <= 0.0) throw std::invalid_argument("budget must be positive");
  std::vector<std::vector<double>> weights;
  for (double w : wages) {
    if (w < 0.0) throw std::invalid_argument("negative wage");
    if (w > budget) throw std::invalid_argument("wage exceeds budget");
    weights.push_back({w / budget});
  }
  return single_hospital_market(static_cast<int>(wages.size()), Cardinality{},
                                make_knapsack(static_cast<int>(wages.size()), std::move(weights)));
}

Market gen_refugee(const std::vector<std::vector<double>>& needs,
                   const std::vector<double>& capacities) {
  const std::size_t dims = capacities.size();
  if (dims == 0) throw std::invalid_argument("refugee: at least one service required");
  for (double b : capacities)
    if (b <= 0.0) throw std::invalid_argument("refugee: capacities must be positive");
  std::vector<std::vector<double>> weights;
  for (const auto& row : needs) {
    if (row.size() != dims) throw std::invalid_argument("refugee: one need per service required");
    std::vector<double> normalized;
    for (std::size_t s = 0; s < dims; ++s) {
      if (row[s] < 0.0) throw std::invalid_argument("refugee: negative need");
      if (row[s] > capacities[s]) throw std::invalid_argument("refugee: need exceeds capacity");
      normalized.push_back(row[s] / capacities[s]);
    }
    weights.push_back(std::move(normalized));
  }
  return single_hospital_market(static_cast<int>(needs.size()), Cardinality{},
                                make_knapsack(static_cast<int>(needs.size()), std::move(weights)));
}

namespace {

IndependenceSystem random_partition_matroid(SeededRng& rng, int n, bool allow_rank) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  const int part_count = 1 + rng.below(std::min(n, 4));
  std::vector<DoctorSet> parts(static_cast<std::size_t>(part_count));
  for (int i = 0; i < n; ++i) parts[static_cast<std::size_t>(rng.below(part_count))].insert(order[static_cast<std::size_t>(i)]);
  std::vector<DoctorSet> nonempty;
  for (const auto& p : parts)
    if (!p.empty()) nonempty.push_back(p);
  if (nonempty.empty()) nonempty.push_back(DoctorSet::full(n));

  std::vector<int> quotas;
  for (const auto& p : nonempty) quotas.push_back(1 + rng.below(p.count()));
  std::optional<int> rank;
  if (allow_rank && rng.chance(0.5)) rank = 1 + rng.below(n);
  return make_partition_matroid(n, std::move(nonempty), std::move(quotas), rank);
}

Utility random_utility(SeededRng& rng, int n, UtilityClass cls) {
  switch (cls) {
    case UtilityClass::Cardinality:
      return Cardinality{};
    case UtilityClass::Additive: {
      Additive add;
      for (int i = 0; i < n; ++i) add.values.push_back(rng.real(0.1, 10.0));
      return add;
    }
    case UtilityClass::Coverage: {
      WeightedCoverage cov;
      const int elements = n + rng.below(n + 1);
      cov.element_names = indexed_names("e", elements);
      for (int e = 0; e < elements; ++e) cov.element_weights.push_back(rng.real(0.1, 10.0));
      cov.covers.assign(static_cast<std::size_t>(n), {});
      for (int d = 0; d < n; ++d)
        for (int e = 0; e < elements; ++e)
          if (rng.chance(0.4)) cov.covers[static_cast<std::size_t>(d)].push_back(e);
      return cov;
    }
  }
  throw std::invalid_argument("unknown utility class");
}

IndependenceSystem random_constraint(SeededRng& rng, int n, ConstraintClass cls, int k, int rho,
                                     double eps) {
  switch (cls) {
    case ConstraintClass::Capacity:
      return make_capacity(n, 1 + rng.below(std::max(1, n / 2)));
    case ConstraintClass::Matroid:
      return random_partition_matroid(rng, n, /*allow_rank=*/true);
    case ConstraintClass::KMatroidIntersection: {
      if (k < 1) throw std::invalid_argument("matroid intersection needs k >= 1");
      std::vector<IndependenceSystem> children;
      for (int i = 0; i < k; ++i) children.push_back(random_partition_matroid(rng, n, i == 0));
      return make_intersection(std::move(children));
    }
    case ConstraintClass::Knapsack: {
      if (rho < 1) throw std::invalid_argument("knapsack needs rho >= 1");
      if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("knapsack slack must lie in [0, 1)");
      std::vector<std::vector<double>> weights(static_cast<std::size_t>(n));
      for (int d = 0; d < n; ++d)
        for (int i = 0; i < rho; ++i) weights[static_cast<std::size_t>(d)].push_back(rng.real(0.0, 1.0 - eps));
      return make_knapsack(n, std::move(weights));
    }
  }
  throw std::invalid_argument("unknown constraint class");
}

}  // namespace

Market gen_random(std::uint64_t seed, const RandomMarketParams& params) {
  if (params.doctors < 1 || params.doctors > 24)
    throw std::invalid_argument("random markets support 1..24 doctors");
  if (params.hospitals < 1) throw std::invalid_argument("random markets need a hospital");
  SeededRng rng(seed);

  Market m;
  m.doctor_names = indexed_names("d", params.doctors);
  m.hospital_names = indexed_names("h", params.hospitals);

  for (int d = 0; d < params.doctors; ++d) {
    std::vector<int> list;
    for (int h = 0; h < params.hospitals; ++h)
      if (rng.chance(params.accept_prob)) list.push_back(h);
    rng.shuffle(list);
    m.preferences.push_back(std::move(list));
  }

  for (int h = 0; h < params.hospitals; ++h) {
    m.utilities.push_back(random_utility(rng, params.doctors, params.utility));
    m.constraints.push_back(
        random_constraint(rng, params.doctors, params.constraint, params.k, params.rho, params.eps));
  }
  return m;
}

RandomPacking gen_random_packing(std::uint64_t seed, int doctors, UtilityClass utility,
                                 ConstraintClass constraint, int k, int rho, double eps) {
  SeededRng rng(seed);
  RandomPacking out{random_utility(rng, doctors, utility),
                    random_constraint(rng, doctors, constraint, k, rho, eps)};
  return out;
}

}  // namespace approxstable

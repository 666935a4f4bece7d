#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "approxstable/market.hpp"

namespace approxstable {

enum class Example1Rendering { Explicit, MatroidPair, Knapsack };

/// The four-doctor, two-hospital market with cardinality utilities whose
/// crossed constraint families admit no alpha-stable matching below 2. All
/// three constraint renderings agree pointwise as membership oracles; the
/// knapsack one needs a slack parameter in (0, 1/2).
Market gen_example1(Example1Rendering rendering = Example1Rendering::Explicit,
                    std::optional<double> knapsack_eps = std::nullopt);

/// The four-doctor, two-hospital market pairing a weighted-coverage utility
/// with capacity constraints; its best achievable stability factor is
/// (1 + sqrt(17)) / 4.
Market gen_example2();

/// Hypotheses of the lower-bound construction: a packing instance, a
/// partition of its ground set with per-part quotas, and the stability
/// factor alpha being refuted.
struct LowerBoundSpec {
  std::vector<std::string> doctor_names;
  Utility packing_utility;
  IndependenceSystem packing_system;
  std::vector<std::vector<int>> parts;  // ordered: position in a part matters
  std::vector<int> quotas;
  double alpha = 1.0;
};

/// Part-wise closure of a doctor set: a part contributes all of itself while
/// the set holds fewer than its quota there, otherwise its prefix up to the
/// highest selected position.
DoctorSet lower_bound_closure(const LowerBoundSpec& spec, const DoctorSet& chosen);

/// Membership in the quota family: at most quota_t doctors per part.
bool within_part_quotas(const LowerBoundSpec& spec, const DoctorSet& chosen);

/// Checks the construction's gap condition exhaustively: every independent
/// set within the quotas must be beaten by a factor above alpha somewhere in
/// its closure. Throws ValidationError on mis-parameterized inputs.
void verify_lower_bound_gap(const LowerBoundSpec& spec);

/// Builds the market that turns the gap condition into nonexistence: one
/// main hospital carrying the packing instance, plus rank-1 hospitals per
/// part position beyond the quota, with geometrically decaying additive
/// utilities that chain doctors toward the main hospital.
Market gen_lower_bound_market(const LowerBoundSpec& spec);

struct Thm62Market {
  Market market;
  double alpha;  // the factor refuted: no alpha-stable matching exists
};

/// Two parts of k doctors, union-of-two-blocks constraint, unit utilities:
/// no alpha-stable matching for alpha < k. `additive` swaps the cardinality
/// utility for the equivalent all-ones additive one.
Thm62Market gen_thm62_market(int k, std::optional<double> alpha = std::nullopt, bool additive = false);

struct Thm63Market {
  Market market;
  double alpha;
  int r;
  int m;
  // blocks[a-1][b-1] lists the doctors loading dimension a at utility scale
  // (r*rho)^(b/m).
  std::vector<std::vector<std::vector<int>>> blocks;
};

/// Knapsack lower bound: one heavy doctor plus m*r*rho light ones arranged in
/// blocks; no (rho/2eps)-stable matching. m defaults to the smallest value
/// satisfying the gap inequality.
Thm63Market gen_thm63_market(int rho, double eps, std::optional<int> m = std::nullopt,
                             std::optional<double> alpha = std::nullopt);

/// Single-hospital application encodings.
Market gen_typed_quotas(const std::vector<std::vector<int>>& type_partition,
                        const std::vector<int>& type_quotas, int capacity, int doctor_count);
Market gen_overlapping_types(const std::vector<std::vector<std::vector<int>>>& partitions,
                             const std::vector<std::vector<int>>& quotas, int capacity,
                             int doctor_count);
Market gen_budget(const std::vector<double>& wages, double budget);
Market gen_refugee(const std::vector<std::vector<double>>& needs,
                   const std::vector<double>& capacities);

enum class UtilityClass { Cardinality, Additive, Coverage };
enum class ConstraintClass { Capacity, Matroid, KMatroidIntersection, Knapsack };

struct RandomMarketParams {
  int doctors = 6;
  int hospitals = 2;
  UtilityClass utility = UtilityClass::Cardinality;
  ConstraintClass constraint = ConstraintClass::Matroid;
  int k = 2;           // matroid intersection factors
  int rho = 1;         // knapsack dimensions
  double eps = 0.25;   // knapsack slack: weights drawn from [0, 1-eps]
  double accept_prob = 0.8;
};

/// Seed-deterministic random market; constraints are independence systems by
/// construction and knapsack weights respect the requested slack.
Market gen_random(std::uint64_t seed, const RandomMarketParams& params);

/// Seed-deterministic standalone packing instance over `doctors` elements,
/// for online competitive-ratio harnesses.
struct RandomPacking {
  Utility utility;
  IndependenceSystem system;
};
RandomPacking gen_random_packing(std::uint64_t seed, int doctors, UtilityClass utility,
                                 ConstraintClass constraint, int k, int rho, double eps);

}  // namespace approxstable

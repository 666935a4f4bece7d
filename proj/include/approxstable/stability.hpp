#pragma once

#include <optional>
#include <vector>

#include "approxstable/market.hpp"

namespace approxstable {

struct BlockingCoalition {
  int hospital = -1;
  DoctorSet coalition;
  double coalition_value = 0.0;
  double current_value = 0.0;
};

struct HospitalStability {
  int hospital = -1;
  DoctorSet candidate_pool;   // doctors weakly preferring this hospital
  double opt_value = 0.0;     // best independent coalition within the pool
  double current_value = 0.0; // utility of the assigned set
};

struct StabilityReport {
  double alpha_tested = 1.0;
  std::optional<BlockingCoalition> blocking;  // first blocking hospital in index order
  std::vector<HospitalStability> per_hospital;

  bool stable() const { return !blocking.has_value(); }
};

/// Doctors for whom h is weakly preferred to their assignment: everyone
/// matched to h, plus doctors listing h ahead of their current hospital, plus
/// unmatched doctors who find h acceptable.
DoctorSet weakly_preferring_pool(const Market& m, const Matching& mu, int h);

/// Checks alpha-stability by solving, per hospital, the exact packing over
/// the constraint restricted to the weakly-preferring pool: blocked iff some
/// hospital's optimum exceeds alpha times its current utility (strictly,
/// beyond kStabilityTol).
StabilityReport alpha_stability_check(const Market& m, const Matching& mu, double alpha);

/// Smallest alpha at which the matching is stable: max over hospitals of
/// OPT/current, with 0/0 -> 1 and positive/0 -> +infinity.
double min_alpha(const Market& m, const Matching& mu);

struct EnumerationResult {
  std::optional<Matching> witness;  // set when searching a specific alpha
  double best_alpha = 1.0;          // min over feasible matchings of min_alpha
  Matching best_matching;           // attains best_alpha
  std::size_t feasible_count = 0;
};

/// Enumerates every feasible matching (each doctor to an acceptable hospital
/// or unmatched) and returns the first one passing alpha_stability_check, or
/// nullopt in `witness` if none does.
EnumerationResult exists_stable_bruteforce(const Market& m, double alpha);

/// Full scan reporting the minimum achievable min_alpha and its matching.
EnumerationResult best_alpha_search(const Market& m);

}  // namespace approxstable

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace approxstable {

// Strict comparisons in stability logic: x beats y iff x > y + kStabilityTol.
// Blocking is defined by a strict inequality, so threshold cases resolve to
// "stable".
inline constexpr double kStabilityTol = 1e-9;

// Absolute slack on knapsack loads; generated weights such as 1/r do not sum
// exactly in binary floating point.
inline constexpr double kKnapsackTol = 1e-12;

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(int round, const std::string& reason)
      : std::runtime_error("contract violation at round " + std::to_string(round) + ": " + reason),
        round(round),
        reason(reason) {}
  int round;
  std::string reason;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration budgets for the exhaustive oracles. APPROX_STABLE_ORACLE_LIMIT
/// (a state count) overrides both: exact packing enumerates up to
/// `packing_states` subsets (default 2^24, i.e. 24 doctors), matching
/// enumeration up to `assignment_states` assignments (default 1e7).
struct OracleLimits {
  std::size_t packing_states = std::size_t{1} << 24;
  std::size_t assignment_states = 10'000'000;

  static OracleLimits from_env();
};

const OracleLimits& oracle_limits();

}  // namespace approxstable

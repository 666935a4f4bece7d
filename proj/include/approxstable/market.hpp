#pragma once

#include <optional>
#include <string>
#include <vector>

#include "approxstable/constraint.hpp"
#include "approxstable/doctor_set.hpp"
#include "approxstable/utility.hpp"

namespace approxstable {

inline constexpr int kUnmatched = -1;

/// A two-sided market: doctors with strict preference lists over acceptable
/// hospitals, hospitals with a utility function and an independence-system
/// constraint over the doctor set. Immutable after construction; safe to
/// share across threads.
struct Market {
  std::vector<std::string> doctor_names;
  std::vector<std::string> hospital_names;
  std::vector<std::vector<int>> preferences;  // per doctor: hospital indices, best first
  std::vector<Utility> utilities;             // per hospital
  std::vector<IndependenceSystem> constraints;  // per hospital

  int doctor_count() const { return static_cast<int>(doctor_names.size()); }
  int hospital_count() const { return static_cast<int>(hospital_names.size()); }

  /// Position of h in d's list, or nullopt when h is unacceptable to d.
  std::optional<int> preference_rank(int d, int h) const;
  bool acceptable(int d, int h) const { return preference_rank(d, h).has_value(); }
};

/// Each doctor matched to at most one hospital, stored as hospital index or
/// kUnmatched. Pairs only ever name acceptable hospitals.
struct Matching {
  std::vector<int> assignment;

  static Matching unmatched(int doctor_count) { return {std::vector<int>(static_cast<std::size_t>(doctor_count), kUnmatched)}; }
  int doctor_count() const { return static_cast<int>(assignment.size()); }
};

std::vector<std::string> validate_market(const Market& m);
std::vector<std::string> validate_matching(const Market& m, const Matching& mu);

DoctorSet assigned_set(const Matching& mu, int h);
int assigned_hospital(const Matching& mu, int d);

bool is_feasible(const Market& m, const Matching& mu);

}  // namespace approxstable

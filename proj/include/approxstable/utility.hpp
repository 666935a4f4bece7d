#pragma once

#include <string>
#include <variant>
#include <vector>

#include "approxstable/doctor_set.hpp"

namespace approxstable {

/// u(S) = |S|.
struct Cardinality {};

/// u(S) = sum of per-doctor values; values indexed by doctor, all >= 0.
struct Additive {
  std::vector<double> values;
};

/// u(S) = total weight of the elements covered by the union of the members'
/// cover sets. Canonical monotone submodular utility; every submodular
/// instance this library constructs is of this form.
struct WeightedCoverage {
  std::vector<std::string> element_names;
  std::vector<double> element_weights;
  std::vector<std::vector<int>> covers;  // per doctor: sorted element indices
};

using Utility = std::variant<Cardinality, Additive, WeightedCoverage>;

double evaluate(const Utility& u, const DoctorSet& s);

/// Marginal value of a single doctor, u({d}). Used by the density greedy.
double singleton_value(const Utility& u, int d);

bool is_cardinality(const Utility& u);
bool is_additive_or_cardinality(const Utility& u);

/// Exhaustively checks u(S) <= u(S u {d}) over all S within `ground`.
/// Ground sets above 20 doctors are refused.
bool verify_monotone(const Utility& u, const DoctorSet& ground);

/// Exhaustively checks u(A) + u(B) >= u(A u B) + u(A n B) over all pairs
/// within `ground` (at most 16 doctors).
bool verify_submodular(const Utility& u, const DoctorSet& ground);

/// Incremental evaluator for subset walks: push/pop one doctor in O(1)
/// (additive) or O(|cover|) (coverage).
class IncrementalValue {
 public:
  explicit IncrementalValue(const Utility& u);

  void add(int d);
  void remove(int d);
  double value() const { return value_; }

 private:
  const Utility* u_;
  double value_ = 0.0;
  std::vector<int> cover_counts_;  // coverage only: per element
};

}  // namespace approxstable

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "approxstable/constraint.hpp"
#include "approxstable/doctor_set.hpp"
#include "approxstable/utility.hpp"

namespace approxstable {

/// Online packing with cancellation. Elements arrive one at a time; the
/// selection after each round must be independent, may only grow by the new
/// arrival, and may cancel previously accepted elements. A canceled or
/// rejected element never re-enters. Same prefix of arrivals, same selection.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual void arrive(int d) = 0;
  virtual const DoctorSet& selection() const = 0;
};

enum class OnlineAlgKind { GreedyMatroid, GreedyKnapsack, OfflineExact };

std::string to_string(OnlineAlgKind kind);
OnlineAlgKind online_alg_kind_from_string(const std::string& name);

/// Binds an algorithm to one hospital's utility and constraint. Both must
/// outlive the returned object. GreedyKnapsack requires a knapsack system
/// and a cardinality or additive utility.
std::unique_ptr<OnlineAlgorithm> make_online_algorithm(OnlineAlgKind kind,
                                                       const IndependenceSystem& system,
                                                       const Utility& utility);

/// Competitive ratio certified by the representation: 1 for the exact
/// replay, the matroid factor count k for the greedy on structural
/// k-matroid intersections, rho for the density greedy under cardinality and
/// rho/slack under additive utility. +infinity when nothing is certified.
double certified_ratio(OnlineAlgKind kind, const IndependenceSystem& system, const Utility& utility);

/// Wraps an algorithm and enforces the online interface invariants on every
/// round: selection within previous selection plus the arrival, independent,
/// and never resurrecting a rejected element.
class OnlineRun {
 public:
  OnlineRun(std::unique_ptr<OnlineAlgorithm> alg, const IndependenceSystem& system);

  void arrive(int d);

  const DoctorSet& selection() const { return alg_->selection(); }
  const DoctorSet& rejected() const { return rejected_; }
  const std::vector<int>& arrivals() const { return arrivals_; }
  int rounds() const { return static_cast<int>(arrivals_.size()); }

 private:
  std::unique_ptr<OnlineAlgorithm> alg_;
  const IndependenceSystem* system_;
  std::vector<int> arrivals_;
  DoctorSet arrived_;
  DoctorSet rejected_;
};

/// Runs a fresh algorithm over the arrival order and returns the selection
/// after every prefix, validating the interface invariants along the way.
std::vector<DoctorSet> replay(OnlineAlgKind kind, const IndependenceSystem& system,
                              const Utility& utility, const std::vector<int>& arrivals);

}  // namespace approxstable

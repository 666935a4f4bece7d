#pragma once

#include "approxstable/constraint.hpp"
#include "approxstable/doctor_set.hpp"
#include "approxstable/utility.hpp"

namespace approxstable {

struct PackingInstance {
  DoctorSet ground;
  Utility utility;
  IndependenceSystem system;
};

struct PackingSolution {
  DoctorSet chosen;
  double value = 0.0;
};

/// Maximum-utility independent subset of the ground set. Ties resolve to the
/// smallest chosen set in bit order, so output is reproducible. Additive or
/// cardinality utility over a structural matroid takes a greedy fast path
/// (exact for matroids); everything else is enumerated with subtrees pruned
/// below dependent sets, up to the oracle's state budget.
PackingSolution solve_exact(const PackingInstance& p);

/// OPT / u(candidate), with 0/0 -> 1 and positive/0 -> +infinity. The
/// candidate must be an independent subset of the ground set.
double approximation_ratio(const PackingInstance& p, const DoctorSet& candidate);

}  // namespace approxstable

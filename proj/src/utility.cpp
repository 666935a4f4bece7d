#include "approxstable/utility.hpp"

#include <stdexcept>

#include "approxstable/config.hpp"

namespace approxstable {

namespace {

void check_ground(std::size_t known, const DoctorSet& s) {
  bool ok = true;
  s.for_each([&](int d) {
    if (static_cast<std::size_t>(d) >= known) ok = false;
  });
  if (!ok) throw std::invalid_argument("foreign doctor");
}

}  // namespace

double evaluate(const Utility& u, const DoctorSet& s) {
  if (const auto* add = std::get_if<Additive>(&u)) {
    check_ground(add->values.size(), s);
    double total = 0.0;
    s.for_each([&](int d) { total += add->values[static_cast<std::size_t>(d)]; });
    return total;
  }
  if (const auto* cov = std::get_if<WeightedCoverage>(&u)) {
    check_ground(cov->covers.size(), s);
    std::vector<char> covered(cov->element_weights.size(), 0);
    double total = 0.0;
    s.for_each([&](int d) {
      for (int e : cov->covers[static_cast<std::size_t>(d)]) {
        if (!covered[static_cast<std::size_t>(e)]) {
          covered[static_cast<std::size_t>(e)] = 1;
          total += cov->element_weights[static_cast<std::size_t>(e)];
        }
      }
    });
    return total;
  }
  return static_cast<double>(s.count());
}

double singleton_value(const Utility& u, int d) {
  return evaluate(u, DoctorSet::single(d));
}

bool is_cardinality(const Utility& u) {
  return std::holds_alternative<Cardinality>(u);
}

bool is_additive_or_cardinality(const Utility& u) {
  return !std::holds_alternative<WeightedCoverage>(u);
}

bool verify_monotone(const Utility& u, const DoctorSet& ground) {
  const std::vector<int> ids = ground.to_vector();
  if (ids.size() > 20) throw OracleLimitError("verify_monotone: exhaustive limit is 20 doctors");
  const std::size_t total = std::size_t{1} << ids.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    DoctorSet s;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if ((mask >> i) & 1) s.insert(ids[i]);
    const double base = evaluate(u, s);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if ((mask >> i) & 1) continue;
      DoctorSet t = s;
      t.insert(ids[i]);
      if (evaluate(u, t) < base - kStabilityTol) return false;
    }
  }
  return true;
}

bool verify_submodular(const Utility& u, const DoctorSet& ground) {
  const std::vector<int> ids = ground.to_vector();
  if (ids.size() > 16) throw OracleLimitError("verify_submodular: exhaustive limit is 16 doctors");
  const std::size_t total = std::size_t{1} << ids.size();
  std::vector<double> value(total);
  std::vector<DoctorSet> sets(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if ((mask >> i) & 1) sets[mask].insert(ids[i]);
    value[mask] = evaluate(u, sets[mask]);
  }
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t b = a; b < total; ++b) {
      if (value[a] + value[b] < value[a | b] + value[a & b] - kStabilityTol) return false;
    }
  }
  return true;
}

IncrementalValue::IncrementalValue(const Utility& u) : u_(&u) {
  if (const auto* cov = std::get_if<WeightedCoverage>(u_)) {
    cover_counts_.assign(cov->element_weights.size(), 0);
  }
}

void IncrementalValue::add(int d) {
  if (const auto* add = std::get_if<Additive>(u_)) {
    value_ += add->values.at(static_cast<std::size_t>(d));
  } else if (const auto* cov = std::get_if<WeightedCoverage>(u_)) {
    for (int e : cov->covers.at(static_cast<std::size_t>(d))) {
      if (cover_counts_[static_cast<std::size_t>(e)]++ == 0)
        value_ += cov->element_weights[static_cast<std::size_t>(e)];
    }
  } else {
    value_ += 1.0;
  }
}

void IncrementalValue::remove(int d) {
  if (const auto* add = std::get_if<Additive>(u_)) {
    value_ -= add->values.at(static_cast<std::size_t>(d));
  } else if (const auto* cov = std::get_if<WeightedCoverage>(u_)) {
    for (int e : cov->covers.at(static_cast<std::size_t>(d))) {
      if (--cover_counts_[static_cast<std::size_t>(e)] == 0)
        value_ -= cov->element_weights[static_cast<std::size_t>(e)];
    }
  } else {
    value_ -= 1.0;
  }
}

}  // namespace approxstable

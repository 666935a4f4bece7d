#include "approxstable/stability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "approxstable/config.hpp"
#include "approxstable/packing.hpp"

namespace approxstable {

DoctorSet weakly_preferring_pool(const Market& m, const Matching& mu, int h) {
  DoctorSet pool;
  for (int d = 0; d < m.doctor_count(); ++d) {
    const int current = mu.assignment[static_cast<std::size_t>(d)];
    if (current == h) {
      pool.insert(d);
      continue;
    }
    const auto rank_h = m.preference_rank(d, h);
    if (!rank_h) continue;  // unlisted hospitals lose to being unmatched
    if (current == kUnmatched) {
      pool.insert(d);
    } else {
      const auto rank_cur = m.preference_rank(d, current);
      if (rank_cur && *rank_h < *rank_cur) pool.insert(d);
    }
  }
  return pool;
}

namespace {

struct HospitalRow {
  HospitalStability stats;
  DoctorSet opt_set;
};

HospitalRow hospital_row(const Market& m, const Matching& mu, int h) {
  HospitalRow row;
  row.stats.hospital = h;
  row.stats.candidate_pool = weakly_preferring_pool(m, mu, h);
  row.stats.current_value = evaluate(m.utilities[static_cast<std::size_t>(h)], assigned_set(mu, h));
  PackingInstance p{row.stats.candidate_pool, m.utilities[static_cast<std::size_t>(h)],
                    restrict(m.constraints[static_cast<std::size_t>(h)], row.stats.candidate_pool)};
  const PackingSolution best = solve_exact(p);
  row.stats.opt_value = best.value;
  row.opt_set = best.chosen;
  return row;
}

bool blocks(double opt, double current, double alpha) {
  return opt > alpha * current + kStabilityTol;
}

double ratio(double opt, double current) {
  if (current > 0.0) return opt / current;
  return opt > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

void require_feasible(const Market& m, const Matching& mu) {
  if (mu.doctor_count() != m.doctor_count())
    throw std::invalid_argument("matching doctor count differs from market");
  if (!is_feasible(m, mu)) throw std::invalid_argument("matching is infeasible");
}

}  // namespace

StabilityReport alpha_stability_check(const Market& m, const Matching& mu, double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("alpha must be at least 1");
  require_feasible(m, mu);

  StabilityReport report;
  report.alpha_tested = alpha;
  for (int h = 0; h < m.hospital_count(); ++h) {
    HospitalRow row = hospital_row(m, mu, h);
    if (!report.blocking && blocks(row.stats.opt_value, row.stats.current_value, alpha))
      report.blocking =
          BlockingCoalition{h, row.opt_set, row.stats.opt_value, row.stats.current_value};
    report.per_hospital.push_back(row.stats);
  }
  return report;
}

double min_alpha(const Market& m, const Matching& mu) {
  require_feasible(m, mu);
  double alpha = 1.0;
  for (int h = 0; h < m.hospital_count(); ++h) {
    const HospitalRow row = hospital_row(m, mu, h);
    alpha = std::max(alpha, ratio(row.stats.opt_value, row.stats.current_value));
  }
  return alpha;
}

namespace {

// Depth-first walk over assignments of doctors to acceptable hospitals or
// nothing, pruning a subtree as soon as some hospital's tentative set turns
// dependent (supersets stay dependent by I2). Scans everything so best_alpha
// is exact; the witness records the first stable matching encountered.
class MatchingEnumerator {
 public:
  MatchingEnumerator(const Market& m, std::optional<double> alpha) : m_(m), alpha_(alpha) {
    double states = 1.0;
    for (int d = 0; d < m_.doctor_count(); ++d)
      states *= static_cast<double>(m_.preferences[static_cast<std::size_t>(d)].size() + 1);
    if (states > static_cast<double>(oracle_limits().assignment_states))
      throw OracleLimitError("matching enumeration: too many assignments for the oracle budget of " +
                             std::to_string(oracle_limits().assignment_states) +
                             " (set APPROX_STABLE_ORACLE_LIMIT to raise)");
    assigned_.resize(static_cast<std::size_t>(m_.hospital_count()));
    current_ = Matching::unmatched(m_.doctor_count());
    result_.best_alpha = std::numeric_limits<double>::infinity();
    result_.best_matching = current_;
  }

  EnumerationResult run() {
    walk(0);
    return result_;
  }

 private:
  void walk(int d) {
    if (d == m_.doctor_count()) {
      visit_leaf();
      return;
    }
    walk(d + 1);  // leave d unmatched first
    for (int h : m_.preferences[static_cast<std::size_t>(d)]) {
      DoctorSet next = assigned_[static_cast<std::size_t>(h)];
      next.insert(d);
      if (!is_independent(m_.constraints[static_cast<std::size_t>(h)], next)) continue;
      assigned_[static_cast<std::size_t>(h)] = next;
      current_.assignment[static_cast<std::size_t>(d)] = h;
      walk(d + 1);
      current_.assignment[static_cast<std::size_t>(d)] = kUnmatched;
      assigned_[static_cast<std::size_t>(h)].erase(d);
    }
  }

  void visit_leaf() {
    result_.feasible_count += 1;
    double worst = 1.0;
    bool stable_at_alpha = alpha_.has_value();
    for (int h = 0; h < m_.hospital_count(); ++h) {
      const HospitalRow row = hospital_row(m_, current_, h);
      worst = std::max(worst, ratio(row.stats.opt_value, row.stats.current_value));
      if (alpha_ && blocks(row.stats.opt_value, row.stats.current_value, *alpha_))
        stable_at_alpha = false;
    }
    if (worst < result_.best_alpha) {
      result_.best_alpha = worst;
      result_.best_matching = current_;
    }
    if (stable_at_alpha && !result_.witness) result_.witness = current_;
  }

  const Market& m_;
  std::optional<double> alpha_;
  std::vector<DoctorSet> assigned_;
  Matching current_;
  EnumerationResult result_;
};

}  // namespace

EnumerationResult exists_stable_bruteforce(const Market& m, double alpha) {
  return MatchingEnumerator(m, alpha).run();
}

EnumerationResult best_alpha_search(const Market& m) {
  return MatchingEnumerator(m, std::nullopt).run();
}

}  // namespace approxstable

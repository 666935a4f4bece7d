#include "approxstable/online.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "approxstable/config.hpp"
#include "approxstable/packing.hpp"

namespace approxstable {

namespace {

class GreedyMatroidAlgorithm final : public OnlineAlgorithm {
 public:
  GreedyMatroidAlgorithm(const IndependenceSystem& system) : system_(&system) {}

  void arrive(int d) override {
    DoctorSet next = selection_;
    next.insert(d);
    if (is_independent(*system_, next)) selection_ = next;
  }

  const DoctorSet& selection() const override { return selection_; }

 private:
  const IndependenceSystem* system_;
  DoctorSet selection_;
};

// Density greedy with removal: keep the new arrival, then while the sum of
// per-element max-dimension weights exceeds 1 drop a minimum-density element
// (density = u(d) / max_i w(d,i)). Ties drop the most recent arrival;
// density 0/0 counts as -infinity, v/0 with v > 0 as +infinity.
class GreedyKnapsackAlgorithm final : public OnlineAlgorithm {
 public:
  GreedyKnapsackAlgorithm(const Knapsack& knapsack, const Utility& utility)
      : knapsack_(&knapsack), utility_(&utility) {}

  void arrive(int d) override {
    Entry e;
    e.doctor = d;
    e.max_weight = 0.0;
    for (double w : knapsack_->weights.at(static_cast<std::size_t>(d))) e.max_weight = std::max(e.max_weight, w);
    const double v = singleton_value(*utility_, d);
    if (e.max_weight > 0.0) {
      e.density = v / e.max_weight;
    } else {
      e.density = v > 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    }
    e.seq = seq_++;

    kept_.push_back(e);
    max_weight_sum_ += e.max_weight;
    selection_.insert(d);

    while (max_weight_sum_ > 1.0 + kKnapsackTol) {
      std::size_t worst = 0;
      for (std::size_t i = 1; i < kept_.size(); ++i) {
        if (kept_[i].density < kept_[worst].density ||
            (kept_[i].density == kept_[worst].density && kept_[i].seq > kept_[worst].seq))
          worst = i;
      }
      max_weight_sum_ -= kept_[worst].max_weight;
      selection_.erase(kept_[worst].doctor);
      kept_.erase(kept_.begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }

  const DoctorSet& selection() const override { return selection_; }

 private:
  struct Entry {
    int doctor;
    int seq;
    double max_weight;
    double density;
  };

  const Knapsack* knapsack_;
  const Utility* utility_;
  std::vector<Entry> kept_;
  DoctorSet selection_;
  double max_weight_sum_ = 0.0;
  int seq_ = 0;
};

// 1-competitive reference: re-solves the offline packing over the arrived
// prefix after every round. Exponential, and free to break the no-return
// rule on non-matroid instances; OnlineRun reports that as a contract
// violation.
class OfflineExactAlgorithm final : public OnlineAlgorithm {
 public:
  OfflineExactAlgorithm(const IndependenceSystem& system, const Utility& utility)
      : system_(&system), utility_(&utility) {}

  void arrive(int d) override {
    arrived_.insert(d);
    PackingInstance p{arrived_, *utility_, restrict(*system_, arrived_)};
    selection_ = solve_exact(p).chosen;
  }

  const DoctorSet& selection() const override { return selection_; }

 private:
  const IndependenceSystem* system_;
  const Utility* utility_;
  DoctorSet arrived_;
  DoctorSet selection_;
};

}  // namespace

std::string to_string(OnlineAlgKind kind) {
  switch (kind) {
    case OnlineAlgKind::GreedyMatroid: return "greedy_matroid";
    case OnlineAlgKind::GreedyKnapsack: return "greedy_knapsack";
    case OnlineAlgKind::OfflineExact: return "offline_exact";
  }
  return "unknown";
}

OnlineAlgKind online_alg_kind_from_string(const std::string& name) {
  if (name == "greedy_matroid") return OnlineAlgKind::GreedyMatroid;
  if (name == "greedy_knapsack") return OnlineAlgKind::GreedyKnapsack;
  if (name == "offline_exact") return OnlineAlgKind::OfflineExact;
  throw std::invalid_argument("unknown algorithm: " + name +
                              " (expected greedy_matroid, greedy_knapsack, or offline_exact)");
}

std::unique_ptr<OnlineAlgorithm> make_online_algorithm(OnlineAlgKind kind,
                                                       const IndependenceSystem& system,
                                                       const Utility& utility) {
  switch (kind) {
    case OnlineAlgKind::GreedyMatroid:
      return std::make_unique<GreedyMatroidAlgorithm>(system);
    case OnlineAlgKind::GreedyKnapsack: {
      const auto* k = std::get_if<Knapsack>(&system.expr);
      if (!k) throw std::invalid_argument("greedy_knapsack requires a knapsack constraint");
      if (!is_additive_or_cardinality(utility))
        throw std::invalid_argument("unsupported utility class: greedy_knapsack handles cardinality or additive utilities");
      return std::make_unique<GreedyKnapsackAlgorithm>(*k, utility);
    }
    case OnlineAlgKind::OfflineExact:
      return std::make_unique<OfflineExactAlgorithm>(system, utility);
  }
  throw std::invalid_argument("unknown algorithm kind");
}

double certified_ratio(OnlineAlgKind kind, const IndependenceSystem& system, const Utility& utility) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (kind) {
    case OnlineAlgKind::OfflineExact:
      return 1.0;
    case OnlineAlgKind::GreedyMatroid: {
      if (!is_cardinality(utility)) return inf;
      const auto k = matroid_factor_count(system);
      return k ? static_cast<double>(*k) : inf;
    }
    case OnlineAlgKind::GreedyKnapsack: {
      const auto* k = std::get_if<Knapsack>(&system.expr);
      if (!k) return inf;
      if (is_cardinality(utility)) return static_cast<double>(k->dims);
      if (is_additive_or_cardinality(utility)) {
        const double slack = slack_epsilon(*k);
        return slack > 0.0 ? static_cast<double>(k->dims) / slack : inf;
      }
      return inf;
    }
  }
  return inf;
}

OnlineRun::OnlineRun(std::unique_ptr<OnlineAlgorithm> alg, const IndependenceSystem& system)
    : alg_(std::move(alg)), system_(&system) {}

void OnlineRun::arrive(int d) {
  if (arrived_.contains(d)) throw std::invalid_argument("repeated arrival");
  const DoctorSet before = alg_->selection();
  alg_->arrive(d);
  const DoctorSet after = alg_->selection();
  const int round = rounds() + 1;

  DoctorSet allowed = before;
  allowed.insert(d);
  if (after.intersects(rejected_))
    throw ContractViolation(round, "selection resurrected a rejected element");
  if (!after.subset_of(allowed))
    throw ContractViolation(round, "selection grew beyond the previous selection plus the arrival");
  if (!is_independent(*system_, after))
    throw ContractViolation(round, "selection is not independent");

  arrivals_.push_back(d);
  arrived_.insert(d);
  rejected_ |= allowed - after;
}

std::vector<DoctorSet> replay(OnlineAlgKind kind, const IndependenceSystem& system,
                              const Utility& utility, const std::vector<int>& arrivals) {
  OnlineRun run(make_online_algorithm(kind, system, utility), system);
  std::vector<DoctorSet> selections;
  selections.reserve(arrivals.size());
  for (int d : arrivals) {
    run.arrive(d);
    selections.push_back(run.selection());
  }
  return selections;
}

}  // namespace approxstable

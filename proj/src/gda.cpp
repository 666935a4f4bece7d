#include "approxstable/gda.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

#include "approxstable/config.hpp"

namespace approxstable {

TieBreak tie_break_from_string(const std::string& name, std::uint64_t* seed) {
  if (name == "fifo") return TieBreak::Fifo;
  if (name == "lifo") return TieBreak::Lifo;
  if (name.rfind("seeded:", 0) == 0) {
    if (seed) *seed = std::stoull(name.substr(7));
    return TieBreak::Seeded;
  }
  throw std::invalid_argument("unknown tie-break: " + name + " (expected fifo, lifo, or seeded:<n>)");
}

namespace {

// Active doctors under the selected discipline. Doctors are pushed in
// ascending index when several activate in one round, so runs are
// reproducible for every discipline.
class ProposalQueue {
 public:
  ProposalQueue(TieBreak tie_break, std::uint64_t seed) : tie_break_(tie_break), rng_(seed) {}

  void push(int d) { items_.push_back(d); }
  bool empty() const { return items_.empty(); }

  DoctorSet snapshot() const {
    DoctorSet s;
    for (int d : items_) s.insert(d);
    return s;
  }

  int pop() {
    std::size_t at = 0;
    switch (tie_break_) {
      case TieBreak::Fifo: at = 0; break;
      case TieBreak::Lifo: at = items_.size() - 1; break;
      case TieBreak::Seeded: at = static_cast<std::size_t>(rng_() % items_.size()); break;
    }
    const int d = items_[at];
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(at));
    return d;
  }

 private:
  TieBreak tie_break_;
  std::mt19937_64 rng_;
  std::deque<int> items_;
};

}  // namespace

std::pair<Matching, GdaTrace> run_gda(const Market& m,
                                      std::vector<std::unique_ptr<OnlineAlgorithm>> algorithms,
                                      const GdaOptions& options) {
  const int n = m.doctor_count();
  const int hm = m.hospital_count();
  if (algorithms.size() != static_cast<std::size_t>(hm))
    throw std::invalid_argument("one online algorithm per hospital required");

  std::vector<OnlineRun> runs;
  runs.reserve(static_cast<std::size_t>(hm));
  for (int h = 0; h < hm; ++h)
    runs.emplace_back(std::move(algorithms[static_cast<std::size_t>(h)]), m.constraints[static_cast<std::size_t>(h)]);

  Matching mu = Matching::unmatched(n);
  std::vector<std::size_t> next_choice(static_cast<std::size_t>(n), 0);

  // d is active iff unmatched with untried acceptable hospitals; a matched
  // doctor's remaining list is strictly worse than its current hospital.
  const auto is_active = [&](int d) {
    return mu.assignment[static_cast<std::size_t>(d)] == kUnmatched &&
           next_choice[static_cast<std::size_t>(d)] < m.preferences[static_cast<std::size_t>(d)].size();
  };

  ProposalQueue queue(options.tie_break, options.seed);
  for (int d = 0; d < n; ++d)
    if (is_active(d)) queue.push(d);

  GdaTrace trace;
  trace.hospital_arrivals.resize(static_cast<std::size_t>(hm));

  while (!queue.empty()) {
    const int d = queue.pop();
    const int h = m.preferences[static_cast<std::size_t>(d)][next_choice[static_cast<std::size_t>(d)]];
    next_choice[static_cast<std::size_t>(d)] += 1;

    OnlineRun& run = runs[static_cast<std::size_t>(h)];
    const DoctorSet before = run.selection();
    try {
      run.arrive(d);
    } catch (const ContractViolation& e) {
      throw ContractViolation(static_cast<int>(trace.proposals.size()) + 1,
                              "hospital " + m.hospital_names[static_cast<std::size_t>(h)] + ": " + e.reason);
    }
    const DoctorSet after = run.selection();

    const DoctorSet canceled = before - after;
    canceled.for_each([&](int c) { mu.assignment[static_cast<std::size_t>(c)] = kUnmatched; });
    if (after.contains(d)) mu.assignment[static_cast<std::size_t>(d)] = h;

    // Only the proposer and this round's canceled doctors can change
    // activity; everyone else keeps their queue membership.
    canceled.for_each([&](int c) {
      if (is_active(c)) queue.push(c);
    });
    if (is_active(d)) queue.push(d);

    GdaRound round;
    round.doctor = d;
    round.hospital = h;
    round.selection = after;
    round.canceled = canceled;
    round.active = queue.snapshot();
    trace.rounds.push_back(round);
    trace.proposals.emplace_back(d, h);
    trace.hospital_arrivals[static_cast<std::size_t>(h)].push_back(d);
  }

  trace.matching = mu;
  return {mu, trace};
}

std::pair<Matching, GdaTrace> run_gda(const Market& m, OnlineAlgKind kind, const GdaOptions& options) {
  return run_gda(m, std::vector<OnlineAlgKind>(static_cast<std::size_t>(m.hospital_count()), kind),
                 options);
}

std::pair<Matching, GdaTrace> run_gda(const Market& m, const std::vector<OnlineAlgKind>& kinds,
                                      const GdaOptions& options) {
  if (kinds.size() != static_cast<std::size_t>(m.hospital_count()))
    throw std::invalid_argument("one algorithm kind per hospital required");
  std::vector<std::unique_ptr<OnlineAlgorithm>> algorithms;
  algorithms.reserve(kinds.size());
  for (int h = 0; h < m.hospital_count(); ++h)
    algorithms.push_back(make_online_algorithm(kinds[static_cast<std::size_t>(h)],
                                               m.constraints[static_cast<std::size_t>(h)],
                                               m.utilities[static_cast<std::size_t>(h)]));
  return run_gda(m, std::move(algorithms), options);
}

std::vector<double> certified_ratios(const Market& m, OnlineAlgKind kind) {
  return certified_ratios(
      m, std::vector<OnlineAlgKind>(static_cast<std::size_t>(m.hospital_count()), kind));
}

std::vector<double> certified_ratios(const Market& m, const std::vector<OnlineAlgKind>& kinds) {
  if (kinds.size() != static_cast<std::size_t>(m.hospital_count()))
    throw std::invalid_argument("one algorithm kind per hospital required");
  std::vector<double> out;
  out.reserve(kinds.size());
  for (int h = 0; h < m.hospital_count(); ++h)
    out.push_back(certified_ratio(kinds[static_cast<std::size_t>(h)],
                                  m.constraints[static_cast<std::size_t>(h)],
                                  m.utilities[static_cast<std::size_t>(h)]));
  return out;
}

double certified_alpha(const std::vector<double>& ratios) {
  double alpha = 1.0;
  for (double r : ratios) alpha = std::max(alpha, r);
  return alpha;
}

}  // namespace approxstable

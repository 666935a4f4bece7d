#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "approxstable/market.hpp"
#include "approxstable/online.hpp"

namespace approxstable {

/// Order in which active doctors propose. The stability guarantee does not
/// depend on it, so it is a parameter rather than a fixed rule.
enum class TieBreak { Fifo, Lifo, Seeded };

struct GdaOptions {
  TieBreak tie_break = TieBreak::Fifo;
  std::uint64_t seed = 0;
};

TieBreak tie_break_from_string(const std::string& name, std::uint64_t* seed);

struct GdaRound {
  int doctor;
  int hospital;
  DoctorSet selection;  // hospital's tentative set after this proposal
  DoctorSet canceled;   // doctors dropped by the hospital this round
  DoctorSet active;     // doctors with a pending better option after this round
};

struct GdaTrace {
  std::vector<std::pair<int, int>> proposals;      // (doctor, hospital), in order
  std::vector<std::vector<int>> hospital_arrivals;  // per hospital
  std::vector<GdaRound> rounds;
  Matching matching;

  int round_count() const { return static_cast<int>(rounds.size()); }
};

/// Deferred acceptance driven by one online packing algorithm per hospital:
/// an active doctor proposes to their best not-yet-tried hospital, the
/// hospital's algorithm absorbs the arrival, and the tentative matching is
/// rebuilt from that hospital's selection. Doctors canceled by a rebuild
/// re-enter the active set. Terminates after at most one proposal per
/// acceptable (doctor, hospital) pair.
std::pair<Matching, GdaTrace> run_gda(const Market& m,
                                      std::vector<std::unique_ptr<OnlineAlgorithm>> algorithms,
                                      const GdaOptions& options = {});

/// Convenience: one algorithm kind for every hospital.
std::pair<Matching, GdaTrace> run_gda(const Market& m, OnlineAlgKind kind,
                                      const GdaOptions& options = {});

/// Per-hospital algorithm choices.
std::pair<Matching, GdaTrace> run_gda(const Market& m, const std::vector<OnlineAlgKind>& kinds,
                                      const GdaOptions& options = {});

/// Per-hospital certified competitive ratios for an algorithm choice.
std::vector<double> certified_ratios(const Market& m, OnlineAlgKind kind);
std::vector<double> certified_ratios(const Market& m, const std::vector<OnlineAlgKind>& kinds);

/// The stability factor certified for a run whose hospitals carry the given
/// competitive ratios: their maximum (1 for an empty market).
double certified_alpha(const std::vector<double>& ratios);

}  // namespace approxstable

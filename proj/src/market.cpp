#include "approxstable/market.hpp"

#include <set>
#include <string>

namespace approxstable {

std::optional<int> Market::preference_rank(int d, int h) const {
  const auto& list = preferences[static_cast<std::size_t>(d)];
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i] == h) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<std::string> validate_market(const Market& m) {
  std::vector<std::string> out;
  const int n = m.doctor_count();
  const int hm = m.hospital_count();

  if (n > DoctorSet::kCapacity) out.push_back("too many doctors (limit 128)");
  {
    std::set<std::string> seen;
    for (const auto& name : m.doctor_names)
      if (!seen.insert(name).second) out.push_back("duplicate doctor name: " + name);
    seen.clear();
    for (const auto& name : m.hospital_names)
      if (!seen.insert(name).second) out.push_back("duplicate hospital name: " + name);
  }

  if (m.preferences.size() != static_cast<std::size_t>(n)) out.push_back("one preference list per doctor required");
  if (m.utilities.size() != static_cast<std::size_t>(hm)) out.push_back("one utility per hospital required");
  if (m.constraints.size() != static_cast<std::size_t>(hm)) out.push_back("one constraint per hospital required");

  for (std::size_t d = 0; d < m.preferences.size(); ++d) {
    std::set<int> seen;
    for (int h : m.preferences[d]) {
      if (h < 0 || h >= hm) {
        out.push_back("unknown hospital in preferences of " + m.doctor_names[d]);
        continue;
      }
      if (!seen.insert(h).second)
        out.push_back("duplicate preference entry for " + m.doctor_names[d] + ": " + m.hospital_names[static_cast<std::size_t>(h)]);
    }
  }

  for (std::size_t h = 0; h < m.utilities.size(); ++h) {
    const Utility& u = m.utilities[h];
    if (const auto* add = std::get_if<Additive>(&u)) {
      if (add->values.size() != static_cast<std::size_t>(n))
        out.push_back("utility ground-set mismatch at " + m.hospital_names[h]);
      for (double v : add->values)
        if (v < 0.0) out.push_back("negative utility value at " + m.hospital_names[h]);
    } else if (const auto* cov = std::get_if<WeightedCoverage>(&u)) {
      if (cov->covers.size() != static_cast<std::size_t>(n))
        out.push_back("utility ground-set mismatch at " + m.hospital_names[h]);
      if (cov->element_names.size() != cov->element_weights.size())
        out.push_back("coverage element name/weight mismatch at " + m.hospital_names[h]);
      for (double w : cov->element_weights)
        if (w < 0.0) out.push_back("negative element weight at " + m.hospital_names[h]);
      for (const auto& cover : cov->covers)
        for (int e : cover)
          if (e < 0 || static_cast<std::size_t>(e) >= cov->element_weights.size())
            out.push_back("unknown element in cover set at " + m.hospital_names[h]);
    }
  }

  for (std::size_t h = 0; h < m.constraints.size(); ++h) {
    if (m.constraints[h].ground_size != n)
      out.push_back("constraint ground-set mismatch at " + m.hospital_names[h]);
  }

  return out;
}

std::vector<std::string> validate_matching(const Market& m, const Matching& mu) {
  std::vector<std::string> out;
  if (mu.doctor_count() != m.doctor_count()) {
    out.push_back("matching doctor count differs from market");
    return out;
  }
  for (int d = 0; d < mu.doctor_count(); ++d) {
    const int h = mu.assignment[static_cast<std::size_t>(d)];
    if (h == kUnmatched) continue;
    if (h < 0 || h >= m.hospital_count()) {
      out.push_back("unknown hospital assigned to " + m.doctor_names[static_cast<std::size_t>(d)]);
    } else if (!m.acceptable(d, h)) {
      out.push_back("unacceptable pair (" + m.doctor_names[static_cast<std::size_t>(d)] + ", " +
                    m.hospital_names[static_cast<std::size_t>(h)] + ")");
    }
  }
  return out;
}

DoctorSet assigned_set(const Matching& mu, int h) {
  DoctorSet s;
  for (int d = 0; d < mu.doctor_count(); ++d)
    if (mu.assignment[static_cast<std::size_t>(d)] == h) s.insert(d);
  return s;
}

int assigned_hospital(const Matching& mu, int d) {
  return mu.assignment.at(static_cast<std::size_t>(d));
}

bool is_feasible(const Market& m, const Matching& mu) {
  for (int h = 0; h < m.hospital_count(); ++h)
    if (!is_independent(m.constraints[static_cast<std::size_t>(h)], assigned_set(mu, h))) return false;
  return true;
}

}  // namespace approxstable

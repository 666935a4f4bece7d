#include "approxstable/json_io.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "approxstable/config.hpp"

namespace approxstable {

namespace {

using NameIndex = std::map<std::string, int>;

NameIndex index_names(const std::vector<std::string>& names, const std::string& what) {
  NameIndex index;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], static_cast<int>(i)).second)
      throw ValidationError("duplicate " + what + " name: " + names[i]);
  return index;
}

int lookup(const NameIndex& index, const std::string& name, const std::string& what) {
  const auto it = index.find(name);
  if (it == index.end()) throw ValidationError("unknown " + what + ": " + name);
  return it->second;
}

const Json& field(const Json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError("missing field \"" + key + "\"");
  return *it;
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ValidationError(what + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Json set_to_names(const DoctorSet& s, const std::vector<std::string>& names) {
  Json out = Json::array();
  s.for_each([&](int d) { out.push_back(names[static_cast<std::size_t>(d)]); });
  return out;
}

Json utility_to_json(const Utility& u, const Market& m) {
  Json j;
  if (std::holds_alternative<Cardinality>(u)) {
    j["kind"] = "cardinality";
  } else if (const auto* add = std::get_if<Additive>(&u)) {
    j["kind"] = "additive";
    Json values = Json::object();
    for (std::size_t d = 0; d < add->values.size(); ++d)
      if (add->values[d] != 0.0) values[m.doctor_names[d]] = add->values[d];
    j["values"] = std::move(values);
  } else {
    const auto& cov = std::get<WeightedCoverage>(u);
    j["kind"] = "coverage";
    Json elements = Json::object();
    for (std::size_t e = 0; e < cov.element_names.size(); ++e)
      elements[cov.element_names[e]] = cov.element_weights[e];
    j["elements"] = std::move(elements);
    Json covers = Json::object();
    for (std::size_t d = 0; d < cov.covers.size(); ++d) {
      Json list = Json::array();
      for (int e : cov.covers[d]) list.push_back(cov.element_names[static_cast<std::size_t>(e)]);
      covers[m.doctor_names[d]] = std::move(list);
    }
    j["covers"] = std::move(covers);
  }
  return j;
}

Utility utility_from_json(const Json& j, const NameIndex& doctors, int n) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "cardinality") return Cardinality{};
  if (kind == "additive") {
    Additive add;
    add.values.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& [name, value] : field(j, "values").items()) {
      const int d = lookup(doctors, name, "doctor");
      if (!value.is_number()) throw ValidationError("additive value must be a number");
      const double v = value.get<double>();
      if (v < 0.0) throw ValidationError("additive values must be nonnegative");
      add.values[static_cast<std::size_t>(d)] = v;
    }
    return add;
  }
  if (kind == "coverage") {
    WeightedCoverage cov;
    NameIndex elements;
    for (const auto& [name, weight] : field(j, "elements").items()) {
      if (!weight.is_number()) throw ValidationError("element weight must be a number");
      const double w = weight.get<double>();
      if (w < 0.0) throw ValidationError("element weights must be nonnegative");
      elements.emplace(name, static_cast<int>(cov.element_names.size()));
      cov.element_names.push_back(name);
      cov.element_weights.push_back(w);
    }
    cov.covers.assign(static_cast<std::size_t>(n), {});
    for (const auto& [name, list] : field(j, "covers").items()) {
      const int d = lookup(doctors, name, "doctor");
      for (const std::string& e : string_list(list, "cover set"))
        cov.covers[static_cast<std::size_t>(d)].push_back(lookup(elements, e, "element"));
    }
    return cov;
  }
  throw ValidationError("unknown utility kind: " + kind);
}

Json constraint_to_json(const IndependenceSystem& sys, const Market& m) {
  Json j;
  if (const auto* cap = std::get_if<Capacity>(&sys.expr)) {
    j["kind"] = "capacity";
    j["rank"] = cap->rank;
  } else if (const auto* pm = std::get_if<PartitionMatroid>(&sys.expr)) {
    j["kind"] = "partition_matroid";
    Json parts = Json::array();
    for (const DoctorSet& p : pm->parts) parts.push_back(set_to_names(p, m.doctor_names));
    j["parts"] = std::move(parts);
    j["quotas"] = pm->quotas;
    j["rank"] = pm->rank ? Json(*pm->rank) : Json(nullptr);
  } else if (const auto* ex = std::get_if<ExplicitFamily>(&sys.expr)) {
    j["kind"] = "explicit";
    Json sets = Json::array();
    for (const DoctorSet& s : ex->maximal_sets) sets.push_back(set_to_names(s, m.doctor_names));
    j["maximal_sets"] = std::move(sets);
  } else if (const auto* inter = std::get_if<Intersection>(&sys.expr)) {
    j["kind"] = "intersection";
    Json children = Json::array();
    for (const auto& child : inter->children) children.push_back(constraint_to_json(child, m));
    j["of"] = std::move(children);
  } else if (const auto* knap = std::get_if<Knapsack>(&sys.expr)) {
    j["kind"] = "knapsack";
    Json weights = Json::object();
    for (std::size_t d = 0; d < knap->weights.size(); ++d) weights[m.doctor_names[d]] = knap->weights[d];
    j["weights"] = std::move(weights);
  } else {
    throw ValidationError("restriction constraints have no JSON form");
  }
  return j;
}

DoctorSet names_to_set(const Json& j, const NameIndex& doctors, const std::string& what) {
  DoctorSet s;
  for (const std::string& name : string_list(j, what)) {
    const int d = lookup(doctors, name, "doctor");
    if (s.contains(d)) throw ValidationError("duplicate doctor in " + what + ": " + name);
    s.insert(d);
  }
  return s;
}

IndependenceSystem constraint_from_json(const Json& j, const NameIndex& doctors, int n) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "capacity") {
    return make_capacity(n, field(j, "rank").get<int>());
  }
  if (kind == "partition_matroid") {
    std::vector<DoctorSet> parts;
    for (const auto& part : field(j, "parts")) parts.push_back(names_to_set(part, doctors, "part"));
    std::vector<int> quotas = field(j, "quotas").get<std::vector<int>>();
    std::optional<int> rank;
    const Json& r = field(j, "rank");
    if (!r.is_null()) rank = r.get<int>();
    return make_partition_matroid(n, std::move(parts), std::move(quotas), rank);
  }
  if (kind == "explicit") {
    std::vector<DoctorSet> sets;
    for (const auto& s : field(j, "maximal_sets")) sets.push_back(names_to_set(s, doctors, "maximal set"));
    return make_explicit(n, std::move(sets));
  }
  if (kind == "intersection") {
    std::vector<IndependenceSystem> children;
    for (const auto& child : field(j, "of")) children.push_back(constraint_from_json(child, doctors, n));
    return make_intersection(std::move(children));
  }
  if (kind == "knapsack") {
    const Json& table = field(j, "weights");
    if (!table.is_object() || table.empty())
      throw ValidationError("knapsack needs a nonempty weight table");
    std::size_t dims = 0;
    for (const auto& [name, row] : table.items()) {
      (void)name;
      dims = row.size();
      break;
    }
    if (dims == 0) throw ValidationError("knapsack weight rows must be nonempty");
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(n),
                                             std::vector<double>(dims, 0.0));
    for (const auto& [name, row] : table.items()) {
      const int d = lookup(doctors, name, "doctor");
      if (!row.is_array() || row.size() != dims)
        throw ValidationError("knapsack weight rows must share one length");
      weights[static_cast<std::size_t>(d)] = row.get<std::vector<double>>();
    }
    return make_knapsack(n, std::move(weights));
  }
  throw ValidationError("unknown constraint kind: " + kind);
}

}  // namespace

Json market_to_json(const Market& m) {
  Json j;
  j["doctors"] = m.doctor_names;
  j["hospitals"] = m.hospital_names;

  Json prefs = Json::object();
  for (std::size_t d = 0; d < m.preferences.size(); ++d) {
    Json list = Json::array();
    for (int h : m.preferences[d]) list.push_back(m.hospital_names[static_cast<std::size_t>(h)]);
    prefs[m.doctor_names[d]] = std::move(list);
  }
  j["preferences"] = std::move(prefs);

  Json utilities = Json::object();
  for (std::size_t h = 0; h < m.utilities.size(); ++h)
    utilities[m.hospital_names[h]] = utility_to_json(m.utilities[h], m);
  j["utilities"] = std::move(utilities);

  Json constraints = Json::object();
  for (std::size_t h = 0; h < m.constraints.size(); ++h)
    constraints[m.hospital_names[h]] = constraint_to_json(m.constraints[h], m);
  j["constraints"] = std::move(constraints);
  return j;
}

Market market_from_json(const Json& j) {
  Market m;
  m.doctor_names = string_list(field(j, "doctors"), "doctors");
  m.hospital_names = string_list(field(j, "hospitals"), "hospitals");
  const NameIndex doctors = index_names(m.doctor_names, "doctor");
  const NameIndex hospitals = index_names(m.hospital_names, "hospital");
  const int n = m.doctor_count();

  if (n > DoctorSet::kCapacity) throw ValidationError("too many doctors (limit 128)");

  m.preferences.assign(static_cast<std::size_t>(n), {});
  for (const auto& [name, list] : field(j, "preferences").items()) {
    const int d = lookup(doctors, name, "doctor");
    for (const std::string& hname : string_list(list, "preference list")) {
      const int h = lookup(hospitals, hname, "hospital");
      auto& prefs = m.preferences[static_cast<std::size_t>(d)];
      if (std::find(prefs.begin(), prefs.end(), h) != prefs.end())
        throw ValidationError("duplicate preference entry for " + name + ": " + hname);
      prefs.push_back(h);
    }
  }

  m.utilities.assign(static_cast<std::size_t>(m.hospital_count()), Cardinality{});
  const Json& utilities = field(j, "utilities");
  for (const auto& hname : m.hospital_names) {
    const auto it = utilities.find(hname);
    if (it == utilities.end()) throw ValidationError("missing utility for hospital " + hname);
    m.utilities[static_cast<std::size_t>(hospitals.at(hname))] = utility_from_json(*it, doctors, n);
  }

  const Json& constraints = field(j, "constraints");
  for (const auto& hname : m.hospital_names) {
    const auto it = constraints.find(hname);
    if (it == constraints.end()) throw ValidationError("missing constraint for hospital " + hname);
    m.constraints.push_back(constraint_from_json(*it, doctors, n));
  }

  const auto violations = validate_market(m);
  if (!violations.empty()) throw ValidationError("invalid market: " + violations.front());
  return m;
}

std::string market_to_string(const Market& m) { return market_to_json(m).dump(2) + "\n"; }

Market market_from_string(const std::string& text) {
  return market_from_json(Json::parse(text));
}

Json matching_to_json(const Market& m, const Matching& mu) {
  Json pairs = Json::array();
  for (int d = 0; d < mu.doctor_count(); ++d) {
    const int h = mu.assignment[static_cast<std::size_t>(d)];
    if (h == kUnmatched) continue;
    pairs.push_back(Json::array({m.doctor_names[static_cast<std::size_t>(d)],
                                 m.hospital_names[static_cast<std::size_t>(h)]}));
  }
  Json j;
  j["pairs"] = std::move(pairs);
  return j;
}

Matching matching_from_json(const Market& m, const Json& j) {
  const NameIndex doctors = index_names(m.doctor_names, "doctor");
  const NameIndex hospitals = index_names(m.hospital_names, "hospital");
  Matching mu = Matching::unmatched(m.doctor_count());
  for (const auto& pair : field(j, "pairs")) {
    if (!pair.is_array() || pair.size() != 2)
      throw ValidationError("matching pairs must be [doctor, hospital]");
    const int d = lookup(doctors, pair[0].get<std::string>(), "doctor");
    const int h = lookup(hospitals, pair[1].get<std::string>(), "hospital");
    if (mu.assignment[static_cast<std::size_t>(d)] != kUnmatched)
      throw ValidationError("doctor matched twice: " + pair[0].get<std::string>());
    mu.assignment[static_cast<std::size_t>(d)] = h;
  }
  return mu;
}

Json report_to_json(const Market& m, const StabilityReport& report) {
  Json j;
  j["alpha_tested"] = report.alpha_tested;
  j["verdict"] = report.stable() ? "stable" : "blocked";
  if (report.blocking) {
    Json b;
    b["hospital"] = m.hospital_names[static_cast<std::size_t>(report.blocking->hospital)];
    b["coalition"] = set_to_names(report.blocking->coalition, m.doctor_names);
    b["coalition_value"] = report.blocking->coalition_value;
    b["current_value"] = report.blocking->current_value;
    j["blocking"] = std::move(b);
  }
  Json rows = Json::array();
  for (const auto& row : report.per_hospital) {
    Json r;
    r["hospital"] = m.hospital_names[static_cast<std::size_t>(row.hospital)];
    r["pool_size"] = row.candidate_pool.count();
    r["opt_value"] = row.opt_value;
    r["current_value"] = row.current_value;
    rows.push_back(std::move(r));
  }
  j["per_hospital"] = std::move(rows);
  return j;
}

Json packing_solution_to_json(const Market& m, const PackingSolution& solution) {
  Json j;
  j["chosen"] = set_to_names(solution.chosen, m.doctor_names);
  j["value"] = solution.value;
  return j;
}

Json trace_to_json(const Market& m, const GdaTrace& trace) {
  Json proposals = Json::array();
  for (const auto& [d, h] : trace.proposals)
    proposals.push_back(Json::array({m.doctor_names[static_cast<std::size_t>(d)],
                                     m.hospital_names[static_cast<std::size_t>(h)]}));
  Json arrivals = Json::object();
  for (std::size_t h = 0; h < trace.hospital_arrivals.size(); ++h) {
    Json list = Json::array();
    for (int d : trace.hospital_arrivals[h]) list.push_back(m.doctor_names[static_cast<std::size_t>(d)]);
    arrivals[m.hospital_names[h]] = std::move(list);
  }
  Json j;
  j["rounds"] = trace.round_count();
  j["proposals"] = std::move(proposals);
  j["arrivals"] = std::move(arrivals);
  j["matching"] = matching_to_json(m, trace.matching);
  return j;
}

}  // namespace approxstable

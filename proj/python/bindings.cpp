#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "approxstable/config.hpp"
#include "approxstable/gda.hpp"
#include "approxstable/instances.hpp"
#include "approxstable/json_io.hpp"
#include "approxstable/packing.hpp"
#include "approxstable/stability.hpp"

namespace py = pybind11;
using namespace approxstable;

namespace {

DoctorSet set_from_names(const Market& m, const std::vector<std::string>& names) {
  DoctorSet s;
  for (const auto& name : names) {
    int found = -1;
    for (int d = 0; d < m.doctor_count(); ++d)
      if (m.doctor_names[static_cast<std::size_t>(d)] == name) found = d;
    if (found < 0) throw std::invalid_argument("unknown doctor: " + name);
    s.insert(found);
  }
  return s;
}

std::vector<std::string> names_of(const Market& m, const DoctorSet& s) {
  std::vector<std::string> out;
  s.for_each([&](int d) { out.push_back(m.doctor_names[static_cast<std::size_t>(d)]); });
  return out;
}

int hospital_index(const Market& m, const std::string& name) {
  for (int h = 0; h < m.hospital_count(); ++h)
    if (m.hospital_names[static_cast<std::size_t>(h)] == name) return h;
  throw std::invalid_argument("unknown hospital: " + name);
}

Example1Rendering rendering_from(const std::string& name) {
  if (name == "explicit") return Example1Rendering::Explicit;
  if (name == "matroid_pair") return Example1Rendering::MatroidPair;
  if (name == "knapsack") return Example1Rendering::Knapsack;
  throw std::invalid_argument("unknown rendering: " + name);
}

UtilityClass utility_class_from(const std::string& name) {
  if (name == "cardinality") return UtilityClass::Cardinality;
  if (name == "additive") return UtilityClass::Additive;
  if (name == "coverage") return UtilityClass::Coverage;
  throw std::invalid_argument("unknown utility class: " + name);
}

ConstraintClass constraint_class_from(const std::string& name) {
  if (name == "capacity") return ConstraintClass::Capacity;
  if (name == "matroid") return ConstraintClass::Matroid;
  if (name == "kmatroid") return ConstraintClass::KMatroidIntersection;
  if (name == "knapsack") return ConstraintClass::Knapsack;
  throw std::invalid_argument("unknown constraint class: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "approximately stable two-sided matching under independence-system constraints";

  py::register_exception<OracleLimitError>(mod, "OracleLimitError");
  py::register_exception<ContractViolation>(mod, "ContractViolation");
  py::register_exception<ValidationError>(mod, "ValidationError");

  py::class_<Market>(mod, "Market")
      .def_readonly("doctors", &Market::doctor_names)
      .def_readonly("hospitals", &Market::hospital_names)
      .def("validate", [](const Market& m) { return validate_market(m); })
      .def("to_json", [](const Market& m) { return market_to_string(m); })
      .def("preference_list",
           [](const Market& m, const std::string& doctor) {
             std::vector<std::string> out;
             for (int d = 0; d < m.doctor_count(); ++d)
               if (m.doctor_names[static_cast<std::size_t>(d)] == doctor)
                 for (int h : m.preferences[static_cast<std::size_t>(d)])
                   out.push_back(m.hospital_names[static_cast<std::size_t>(h)]);
             return out;
           })
      .def("utility_value",
           [](const Market& m, const std::string& hospital, const std::vector<std::string>& doctors) {
             return evaluate(m.utilities[static_cast<std::size_t>(hospital_index(m, hospital))],
                             set_from_names(m, doctors));
           })
      .def("is_independent",
           [](const Market& m, const std::string& hospital, const std::vector<std::string>& doctors) {
             return is_independent(m.constraints[static_cast<std::size_t>(hospital_index(m, hospital))],
                                   set_from_names(m, doctors));
           })
      .def("__repr__", [](const Market& m) {
        return "<Market " + std::to_string(m.doctor_count()) + " doctors, " +
               std::to_string(m.hospital_count()) + " hospitals>";
      });

  py::class_<Matching>(mod, "Matching")
      .def("pairs",
           [](const Matching& mu, const Market& m) {
             std::vector<std::pair<std::string, std::string>> out;
             for (int d = 0; d < mu.doctor_count(); ++d) {
               const int h = mu.assignment[static_cast<std::size_t>(d)];
               if (h != kUnmatched)
                 out.emplace_back(m.doctor_names[static_cast<std::size_t>(d)],
                                  m.hospital_names[static_cast<std::size_t>(h)]);
             }
             return out;
           })
      .def("to_json", [](const Matching& mu, const Market& m) {
        return matching_to_json(m, mu).dump(2) + "\n";
      });

  mod.def("market_from_json", &market_from_string, py::arg("text"));
  mod.def("matching_from_json", [](const Market& m, const std::string& text) {
    return matching_from_json(m, Json::parse(text));
  });

  mod.def("gen_example1",
          [](const std::string& rendering, std::optional<double> eps) {
            return gen_example1(rendering_from(rendering), eps);
          },
          py::arg("rendering") = "explicit", py::arg("eps") = std::nullopt);
  mod.def("gen_example2", &gen_example2);
  mod.def("gen_thm62",
          [](int k, std::optional<double> alpha, bool additive) {
            const auto out = gen_thm62_market(k, alpha, additive);
            return py::make_tuple(out.market, out.alpha);
          },
          py::arg("k"), py::arg("alpha") = std::nullopt, py::arg("additive") = false);
  mod.def("gen_thm63",
          [](int rho, double eps, std::optional<int> m, std::optional<double> alpha) {
            const auto out = gen_thm63_market(rho, eps, m, alpha);
            py::dict info;
            info["alpha"] = out.alpha;
            info["r"] = out.r;
            info["m"] = out.m;
            py::list blocks;
            for (const auto& dim : out.blocks) {
              py::list per_scale;
              for (const auto& block : dim) per_scale.append(names_of(out.market, [&] {
                DoctorSet s;
                for (int d : block) s.insert(d);
                return s;
              }()));
              blocks.append(per_scale);
            }
            info["blocks"] = blocks;
            return py::make_tuple(out.market, info);
          },
          py::arg("rho"), py::arg("eps"), py::arg("m") = std::nullopt,
          py::arg("alpha") = std::nullopt);
  mod.def("gen_random",
          [](std::uint64_t seed, int doctors, int hospitals, const std::string& utility,
             const std::string& constraint, int k, int rho, double eps, double accept_prob) {
            RandomMarketParams params;
            params.doctors = doctors;
            params.hospitals = hospitals;
            params.utility = utility_class_from(utility);
            params.constraint = constraint_class_from(constraint);
            params.k = k;
            params.rho = rho;
            params.eps = eps;
            params.accept_prob = accept_prob;
            return gen_random(seed, params);
          },
          py::arg("seed"), py::arg("doctors") = 6, py::arg("hospitals") = 2,
          py::arg("utility") = "cardinality", py::arg("constraint") = "matroid", py::arg("k") = 2,
          py::arg("rho") = 1, py::arg("eps") = 0.25, py::arg("accept_prob") = 0.8);

  mod.def("run_gda",
          [](const Market& m, const std::string& alg, const std::string& tie_break) {
            GdaOptions options;
            options.tie_break = tie_break_from_string(tie_break, &options.seed);
            const auto [mu, trace] = run_gda(m, online_alg_kind_from_string(alg), options);
            return py::make_tuple(mu, trace_to_json(m, trace).dump(2) + "\n");
          },
          py::arg("market"), py::arg("alg") = "greedy_matroid", py::arg("tie_break") = "fifo");

  mod.def("certified_alpha", [](const Market& m, const std::string& alg) {
    return certified_alpha(certified_ratios(m, online_alg_kind_from_string(alg)));
  });

  mod.def("alpha_stability_check",
          [](const Market& m, const Matching& mu, double alpha) {
            return report_to_json(m, alpha_stability_check(m, mu, alpha)).dump(2) + "\n";
          },
          py::arg("market"), py::arg("matching"), py::arg("alpha"));
  mod.def("is_stable", [](const Market& m, const Matching& mu, double alpha) {
    return alpha_stability_check(m, mu, alpha).stable();
  });
  mod.def("min_alpha", &min_alpha, py::arg("market"), py::arg("matching"));

  mod.def("find_stable",
          [](const Market& m, double alpha) -> std::optional<Matching> {
            return exists_stable_bruteforce(m, alpha).witness;
          },
          py::arg("market"), py::arg("alpha"));
  mod.def("best_alpha", [](const Market& m) {
    const auto result = best_alpha_search(m);
    return py::make_tuple(result.best_alpha, result.best_matching);
  });

  mod.def("solve_pack",
          [](const Market& m, const std::string& hospital,
             std::optional<std::vector<std::string>> doctors) {
            const int h = hospital_index(m, hospital);
            const DoctorSet ground =
                doctors ? set_from_names(m, *doctors) : DoctorSet::full(m.doctor_count());
            const PackingInstance p{ground, m.utilities[static_cast<std::size_t>(h)],
                                    restrict(m.constraints[static_cast<std::size_t>(h)], ground)};
            const PackingSolution best = solve_exact(p);
            return py::make_tuple(names_of(m, best.chosen), best.value);
          },
          py::arg("market"), py::arg("hospital"), py::arg("doctors") = std::nullopt);
}

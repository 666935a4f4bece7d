#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "approxstable/config.hpp"
#include "approxstable/gda.hpp"
#include "approxstable/instances.hpp"
#include "approxstable/json_io.hpp"
#include "approxstable/packing.hpp"
#include "approxstable/rng.hpp"
#include "approxstable/stability.hpp"

namespace {

using namespace approxstable;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOracleLimit = 2;
constexpr int kExitUnstable = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

Market load_market(const std::string& path) { return market_from_string(read_file(path)); }

Matching load_matching(const Market& m, const std::string& path) {
  const Matching mu = matching_from_json(m, Json::parse(read_file(path)));
  const auto violations = validate_matching(m, mu);
  if (!violations.empty()) throw ValidationError("invalid matching: " + violations.front());
  return mu;
}

// --params k=2,eps=0.3,wages=3:4:5 -> string map; list values use colons.
std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("bad parameter (expected key=value): " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

class Params {
 public:
  explicit Params(const std::string& text) : map_(parse_params(text)) {}

  std::optional<std::string> raw(const std::string& key) const {
    const auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
  }

  int integer(const std::string& key, int fallback) const {
    const auto v = raw(key);
    return v ? std::stoi(*v) : fallback;
  }

  double real(const std::string& key, double fallback) const {
    const auto v = raw(key);
    return v ? std::stod(*v) : fallback;
  }

  std::optional<double> real_opt(const std::string& key) const {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    return std::stod(*v);
  }

  std::vector<double> reals(const std::string& key) const {
    const auto v = raw(key);
    std::vector<double> out;
    if (!v) return out;
    std::stringstream stream(*v);
    std::string item;
    while (std::getline(stream, item, ':')) out.push_back(std::stod(item));
    return out;
  }

 private:
  std::map<std::string, std::string> map_;
};

// JSON has no infinity; non-finite factors serialize as the string "inf".
Json json_factor(double v) { return std::isfinite(v) ? Json(v) : Json("inf"); }

std::string matching_table(const Market& m, const Matching& mu) {
  std::ostringstream out;
  for (int d = 0; d < m.doctor_count(); ++d) {
    const int h = mu.assignment[static_cast<std::size_t>(d)];
    out << m.doctor_names[static_cast<std::size_t>(d)] << " -> "
        << (h == kUnmatched ? std::string("-") : m.hospital_names[static_cast<std::size_t>(h)]) << "\n";
  }
  return out.str();
}

std::string report_table(const Market& m, const StabilityReport& report) {
  std::ostringstream out;
  out << "alpha " << report.alpha_tested << ": " << (report.stable() ? "stable" : "blocked") << "\n";
  for (const auto& row : report.per_hospital) {
    out << "  " << m.hospital_names[static_cast<std::size_t>(row.hospital)] << ": pool "
        << row.candidate_pool.count() << ", opt " << row.opt_value << ", current "
        << row.current_value << "\n";
  }
  if (report.blocking) {
    out << "  blocking at " << m.hospital_names[static_cast<std::size_t>(report.blocking->hospital)] << ":";
    report.blocking->coalition.for_each(
        [&](int d) { out << " " << m.doctor_names[static_cast<std::size_t>(d)]; });
    out << " (value " << report.blocking->coalition_value << ")\n";
  }
  return out.str();
}

struct CommonOptions {
  std::string market_path;
  std::string matching_path;
  std::string out_path;
  std::string format = "json";
};

// Either one algorithm for every hospital, or per-hospital assignments like
// "h*=greedy_knapsack,*=greedy_matroid" ("*" is the fallback).
std::vector<OnlineAlgKind> algorithm_choices(const Market& m, const std::string& alg) {
  if (alg.find('=') == std::string::npos)
    return std::vector<OnlineAlgKind>(static_cast<std::size_t>(m.hospital_count()),
                                      online_alg_kind_from_string(alg));
  std::optional<OnlineAlgKind> fallback;
  std::map<std::string, OnlineAlgKind> by_name;
  for (const auto& [name, kind] : parse_params(alg)) {
    if (name == "*") {
      fallback = online_alg_kind_from_string(kind);
    } else {
      by_name[name] = online_alg_kind_from_string(kind);
    }
  }
  std::vector<OnlineAlgKind> kinds;
  for (int h = 0; h < m.hospital_count(); ++h) {
    const auto it = by_name.find(m.hospital_names[static_cast<std::size_t>(h)]);
    if (it != by_name.end()) {
      kinds.push_back(it->second);
    } else if (fallback) {
      kinds.push_back(*fallback);
    } else {
      throw ValidationError("no algorithm assigned to hospital " +
                            m.hospital_names[static_cast<std::size_t>(h)] + " (add *=<alg>)");
    }
  }
  for (const auto& [name, kind] : by_name) {
    (void)kind;
    bool known = false;
    for (const auto& hname : m.hospital_names) known = known || hname == name;
    if (!known) throw ValidationError("unknown hospital in --alg: " + name);
  }
  return kinds;
}

int cmd_solve(const CommonOptions& common, const std::string& alg, const std::string& tie,
              const std::string& trace_path) {
  const Market m = load_market(common.market_path);
  GdaOptions options;
  options.tie_break = tie_break_from_string(tie, &options.seed);
  const auto kinds = algorithm_choices(m, alg);
  const auto [mu, trace] = run_gda(m, kinds, options);

  if (!trace_path.empty()) write_output(trace_path, trace_to_json(m, trace).dump(2) + "\n");
  if (common.format == "table") {
    std::ostringstream out;
    out << matching_table(m, mu);
    out << "rounds: " << trace.round_count()
        << ", certified alpha: " << certified_alpha(certified_ratios(m, kinds))
        << ", achieved min alpha: " << min_alpha(m, mu) << "\n";
    write_output(common.out_path, out.str());
  } else {
    write_output(common.out_path, matching_to_json(m, mu).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_check(const CommonOptions& common, double alpha) {
  const Market m = load_market(common.market_path);
  const Matching mu = load_matching(m, common.matching_path);
  const StabilityReport report = alpha_stability_check(m, mu, alpha);
  write_output(common.out_path, common.format == "table" ? report_table(m, report)
                                                         : report_to_json(m, report).dump(2) + "\n");
  return report.stable() ? kExitOk : kExitUnstable;
}

int cmd_min_alpha(const CommonOptions& common) {
  const Market m = load_market(common.market_path);
  const Matching mu = load_matching(m, common.matching_path);
  const double alpha = min_alpha(m, mu);
  if (common.format == "table") {
    write_output(common.out_path, "min alpha: " + json_factor(alpha).dump() + "\n");
  } else {
    Json j;
    j["min_alpha"] = json_factor(alpha);
    write_output(common.out_path, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_enumerate(const CommonOptions& common, std::optional<double> alpha) {
  const Market m = load_market(common.market_path);
  const EnumerationResult result =
      alpha ? exists_stable_bruteforce(m, *alpha) : best_alpha_search(m);

  if (common.format == "table") {
    std::ostringstream out;
    out << "feasible matchings: " << result.feasible_count << "\n";
    out << "best alpha: " << result.best_alpha << "\n";
    if (alpha) {
      out << "witness at " << *alpha << ": " << (result.witness ? "found" : "none") << "\n";
      if (result.witness) out << matching_table(m, *result.witness);
    } else {
      out << matching_table(m, result.best_matching);
    }
    write_output(common.out_path, out.str());
  } else {
    Json j;
    j["feasible_count"] = result.feasible_count;
    j["best_alpha"] = json_factor(result.best_alpha);
    j["best_matching"] = matching_to_json(m, result.best_matching);
    if (alpha) {
      j["alpha"] = *alpha;
      j["witness"] = result.witness ? matching_to_json(m, *result.witness) : Json(nullptr);
    }
    write_output(common.out_path, j.dump(2) + "\n");
  }
  return (alpha && !result.witness) ? kExitUnstable : kExitOk;
}

Market generate_family(const std::string& family, const Params& params) {
  if (family == "example1") {
    const std::string rendering = params.str("rendering", "explicit");
    Example1Rendering r = Example1Rendering::Explicit;
    if (rendering == "matroid_pair") r = Example1Rendering::MatroidPair;
    else if (rendering == "knapsack") r = Example1Rendering::Knapsack;
    else if (rendering != "explicit") throw ValidationError("unknown rendering: " + rendering);
    return gen_example1(r, params.real_opt("eps"));
  }
  if (family == "example2") return gen_example2();
  if (family == "thm62") {
    return gen_thm62_market(params.integer("k", 2), params.real_opt("alpha"),
                            params.integer("additive", 0) != 0)
        .market;
  }
  if (family == "thm63") {
    std::optional<int> m;
    if (const auto raw = params.raw("m")) m = std::stoi(*raw);
    const auto lower = gen_thm63_market(params.integer("rho", 1), params.real("eps", 0.3), m,
                                        params.real_opt("alpha"));
    std::cerr << "thm63: r=" << lower.r << ", m=" << lower.m << ", alpha=" << lower.alpha << "\n";
    for (std::size_t a = 0; a < lower.blocks.size(); ++a)
      for (std::size_t b = 0; b < lower.blocks[a].size(); ++b) {
        std::cerr << "  block dim=" << a + 1 << " scale=" << b + 1 << ":";
        for (int d : lower.blocks[a][b])
          std::cerr << " " << lower.market.doctor_names[static_cast<std::size_t>(d)];
        std::cerr << "\n";
      }
    return lower.market;
  }
  if (family == "typed") {
    const int n = params.integer("n", 6);
    const int types = params.integer("types", 2);
    const int quota = params.integer("qt", 2);
    std::vector<std::vector<int>> partition(static_cast<std::size_t>(types));
    for (int d = 0; d < n; ++d) partition[static_cast<std::size_t>(d % types)].push_back(d);
    return gen_typed_quotas(partition, std::vector<int>(static_cast<std::size_t>(types), quota),
                            params.integer("q", 3), n);
  }
  if (family == "overlap") {
    const int n = params.integer("n", 4);
    const int k = params.integer("k", 2);
    const int quota = params.integer("qt", 1);
    const int group = std::max(2, params.integer("group", 2));
    SeededRng rng(static_cast<std::uint64_t>(params.integer("seed", 0)));
    std::vector<std::vector<std::vector<int>>> partitions;
    std::vector<std::vector<int>> quotas;
    for (int i = 0; i < k; ++i) {
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      std::vector<std::vector<int>> parts;
      for (int at = 0; at < n; at += group) {
        std::vector<int> part;
        for (int j = at; j < std::min(n, at + group); ++j) part.push_back(order[static_cast<std::size_t>(j)]);
        parts.push_back(std::move(part));
      }
      quotas.emplace_back(parts.size(), quota);
      partitions.push_back(std::move(parts));
    }
    return gen_overlapping_types(partitions, quotas, params.integer("q", n), n);
  }
  if (family == "budget") {
    auto wages = params.reals("wages");
    if (wages.empty()) wages = {3.0, 4.0, 5.0};
    return gen_budget(wages, params.real("budget", 10.0));
  }
  if (family == "refugee") {
    auto caps = params.reals("caps");
    if (caps.empty()) caps = std::vector<double>(static_cast<std::size_t>(params.integer("sigma", 2)), 4.0);
    const int n = params.integer("n", 4);
    SeededRng rng(static_cast<std::uint64_t>(params.integer("seed", 0)));
    std::vector<std::vector<double>> needs;
    for (int d = 0; d < n; ++d) {
      std::vector<double> row;
      for (double cap : caps) row.push_back(rng.real(0.0, cap));
      needs.push_back(std::move(row));
    }
    return gen_refugee(needs, caps);
  }
  if (family == "random") {
    RandomMarketParams rp;
    rp.doctors = params.integer("n", 6);
    rp.hospitals = params.integer("m", 2);
    const std::string utility = params.str("utility", "cardinality");
    if (utility == "cardinality") rp.utility = UtilityClass::Cardinality;
    else if (utility == "additive") rp.utility = UtilityClass::Additive;
    else if (utility == "coverage") rp.utility = UtilityClass::Coverage;
    else throw ValidationError("unknown utility class: " + utility);
    const std::string constraint = params.str("constraint", "matroid");
    if (constraint == "capacity") rp.constraint = ConstraintClass::Capacity;
    else if (constraint == "matroid") rp.constraint = ConstraintClass::Matroid;
    else if (constraint == "kmatroid") rp.constraint = ConstraintClass::KMatroidIntersection;
    else if (constraint == "knapsack") rp.constraint = ConstraintClass::Knapsack;
    else throw ValidationError("unknown constraint class: " + constraint);
    rp.k = params.integer("k", 2);
    rp.rho = params.integer("rho", 1);
    rp.eps = params.real("eps", 0.25);
    rp.accept_prob = params.real("accept", 0.8);
    return gen_random(static_cast<std::uint64_t>(params.integer("seed", 0)), rp);
  }
  throw ValidationError("unknown family: " + family);
}

int cmd_gen(const std::string& family, const std::string& params_text, const std::string& out_path) {
  const Market m = generate_family(family, Params(params_text));
  write_output(out_path, market_to_string(m));
  return kExitOk;
}

int cmd_pack(const CommonOptions& common, const std::string& hospital, const std::string& doctors) {
  const Market m = load_market(common.market_path);
  int h = -1;
  for (int i = 0; i < m.hospital_count(); ++i)
    if (m.hospital_names[static_cast<std::size_t>(i)] == hospital) h = i;
  if (h < 0) throw ValidationError("unknown hospital: " + hospital);

  DoctorSet ground = DoctorSet::full(m.doctor_count());
  if (!doctors.empty()) {
    ground = DoctorSet{};
    std::stringstream stream(doctors);
    std::string name;
    while (std::getline(stream, name, ':')) {
      int d = -1;
      for (int i = 0; i < m.doctor_count(); ++i)
        if (m.doctor_names[static_cast<std::size_t>(i)] == name) d = i;
      if (d < 0) throw ValidationError("unknown doctor: " + name);
      ground.insert(d);
    }
  }

  const PackingInstance p{ground, m.utilities[static_cast<std::size_t>(h)],
                          restrict(m.constraints[static_cast<std::size_t>(h)], ground)};
  const PackingSolution best = solve_exact(p);
  if (common.format == "table") {
    std::ostringstream out;
    out << "value: " << best.value << ", chosen:";
    best.chosen.for_each([&](int d) { out << " " << m.doctor_names[static_cast<std::size_t>(d)]; });
    out << "\n";
    write_output(common.out_path, out.str());
  } else {
    write_output(common.out_path, packing_solution_to_json(m, best).dump(2) + "\n");
  }
  return kExitOk;
}

struct BenchCell {
  std::string name;
  UtilityClass utility;
  ConstraintClass constraint;
  int k = 1;
  int rho = 1;
  OnlineAlgKind alg;
};

const std::vector<BenchCell>& bench_cells() {
  static const std::vector<BenchCell> cells = {
      {"card_cap", UtilityClass::Cardinality, ConstraintClass::Capacity, 1, 1, OnlineAlgKind::GreedyMatroid},
      {"card_mat", UtilityClass::Cardinality, ConstraintClass::Matroid, 1, 1, OnlineAlgKind::GreedyMatroid},
      {"card_2mat", UtilityClass::Cardinality, ConstraintClass::KMatroidIntersection, 2, 1, OnlineAlgKind::GreedyMatroid},
      {"card_3mat", UtilityClass::Cardinality, ConstraintClass::KMatroidIntersection, 3, 1, OnlineAlgKind::GreedyMatroid},
      {"card_knap1", UtilityClass::Cardinality, ConstraintClass::Knapsack, 1, 1, OnlineAlgKind::GreedyKnapsack},
      {"card_knap2", UtilityClass::Cardinality, ConstraintClass::Knapsack, 1, 2, OnlineAlgKind::GreedyKnapsack},
      {"add_knap1", UtilityClass::Additive, ConstraintClass::Knapsack, 1, 1, OnlineAlgKind::GreedyKnapsack},
      {"add_knap2", UtilityClass::Additive, ConstraintClass::Knapsack, 1, 2, OnlineAlgKind::GreedyKnapsack},
  };
  return cells;
}

int cmd_bench(const std::string& out_path, int seeds, int doctors, int hospitals, int time_cap_ms,
              int jobs) {
  struct Task {
    BenchCell cell;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& cell : bench_cells())
    for (int s = 0; s < seeds; ++s) tasks.push_back({cell, static_cast<std::uint64_t>(s)});

  std::vector<std::string> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      std::ostringstream row;
      row << task.cell.name << "-seed" << task.seed << "," << to_string(task.cell.alg) << ",";
      const auto start = std::chrono::steady_clock::now();
      const auto elapsed_ms = [&start] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
      };
      try {
        RandomMarketParams params;
        params.doctors = doctors;
        params.hospitals = hospitals;
        params.utility = task.cell.utility;
        params.constraint = task.cell.constraint;
        params.k = task.cell.k;
        params.rho = task.cell.rho;
        params.eps = 0.3;
        const Market m = gen_random(task.seed, params);
        const double certified = certified_alpha(certified_ratios(m, task.cell.alg));
        const auto [mu, trace] = run_gda(m, task.cell.alg);
        const double achieved = min_alpha(m, mu);
        const auto ms = elapsed_ms();
        const bool timeout = time_cap_ms > 0 && ms > time_cap_ms;
        row << certified << "," << achieved << "," << ms << "," << (timeout ? "timeout" : "ok");
      } catch (const std::exception& e) {
        row << "inf,inf," << elapsed_ms() << ",error:" << e.what();
      }
      rows[i] = row.str();
    }
  };

  std::vector<std::thread> pool;
  const int thread_count = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  for (int t = 0; t < std::max(1, thread_count); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "instance,algorithm,certified_alpha,achieved_min_alpha,runtime_ms,status\n";
  for (const auto& row : rows) csv << row << "\n";
  write_output(out_path, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximately stable matching under independence-system constraints"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string alg = "greedy_matroid";
  std::string tie = "fifo";
  std::string trace_path;
  double alpha = 1.0;
  std::optional<double> alpha_opt;
  std::string family;
  std::string params_text;
  std::string hospital;
  std::string doctors;
  int seeds = 25;
  int bench_doctors = 8;
  int bench_hospitals = 2;
  int time_cap_ms = 10000;
  int jobs = 0;

  const auto add_market = [&](CLI::App* cmd) {
    cmd->add_option("--market", common.market_path, "market JSON file")->required();
  };
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--out", common.out_path, "output path (default stdout)");
  };

  auto* solve = app.add_subcommand("solve", "run deferred acceptance with online packing hospitals");
  add_market(solve);
  add_format(solve);
  solve->add_option("--alg", alg,
                    "greedy_matroid|greedy_knapsack|offline_exact, uniform or per-hospital "
                    "(h1=greedy_knapsack,*=greedy_matroid)");
  solve->add_option("--tie-break", tie, "fifo|lifo|seeded:<n>");
  solve->add_option("--trace", trace_path, "write the proposal trace JSON here");

  auto* check = app.add_subcommand("check", "test alpha-stability of a matching");
  add_market(check);
  add_format(check);
  check->add_option("--matching", common.matching_path, "matching JSON file")->required();
  check->add_option("--alpha", alpha, "stability factor")->required();

  auto* minalpha = app.add_subcommand("min-alpha", "smallest alpha at which a matching is stable");
  add_market(minalpha);
  add_format(minalpha);
  minalpha->add_option("--matching", common.matching_path, "matching JSON file")->required();

  auto* enumerate = app.add_subcommand("enumerate", "exhaustive stable-matching search");
  add_market(enumerate);
  add_format(enumerate);
  enumerate->add_option("--alpha", alpha_opt, "also search a witness at this factor");

  auto* gen = app.add_subcommand("gen", "generate a market");
  gen->add_option("--family", family,
                  "example1|example2|thm62|thm63|typed|overlap|budget|refugee|random")
      ->required();
  gen->add_option("--params", params_text, "comma-separated key=value list (lists use colons)");
  gen->add_option("--out", common.out_path, "output path (default stdout)");

  auto* pack = app.add_subcommand("pack", "exact packing for one hospital");
  add_market(pack);
  add_format(pack);
  pack->add_option("--hospital", hospital, "hospital name")->required();
  pack->add_option("--doctors", doctors, "colon-separated ground subset (default all)");

  auto* bench = app.add_subcommand("bench", "seeded ensembles per utility/constraint cell");
  bench->add_option("--out", common.out_path, "CSV path (default stdout)");
  bench->add_option("--seeds", seeds, "instances per cell");
  bench->add_option("--doctors", bench_doctors, "doctors per instance");
  bench->add_option("--hospitals", bench_hospitals, "hospitals per instance");
  bench->add_option("--time-cap-ms", time_cap_ms, "per-instance wall cap; overruns are recorded");
  bench->add_option("--jobs", jobs, "worker threads (default hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(common, alg, tie, trace_path);
    if (check->parsed()) return cmd_check(common, alpha);
    if (minalpha->parsed()) return cmd_min_alpha(common);
    if (enumerate->parsed()) return cmd_enumerate(common, alpha_opt);
    if (gen->parsed()) return cmd_gen(family, params_text, common.out_path);
    if (pack->parsed()) return cmd_pack(common, hospital, doctors);
    if (bench->parsed()) return cmd_bench(common.out_path, seeds, bench_doctors, bench_hospitals, time_cap_ms, jobs);
  } catch (const OracleLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOracleLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

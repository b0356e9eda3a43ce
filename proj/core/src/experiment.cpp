#include "arbor/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "arbor/errors.hpp"
#include "arbor/generators.hpp"
#include "arbor/random.hpp"

namespace arbor {

using nlohmann::json;

std::optional<HostModel> parse_host_model(std::string_view name) {
  if (name == "gnp") return HostModel::gnp;
  if (name == "regular") return HostModel::regular;
  return std::nullopt;
}

std::string_view to_string(HostModel model) { return model == HostModel::gnp ? "gnp" : "regular"; }

std::string_view to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::success: return "success";
    case TrialOutcome::search_failure: return "search_failure";
    case TrialOutcome::error: return "error";
  }
  return "unknown";
}

namespace {

std::size_t tree_size_for(std::size_t n, Rational eps) {
  // floor((1 - eps) n) = n - ceil(eps n)
  const std::int64_t cut = ceil_div(eps.num * static_cast<std::int64_t>(n), eps.den);
  return n - static_cast<std::size_t>(cut);
}

bool known_family(const std::string& name) {
  return name == "random" || parse_tree_family(name).has_value();
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw InvalidInput("trials must be at least 1");
  if (cfg.d < 2) throw InvalidInput("d must be at least 2");
  if (cfg.epsilon.num <= 0 || 2 * cfg.epsilon.num >= cfg.epsilon.den) {
    throw InvalidInput("epsilon must lie in (0, 1/2)");
  }
  if (cfg.n < 2) throw InvalidInput("n must be at least 2");
  if (cfg.model == HostModel::gnp) {
    if (!(cfg.c > 0.0) || cfg.c > static_cast<double>(cfg.n)) {
      throw InvalidInput("c must lie in (0, n] so that p = c/n is a probability");
    }
  } else {
    if (cfg.regular_degree < 1 || cfg.regular_degree >= cfg.n) {
      throw InvalidInput("regular degree D must lie in [1, n)");
    }
    if ((cfg.n * cfg.regular_degree) % 2 != 0) throw InvalidInput("n * D must be even");
  }
  if (cfg.tree_families.empty()) throw InvalidInput("tree corpus needs at least one family");
  for (const auto& f : cfg.tree_families) {
    if (!known_family(f)) throw InvalidInput("unknown tree family '" + f + "'");
  }
  if (tree_size_for(cfg.n, cfg.epsilon) < 1) throw InvalidInput("tree would be empty");
  if (cfg.budget.max_backtracks < 0 && !cfg.budget.unbounded()) {
    throw InvalidInput("max_backtracks must be non-negative or -1 for unbounded");
  }
}

// ------------------------------------------------------------------- config

namespace {

template <typename T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config field '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InvalidInput(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

json budget_json(const EmbedBudget& b) {
  return {{"max_backtracks", b.max_backtracks},
          {"order", std::string(to_string(b.order))},
          {"rule", std::string(to_string(b.rule))},
          {"seed", b.seed}};
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["schema"] = std::string(kExperimentSchema);
  j["model"] = std::string(to_string(cfg.model));
  j["n"] = cfg.n;
  if (cfg.model == HostModel::gnp) {
    j["c"] = cfg.c;
  } else {
    j["D"] = cfg.regular_degree;
  }
  j["d"] = cfg.d;
  j["epsilon"] = cfg.epsilon.to_double();
  j["tree"] = {{"families", cfg.tree_families}};
  if (cfg.tree_seed) j["tree"]["seed"] = *cfg.tree_seed;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["budget"] = budget_json(cfg.budget);
  j["split_rounds"] = cfg.split_rounds;
  j["threads"] = cfg.threads;
  if (!cfg.output.empty()) j["output"] = cfg.output;
  return j;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  reject_unknown(j,
                 {"schema", "model", "n", "c", "D", "d", "epsilon", "tree", "trials", "seed",
                  "budget", "split_rounds", "threads", "output"},
                 "config");
  if (!j.contains("schema") || field<std::string>(j, "schema") != kExperimentSchema) {
    throw InvalidInput("config schema must be \"" + std::string(kExperimentSchema) + "\"");
  }

  ExperimentConfig cfg;
  const auto model = parse_host_model(field<std::string>(j, "model"));
  if (!model) throw InvalidInput("model must be \"gnp\" or \"regular\"");
  cfg.model = *model;
  cfg.n = field<std::size_t>(j, "n");
  if (cfg.model == HostModel::gnp) {
    if (j.contains("D")) throw InvalidInput("field 'D' is only valid for the regular model");
    cfg.c = field<double>(j, "c");
  } else {
    if (j.contains("c")) throw InvalidInput("field 'c' is only valid for the gnp model");
    cfg.regular_degree = field<std::size_t>(j, "D");
  }
  cfg.d = field<std::size_t>(j, "d");
  cfg.epsilon = Rational::from_double(field<double>(j, "epsilon"));
  if (j.contains("tree")) {
    const json& tree = j.at("tree");
    if (!tree.is_object()) throw InvalidInput("'tree' must be an object");
    reject_unknown(tree, {"families", "seed"}, "tree");
    if (tree.contains("families")) cfg.tree_families = field<std::vector<std::string>>(tree, "families");
    if (tree.contains("seed")) cfg.tree_seed = field<std::uint64_t>(tree, "seed");
  }
  cfg.trials = field<std::size_t>(j, "trials");
  if (j.contains("seed")) cfg.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("budget")) {
    const json& b = j.at("budget");
    if (!b.is_object()) throw InvalidInput("'budget' must be an object");
    reject_unknown(b, {"max_backtracks", "order", "rule", "seed"}, "budget");
    if (b.contains("max_backtracks")) cfg.budget.max_backtracks = field<long long>(b, "max_backtracks");
    if (b.contains("order")) {
      const auto order = parse_node_order(field<std::string>(b, "order"));
      if (!order) throw InvalidInput("budget.order must be \"bfs\" or \"dfs\"");
      cfg.budget.order = *order;
    }
    if (b.contains("rule")) {
      const auto rule = parse_candidate_rule(field<std::string>(b, "rule"));
      if (!rule) throw InvalidInput("unknown budget.rule");
      cfg.budget.rule = *rule;
    }
    if (b.contains("seed")) cfg.budget.seed = field<std::uint64_t>(b, "seed");
  }
  if (j.contains("split_rounds")) cfg.split_rounds = field<std::size_t>(j, "split_rounds");
  if (j.contains("threads")) cfg.threads = field<std::size_t>(j, "threads");
  if (j.contains("output")) cfg.output = field<std::string>(j, "output");
  validate(cfg);
  return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

// ------------------------------------------------------------------- trials

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw InvalidInput("Wilson interval needs at least one trial");
  if (successes > trials) throw InvalidInput("more successes than trials");
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t trial_seed(std::uint64_t experiment_seed, std::size_t index) {
  return splitmix64(splitmix64(experiment_seed) ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

TrialInstance trial_instance(const ExperimentConfig& cfg, std::size_t index) {
  validate(cfg);
  const std::uint64_t seed = trial_seed(cfg.seed, index);
  TrialInstance inst;
  RngStream host_rng(seed, 1);
  if (cfg.model == HostModel::gnp) {
    inst.host = gnp(cfg.n, cfg.c / static_cast<double>(cfg.n), host_rng);
  } else {
    inst.host = random_regular(cfg.n, cfg.regular_degree, host_rng);
  }
  inst.family = cfg.tree_families[index % cfg.tree_families.size()];
  const std::size_t k = tree_size_for(cfg.n, cfg.epsilon);
  if (inst.family == "random") {
    const std::uint64_t tree_seed =
        cfg.tree_seed ? trial_seed(*cfg.tree_seed, index) : splitmix64(seed ^ 2);
    inst.tree = random_bounded_degree_tree(k, cfg.d, tree_seed);
  } else {
    inst.tree = make_special_tree(*parse_tree_family(inst.family), k, cfg.d);
  }
  return inst;
}

namespace {

PipelineOptions pipeline_options(const ExperimentConfig& cfg) {
  PipelineOptions options;
  options.budget = cfg.budget;
  options.split_rounds = cfg.split_rounds;
  return options;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t index) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.index = index;
  rec.seed = trial_seed(cfg.seed, index);
  try {
    const TrialInstance inst = trial_instance(cfg, index);
    rec.host_vertices = inst.host.vertex_count();
    rec.host_edges = inst.host.edge_count();
    const auto [lo, hi] = degree_extrema(inst.host);
    rec.host_min_degree = lo;
    rec.host_max_degree = hi;
    rec.tree_family = inst.family;
    rec.tree_size = inst.tree.size();
    rec.tree_max_degree = inst.tree.max_degree();

    const auto result = embed_nearly_spanning(inst.host, inst.tree, cfg.epsilon, rec.seed,
                                              pipeline_options(cfg));
    const auto& trace = result.trace;
    rec.piece_count = trace.piece_count;
    rec.warnings = trace.warnings.size();
    for (const auto& step : trace.steps) rec.backtracks += step.backtracks;
    if (result.embedding) {
      rec.verified = static_cast<bool>(verify_embedding(inst.host, inst.tree, *result.embedding));
      rec.outcome = rec.verified ? TrialOutcome::success : TrialOutcome::error;
      if (!rec.verified) rec.message = "embedding failed verification";
    } else {
      rec.outcome = TrialOutcome::search_failure;
      rec.failed_step = trace.failed_step;
      rec.message = trace.failure_reason;
    }
  } catch (const std::exception& e) {
    rec.outcome = TrialOutcome::error;
    rec.message = e.what();
  }
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

TrialReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  TrialReport report;
  report.config = cfg;
  report.trials.resize(cfg.trials);

  std::size_t workers = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  workers = std::clamp<std::size_t>(workers, 1, cfg.trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) report.trials[i] = run_trial(cfg, i);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (const auto& rec : report.trials) report.successes += rec.outcome == TrialOutcome::success;
  report.success_rate = static_cast<double>(report.successes) / static_cast<double>(cfg.trials);
  report.interval = wilson_interval(report.successes, cfg.trials);
  return report;
}

Replay replay_trial(const ExperimentConfig& cfg, std::size_t index) {
  if (index >= cfg.trials) throw InvalidInput("trial index out of range");
  Replay replay;
  replay.instance = trial_instance(cfg, index);
  replay.result = embed_nearly_spanning(replay.instance.host, replay.instance.tree, cfg.epsilon,
                                        trial_seed(cfg.seed, index), pipeline_options(cfg));
  if (replay.result.embedding) {
    replay.verified = static_cast<bool>(
        verify_embedding(replay.instance.host, replay.instance.tree, *replay.result.embedding));
  }
  return replay;
}

// ------------------------------------------------------------------ reports

std::string report_to_json(const TrialReport& report, bool include_timing) {
  json j;
  j["schema"] = std::string(kReportSchema);
  j["rng"] = std::string(kRngAlgorithm);
  j["config"] = config_json(report.config);
  // the worker count does not change results; leave it out with the timings
  if (!include_timing) j["config"].erase("threads");
  json trials = json::array();
  for (const auto& r : report.trials) {
    json t = {{"index", r.index},
              {"seed", r.seed},
              {"graph", {{"n", r.host_vertices},
                         {"m", r.host_edges},
                         {"min_degree", r.host_min_degree},
                         {"max_degree", r.host_max_degree}}},
              {"tree", {{"family", r.tree_family}, {"size", r.tree_size}, {"max_degree", r.tree_max_degree}}},
              {"outcome", std::string(to_string(r.outcome))},
              {"pieces", r.piece_count},
              {"backtracks", r.backtracks},
              {"warnings", r.warnings},
              {"verified", r.verified}};
    if (r.failed_step) t["failed_step"] = *r.failed_step;
    if (!r.message.empty()) t["message"] = r.message;
    if (include_timing) t["wall_time_ms"] = r.wall_time_ms;
    trials.push_back(std::move(t));
  }
  j["trials"] = std::move(trials);
  j["aggregate"] = {{"trials", report.trials.size()},
                    {"successes", report.successes},
                    {"success_rate", report.success_rate},
                    {"ci", {{"method", "wilson"}, {"level", 0.95}, {"low", report.interval.low},
                            {"high", report.interval.high}}}};
  return j.dump(2);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string report_to_csv(const TrialReport& report, bool include_timing) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "index,seed,n,m,min_degree,max_degree,tree_family,tree_size,outcome,pieces,backtracks,"
         "warnings,verified,failed_step,message";
  if (include_timing) out << ",wall_time_ms";
  out << '\n';
  for (const auto& r : report.trials) {
    out << r.index << ',' << r.seed << ',' << r.host_vertices << ',' << r.host_edges << ','
        << r.host_min_degree << ',' << r.host_max_degree << ',' << csv_escape(r.tree_family) << ','
        << r.tree_size << ',' << to_string(r.outcome) << ',' << r.piece_count << ','
        << r.backtracks << ',' << r.warnings << ',' << (r.verified ? "true" : "false") << ',';
    if (r.failed_step) out << *r.failed_step;
    out << ',' << csv_escape(r.message);
    if (include_timing) out << ',' << r.wall_time_ms;
    out << '\n';
  }
  return out.str();
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter parameter,
                            const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidInput("sweep grid is empty");
  std::vector<SweepRow> rows;
  for (double value : grid) {
    ExperimentConfig cfg = base;
    if (parameter == SweepParameter::c) {
      cfg.model = HostModel::gnp;
      cfg.c = value;
    } else {
      if (value < 1 || value != std::floor(value)) throw InvalidInput("D grid values must be positive integers");
      cfg.model = HostModel::regular;
      cfg.regular_degree = static_cast<std::size_t>(value);
    }
    SweepRow row;
    row.value = value;
    row.report = run_experiment(cfg);
    row.non_monotone = !rows.empty() && row.report.success_rate < rows.back().report.success_rate;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, SweepParameter parameter) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "parameter,value,trials,successes,success_rate,ci_low,ci_high,non_monotone,theorem1_c\n";
  for (const auto& row : rows) {
    const auto& cfg = row.report.config;
    out << (parameter == SweepParameter::c ? "c" : "D") << ',' << row.value << ','
        << row.report.trials.size() << ',' << row.report.successes << ','
        << row.report.success_rate << ',' << row.report.interval.low << ','
        << row.report.interval.high << ',' << (row.non_monotone ? "true" : "false") << ','
        << theorem1_edge_density(cfg.d, cfg.epsilon.to_double()) << '\n';
  }
  return out.str();
}

}  // namespace arbor

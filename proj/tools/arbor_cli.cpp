// arbor: command-line front end for the tree-embedding library.
//
// Exit codes: 0 success, 2 invalid input or usage, 3 search failure,
// 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "arbor/embedder.hpp"
#include "arbor/errors.hpp"
#include "arbor/expansion.hpp"
#include "arbor/experiment.hpp"
#include "arbor/generators.hpp"
#include "arbor/graph.hpp"
#include "arbor/pipeline.hpp"
#include "arbor/random.hpp"
#include "arbor/spectral.hpp"
#include "arbor/splitter.hpp"
#include "arbor/tree.hpp"

namespace {

using nlohmann::json;
using namespace arbor;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitSearch = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "json";
};

/// Signals a search failure after its report has been written.
struct SearchFailed {};

void write_text(const Globals& g, const std::string& text) {
  if (g.output.empty() || g.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw InvalidInput("cannot open output file '" + g.output + "'");
  out << text;
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

/// One header row and one value row from the scalar fields of an object.
std::string flat_csv(const json& j) {
  std::string head;
  std::string row;
  for (const auto& [key, value] : j.items()) {
    if (value.is_structured()) continue;
    if (!head.empty()) {
      head += ',';
      row += ',';
    }
    head += key;
    row += csv_cell(value);
  }
  return head + '\n' + row + '\n';
}

std::string map_csv(const std::vector<Vertex>& map) {
  std::string out = "guest,host\n";
  for (std::size_t v = 0; v < map.size(); ++v) {
    out += std::to_string(v) + ',' + std::to_string(map[v]) + '\n';
  }
  return out;
}

void emit(const Globals& g, const json& j, const std::string& csv) {
  write_text(g, g.format == "csv" ? csv : j.dump(2) + '\n');
}

void emit(const Globals& g, const json& j) { emit(g, j, flat_csv(j)); }

RootedTree with_degree_bound(const RootedTree& t, std::size_t d) {
  if (d == 0) return t;
  return RootedTree::from_parents({t.parents().begin(), t.parents().end()}, d);
}

json verdict_json(const ExpansionVerdict& v) {
  json j = {{"alpha", v.alpha},
            {"c", v.c},
            {"mode", std::string(to_string(v.mode))},
            {"verdict", std::string(to_string(v.verdict))},
            {"subsets_checked", v.subsets_checked}};
  if (v.witness) {
    j["witness"] = *v.witness;
    j["witness_neighborhood"] = v.witness_neighborhood;
  }
  return j;
}

json trace_json(const PipelineTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"index", s.index},
                     {"available", s.available},
                     {"piece_size", s.piece_size},
                     {"root_image", s.root_image},
                     {"roots_added", s.roots_added},
                     {"backtracks", s.backtracks},
                     {"root_in_own_class", s.root_in_own_class},
                     {"pending_roots", s.pending_roots}});
  }
  json j = {{"epsilon", t.epsilon},
            {"d", t.d},
            {"piece_count", t.piece_count},
            {"class_count", t.class_count},
            {"split_verified", t.split_verified},
            {"split_rounds", t.split_rounds},
            {"chosen_class_sizes", json::array()},
            {"chosen_total", t.chosen_total},
            {"max_pending_roots", t.max_pending_roots},
            {"steps", std::move(steps)},
            {"warnings", t.warnings},
            {"embedded", t.embedded}};
  for (const auto& cls : t.chosen_classes) j["chosen_class_sizes"].push_back(cls.size());
  if (t.failed_step) {
    j["failed_step"] = *t.failed_step;
    j["failure_reason"] = t.failure_reason;
    j["deepest_partial"] = t.deepest_partial;
  }
  return j;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidInput("bad grid value '" + item + "'");
    grid.push_back(v);
  }
  return grid;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-degree tree embedding in expanding graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--output,-o", g.output, "Write the result here instead of stdout");
  app.add_option("--format", g.format, "Result format")->check(CLI::IsMember({"json", "csv"}));

  std::function<void()> action;

  // gen-graph
  auto* gen_graph = app.add_subcommand("gen-graph", "Sample a random host graph");
  std::string model = "gnp";
  std::size_t n = 0;
  double p = -1.0;
  std::size_t big_d = 0;
  gen_graph->add_option("--model", model)->check(CLI::IsMember({"gnp", "regular"}));
  gen_graph->add_option("--n", n)->required();
  gen_graph->add_option("--p", p, "Edge probability (gnp)");
  gen_graph->add_option("--D", big_d, "Degree (regular)");
  gen_graph->callback([&] {
    action = [&] {
      RngStream rng(g.seed);
      Graph graph;
      if (model == "gnp") {
        if (p < 0.0) throw InvalidInput("--p is required for the gnp model");
        graph = gnp(n, p, rng);
      } else {
        if (big_d == 0) throw InvalidInput("--D is required for the regular model");
        graph = random_regular(n, big_d, rng);
      }
      std::ostringstream out;
      write_graph(out, graph);
      write_text(g, out.str());
    };
  });

  // gen-tree
  auto* gen_tree = app.add_subcommand("gen-tree", "Generate a bounded-degree tree");
  std::string kind = "random";
  std::size_t k = 0;
  std::size_t d = 3;
  gen_tree->add_option("--kind", kind)
      ->check(CLI::IsMember({"random", "path", "spider", "complete_d_ary", "caterpillar"}));
  gen_tree->add_option("--k", k)->required();
  gen_tree->add_option("--d", d);
  gen_tree->callback([&] {
    action = [&] {
      const RootedTree t = kind == "random" ? random_bounded_degree_tree(k, d, g.seed)
                                            : make_special_tree(*parse_tree_family(kind), k, d);
      std::ostringstream out;
      write_tree(out, t);
      write_text(g, out.str());
    };
  });

  // cut-tree
  auto* cut_tree = app.add_subcommand("cut-tree", "Partition a tree, or make one cut with --k");
  std::string tree_file;
  std::string graph_file;
  double eps = 0.0;
  std::size_t cut_k = 0;
  std::size_t tree_d = 0;
  cut_tree->add_option("--tree", tree_file)->required();
  cut_tree->add_option("--eps", eps);
  cut_tree->add_option("--n", n, "Host order the partition is sized for");
  cut_tree->add_option("--k", cut_k, "Single cut with a component of at least k vertices");
  cut_tree->add_option("--d", tree_d, "Degree bound (default: the tree's own)");
  cut_tree->callback([&] {
    action = [&] {
      const RootedTree t = with_degree_bound(read_tree_file(tree_file), tree_d);
      if (cut_k > 0) {
        const TreeCut cut = cut_once(t, cut_k);
        json j = {{"parent", cut.parent_vertex},
                  {"child", cut.child_vertex},
                  {"subtree_size", cut.subtree_size}};
        emit(g, j);
        return;
      }
      if (eps <= 0.0 || n == 0) throw InvalidInput("partition needs --eps and --n (or use --k)");
      const TreePartition part = partition_tree(t, Rational::from_double(eps), n);
      json pieces = json::array();
      std::string csv = "piece,size,root,connect_parent\n";
      for (std::size_t i = 0; i < part.pieces.size(); ++i) {
        const auto& piece = part.pieces[i];
        json pj = {{"size", piece.tree.size()}, {"root", piece.global_root()}, {"vertices", piece.to_global}};
        csv += std::to_string(i) + ',' + std::to_string(piece.tree.size()) + ',' +
               std::to_string(piece.global_root()) + ',';
        if (piece.connect_edge) {
          pj["connect_edge"] = {piece.connect_edge->first, piece.connect_edge->second};
          csv += std::to_string(piece.connect_edge->first);
        }
        csv += '\n';
        pieces.push_back(std::move(pj));
      }
      json j = {{"n", n},
                {"epsilon", eps},
                {"d", t.degree_bound()},
                {"tree_size", t.size()},
                {"piece_count", part.piece_count()},
                {"piece_limit", partition_piece_limit(t.degree_bound(), eps)},
                {"pieces", std::move(pieces)}};
      emit(g, j, csv);
    };
  });

  // split
  auto* split = app.add_subcommand("split", "Degree-preserving vertex split into K classes");
  std::size_t classes = 0;
  std::size_t max_rounds = 1000;
  split->add_option("--graph", graph_file)->required();
  split->add_option("--K", classes)->required();
  split->add_option("--max-rounds", max_rounds);
  split->callback([&] {
    action = [&] {
      const Graph graph = read_graph_file(graph_file);
      const DegreeSplit s = split_degrees(graph, classes, g.seed, max_rounds);
      json j = {{"class_count", s.class_count},
                {"classes", s.classes},
                {"guarantee", s.guarantee},
                {"required_neighbors", s.required_neighbors},
                {"attempts_used", s.attempts_used},
                {"resamplings", s.resamplings},
                {"verified", s.verified}};
      std::string csv = "vertex,class\n";
      for (std::size_t v = 0; v < s.color.size(); ++v) {
        csv += std::to_string(v) + ',' + std::to_string(s.color[v]) + '\n';
      }
      emit(g, j, csv);
    };
  });

  // check-expander
  auto* check = app.add_subcommand("check-expander", "Certify or refute (alpha, c)-expansion");
  double alpha = 0.0;
  double c = 0.0;
  std::string mode = "exact";
  std::size_t trials = 1000;
  bool exclude_self = false;
  std::size_t exact_cap = kDefaultExactCap;
  check->add_option("--graph", graph_file)->required();
  check->add_option("--alpha", alpha)->required();
  check->add_option("--c", c)->required();
  check->add_option("--mode", mode)->check(CLI::IsMember({"exact", "sampled"}));
  check->add_option("--trials", trials);
  check->add_option("--exact-cap", exact_cap);
  check->add_flag("--exclude-self", exclude_self, "Count N(X) minus X");
  check->callback([&] {
    action = [&] {
      const Graph graph = read_graph_file(graph_file);
      ExpansionOptions options{exact_cap, exclude_self};
      const auto v = mode == "exact" ? verify_expander_exact(graph, alpha, c, options)
                                     : refute_expander_sampled(graph, alpha, c, trials, g.seed, options);
      emit(g, verdict_json(v));
    };
  });

  // spectral
  auto* spectral = app.add_subcommand("spectral", "Second adjacency eigenvalue of a regular graph");
  std::string method = "dense";
  double tolerance = 0.0;
  std::size_t max_iterations = 600;
  std::size_t premise_d = 0;
  spectral->add_option("--graph", graph_file)->required();
  spectral->add_option("--method", method)->check(CLI::IsMember({"dense", "iterative"}));
  spectral->add_option("--tol", tolerance);
  spectral->add_option("--max-iterations", max_iterations);
  spectral->add_option("--d", premise_d, "Also evaluate the spectral-gap premise for this d");
  spectral->add_option("--eps", eps);
  spectral->callback([&] {
    action = [&] {
      const Graph graph = read_graph_file(graph_file);
      const auto prof = second_eigenvalue(graph, *parse_eigen_method(method),
                                          tolerance > 0.0 ? std::optional(tolerance) : std::nullopt,
                                          max_iterations, g.seed);
      json j = {{"n", prof.n},
                {"D", prof.regular_degree},
                {"lambda", prof.lambda},
                {"method", std::string(to_string(prof.method))},
                {"tolerance", prof.tolerance},
                {"iterations", prof.iterations},
                {"fp_min_degree", premise_d >= 2 ? fp_min_degree_threshold(premise_d, prof.lambda) : 0.0}};
      if (premise_d >= 2) {
        const auto prem = check_theorem2_premise(prof, premise_d, eps);
        j["premise_holds"] = prem.holds;
        j["required_ratio"] = prem.required_ratio;
        if (!prem.infinite_gap) j["actual_ratio"] = prem.actual_ratio;
      }
      emit(g, j);
    };
  });

  // embed
  auto* embed = app.add_subcommand("embed", "Embed a rooted tree with a fixed root image");
  Vertex root_image = 0;
  long long max_backtracks = 1'000'000;
  std::string order = "bfs";
  std::string rule = "min_residual_degree";
  embed->add_option("--graph", graph_file)->required();
  embed->add_option("--tree", tree_file)->required();
  embed->add_option("--root-image", root_image)->required();
  embed->add_option("--max-backtracks", max_backtracks, "-1 searches exhaustively");
  embed->add_option("--order", order)->check(CLI::IsMember({"bfs", "dfs"}));
  embed->add_option("--rule", rule)->check(
      CLI::IsMember({"min_residual_degree", "max_residual_degree", "random"}));
  embed->callback([&] {
    action = [&] {
      const Graph graph = read_graph_file(graph_file);
      const RootedTree t = read_tree_file(tree_file);
      EmbedBudget budget{max_backtracks, *parse_node_order(order), *parse_candidate_rule(rule), g.seed};
      try {
        const Embedding e = embed_rooted_tree(graph, t, root_image, budget);
        emit(g, {{"success", true}, {"map", e.map}, {"backtracks", e.backtracks}}, map_csv(e.map));
      } catch (const SearchFailure& f) {
        json j = {{"success", false},
                  {"deepest_partial", f.deepest_partial()},
                  {"backtracks", f.backtracks()},
                  {"exhausted", f.exhausted()},
                  {"reason", f.what()}};
        emit(g, j);
        throw SearchFailed{};
      }
    };
  });

  // extract-core
  auto* core = app.add_subcommand("extract-core", "Peel a graph to degrees within [D, 10D]");
  double theta = 0.1;
  std::string core_output;
  core->add_option("--graph", graph_file)->required();
  core->add_option("--D", big_d)->required();
  core->add_option("--theta", theta);
  core->add_option("--core-output", core_output, "Also write the core in graph text format");
  core->callback([&] {
    action = [&] {
      const Graph graph = read_graph_file(graph_file);
      const auto rep = extract_core(graph, big_d, theta);
      json j = {{"n", graph.vertex_count()},
                {"D", rep.target_degree},
                {"theta", rep.theta},
                {"removed_high", rep.removed_high.size()},
                {"removed_low", rep.removed_low.size()},
                {"core_vertices", rep.core.vertex_count()},
                {"core_edges", rep.core.edge_count()},
                {"degrees_ok", rep.degrees_ok},
                {"within_budget", rep.within_budget}};
      if (!core_output.empty()) {
        std::ofstream out(core_output);
        if (!out) throw InvalidInput("cannot open '" + core_output + "'");
        write_graph(out, rep.core);
      }
      emit(g, j);
    };
  });

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Embed a nearly spanning tree");
  pipe->add_option("--graph", graph_file)->required();
  pipe->add_option("--tree", tree_file)->required();
  pipe->add_option("--eps", eps)->required();
  pipe->add_option("--max-backtracks", max_backtracks);
  pipe->add_option("--d", tree_d, "Degree bound (default: the tree's own)");
  pipe->callback([&] {
    action = [&] {
      const Graph graph = read_graph_file(graph_file);
      const RootedTree t = with_degree_bound(read_tree_file(tree_file), tree_d);
      PipelineOptions options;
      options.budget.max_backtracks = max_backtracks;
      options.budget.seed = g.seed;
      const auto result = embed_nearly_spanning(graph, t, Rational::from_double(eps), g.seed, options);
      json j = {{"outcome", result.embedding ? "success" : "search_failure"},
                {"trace", trace_json(result.trace)}};
      if (result.embedding) j["map"] = result.embedding->map;
      emit(g, j, result.embedding ? map_csv(result.embedding->map) : flat_csv(j["trace"]));
      if (!result.embedding) throw SearchFailed{};
    };
  });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a seeded batch of pipeline trials");
  std::string config_file;
  std::size_t replay = static_cast<std::size_t>(-1);
  bool timing = true;
  experiment->add_option("--config", config_file)->required();
  experiment->add_option("--replay", replay, "Rerun and re-verify a single trial");
  experiment->add_flag("!--no-timing", timing, "Drop wall-clock fields");
  experiment->callback([&] {
    action = [&] {
      ExperimentConfig cfg = parse_experiment_config(read_file(config_file));
      if (app.count("--seed") > 0) cfg.seed = g.seed;
      if (g.output.empty() && !cfg.output.empty()) g.output = cfg.output;
      if (replay != static_cast<std::size_t>(-1)) {
        const auto r = replay_trial(cfg, replay);
        json j = {{"index", replay},
                  {"seed", trial_seed(cfg.seed, replay)},
                  {"outcome", r.result.embedding ? "success" : "search_failure"},
                  {"verified", r.verified},
                  {"trace", trace_json(r.result.trace)}};
        emit(g, j);
        return;
      }
      const auto report = run_experiment(cfg);
      write_text(g, g.format == "csv" ? report_to_csv(report, timing)
                                      : report_to_json(report, timing) + '\n');
    };
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Success rate over a grid of c or D");
  std::string param = "c";
  std::string grid_text;
  sweep_cmd->add_option("--config", config_file)->required();
  sweep_cmd->add_option("--param", param)->check(CLI::IsMember({"c", "D"}));
  sweep_cmd->add_option("--grid", grid_text, "Comma-separated values")->required();
  sweep_cmd->callback([&] {
    action = [&] {
      ExperimentConfig cfg = parse_experiment_config(read_file(config_file));
      if (app.count("--seed") > 0) cfg.seed = g.seed;
      const auto which = param == "c" ? SweepParameter::c : SweepParameter::regular_degree;
      const auto rows = sweep(cfg, which, parse_grid(grid_text));
      if (g.format == "csv") {
        write_text(g, sweep_to_csv(rows, which));
        return;
      }
      json j = json::array();
      for (const auto& row : rows) {
        j.push_back({{"value", row.value},
                     {"trials", row.report.trials.size()},
                     {"successes", row.report.successes},
                     {"success_rate", row.report.success_rate},
                     {"ci_low", row.report.interval.low},
                     {"ci_high", row.report.interval.high},
                     {"non_monotone", row.non_monotone}});
      }
      write_text(g, j.dump(2) + '\n');
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    action();
    return kExitOk;
  } catch (const SearchFailed&) {
    return kExitSearch;
  } catch (const SearchFailure& e) {
    std::cerr << "arbor: " << e.what() << '\n';
    return kExitSearch;
  } catch (const SplitFailure& e) {
    std::cerr << "arbor: " << e.what() << '\n';
    return kExitSearch;
  } catch (const ConvergenceError& e) {
    std::cerr << "arbor: " << e.what() << " (estimate " << e.estimate() << ", residual "
              << e.residual() << ")\n";
    return kExitSearch;
  } catch (const InvalidInput& e) {
    std::cerr << "arbor: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const PreconditionError& e) {
    std::cerr << "arbor: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InfeasibleError& e) {
    std::cerr << "arbor: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "arbor: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

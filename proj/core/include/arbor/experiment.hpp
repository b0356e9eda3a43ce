#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/embedder.hpp"
#include "arbor/graph.hpp"
#include "arbor/pipeline.hpp"
#include "arbor/rational.hpp"
#include "arbor/tree.hpp"

namespace arbor {

inline constexpr std::string_view kExperimentSchema = "arbor.experiment/1";
inline constexpr std::string_view kReportSchema = "arbor.report/1";

enum class HostModel { gnp, regular };

std::optional<HostModel> parse_host_model(std::string_view name);
std::string_view to_string(HostModel model);

struct ExperimentConfig {
  HostModel model = HostModel::gnp;
  std::size_t n = 0;
  /// G(n, c/n) edge density; gnp only.
  double c = 0.0;
  /// Regular degree; regular only.
  std::size_t regular_degree = 0;
  std::size_t d = 3;
  Rational epsilon{2, 5};
  /// "random" or a special family name; trial i uses families[i % size].
  std::vector<std::string> tree_families{"random"};
  /// Fixes the tree corpus independently of the host seeds when set.
  std::optional<std::uint64_t> tree_seed;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  EmbedBudget budget;
  std::size_t split_rounds = 1000;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  std::string output;
};

/// Throws InvalidInput on any out-of-range field.
void validate(const ExperimentConfig& cfg);

/// Parses and validates a config document. Unknown keys and a missing or
/// different "schema" are rejected.
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

enum class TrialOutcome { success, search_failure, error };

std::string_view to_string(TrialOutcome outcome);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t host_vertices = 0;
  std::size_t host_edges = 0;
  std::size_t host_min_degree = 0;
  std::size_t host_max_degree = 0;
  std::string tree_family;
  std::size_t tree_size = 0;
  std::size_t tree_max_degree = 0;
  TrialOutcome outcome = TrialOutcome::error;
  std::size_t piece_count = 0;
  std::optional<std::size_t> failed_step;
  std::string message;
  long long backtracks = 0;
  std::size_t warnings = 0;
  bool verified = false;
  double wall_time_ms = 0.0;
};

struct WilsonInterval {
  double low;
  double high;
};

/// 95% Wilson score interval for k successes in n trials (n >= 1).
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct TrialReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  std::size_t successes = 0;
  double success_rate = 0.0;
  WilsonInterval interval{0.0, 0.0};
};

/// Per-trial seed; trials never share random streams.
std::uint64_t trial_seed(std::uint64_t experiment_seed, std::size_t index);

/// Runs every trial on a worker pool. Results are stored by trial index, so
/// the report does not depend on the thread count.
TrialReport run_experiment(const ExperimentConfig& cfg);

struct TrialInstance {
  Graph host;
  RootedTree tree;
  std::string family;
};

/// Rebuilds the host and tree of trial `index` from the config alone.
TrialInstance trial_instance(const ExperimentConfig& cfg, std::size_t index);

struct Replay {
  TrialInstance instance;
  PipelineResult result;
  bool verified = false;
};

/// Reruns one trial and re-verifies its embedding from scratch.
Replay replay_trial(const ExperimentConfig& cfg, std::size_t index);

/// JSON report. Wall times and the worker count are left out unless include_timing is set, which
/// makes reports of identical configs byte-identical.
std::string report_to_json(const TrialReport& report, bool include_timing = true);
/// One row per trial.
std::string report_to_csv(const TrialReport& report, bool include_timing = true);

enum class SweepParameter { c, regular_degree };

struct SweepRow {
  double value = 0.0;
  TrialReport report;
  /// Success rate dropped below the previous grid point's.
  bool non_monotone = false;
};

/// run_experiment at every grid point, in grid order.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter parameter,
                            const std::vector<double>& grid);

/// Columns: parameter, value, trials, successes, success_rate, ci_low,
/// ci_high, non_monotone, theorem1_c.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, SweepParameter parameter);

}  // namespace arbor

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "arbor/errors.hpp"
#include "arbor/experiment.hpp"

using namespace arbor;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.model = HostModel::gnp;
  cfg.n = 500;
  cfg.c = 20.0;
  cfg.d = 3;
  cfg.epsilon = Rational{2, 5};
  cfg.trials = 20;
  cfg.seed = 17;
  cfg.threads = 2;
  return cfg;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  return lines;
}

}  // namespace

TEST_CASE("wilson interval") {
  const auto half = wilson_interval(10, 20);
  CHECK(half.low == doctest::Approx(0.299298).epsilon(1e-5));
  CHECK(half.high == doctest::Approx(0.700702).epsilon(1e-5));
  const auto all = wilson_interval(20, 20);
  CHECK(all.high == doctest::Approx(1.0));
  CHECK(all.low == doctest::Approx(0.838875).epsilon(1e-5));
  const auto none = wilson_interval(0, 5);
  CHECK(none.low == doctest::Approx(0.0));
  CHECK_THROWS_AS(wilson_interval(1, 0), InvalidInput);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidInput);
  cfg = small_config();
  cfg.epsilon = Rational{1, 2};
  CHECK_THROWS_AS(validate(cfg), InvalidInput);
  cfg = small_config();
  cfg.model = HostModel::regular;
  cfg.regular_degree = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidInput);
  CHECK_NOTHROW(validate(small_config()));
}

TEST_CASE("config documents") {
  const ExperimentConfig cfg = small_config();
  const std::string text = experiment_config_to_json(cfg);
  const ExperimentConfig back = parse_experiment_config(text);
  CHECK(experiment_config_to_json(back) == text);

  CHECK_THROWS_AS(parse_experiment_config(R"({"schema":"arbor.experiment/1","model":"gnp","n":100,"c":5,"colour":1})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_experiment_config(R"({"schema":"arbor.experiment/2","model":"gnp","n":100,"c":5})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_experiment_config(R"({"model":"gnp","n":100,"c":5})"), InvalidInput);
  CHECK_THROWS_AS(parse_experiment_config("not json"), InvalidInput);

  const auto reg = parse_experiment_config(
      R"({"schema":"arbor.experiment/1","model":"regular","n":200,"D":8,"d":3,"epsilon":0.25,"trials":3,
          "tree":{"families":["path","random"],"seed":5}})");
  CHECK(reg.model == HostModel::regular);
  CHECK(reg.regular_degree == 8);
  CHECK(reg.epsilon == Rational{1, 4});
  CHECK(reg.tree_families.size() == 2);
  CHECK(reg.tree_seed == std::optional<std::uint64_t>{5});
}

TEST_CASE("experiment report") {
  const ExperimentConfig cfg = small_config();
  const TrialReport report = run_experiment(cfg);
  REQUIRE(report.trials.size() == 20);
  std::size_t successes = 0;
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& t = report.trials[i];
    CHECK(t.index == i);
    CHECK(t.host_vertices == 500);
    CHECK(t.tree_size == 300);
    CHECK(t.tree_max_degree <= 3);
    if (t.outcome == TrialOutcome::success) {
      ++successes;
      CHECK(t.verified);
    }
  }
  CHECK(report.successes == successes);
  CHECK(report.success_rate == doctest::Approx(successes / 20.0));
  const auto ci = wilson_interval(successes, 20);
  CHECK(report.interval.low == ci.low);
  CHECK(report.interval.high == ci.high);
  CHECK(report.interval.low <= report.success_rate);
  CHECK(report.success_rate <= report.interval.high);

  // same config, same bytes
  CHECK(report_to_json(run_experiment(cfg), false) == report_to_json(report, false));
  ExperimentConfig serial = cfg;
  serial.threads = 1;
  CHECK(report_to_json(run_experiment(serial), false) == report_to_json(report, false));
  ExperimentConfig other = cfg;
  other.seed = 18;
  CHECK(report_to_json(run_experiment(other), false) != report_to_json(report, false));

  CHECK(count_lines(report_to_csv(report, false)) == 21);

  for (const auto& t : report.trials) {
    if (t.outcome != TrialOutcome::success) continue;
    const Replay replay = replay_trial(cfg, t.index);
    CHECK(replay.verified);
    CHECK(replay.instance.host.edge_count() == t.host_edges);
  }
}

TEST_CASE("trial seeds are distinct") {
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < 1000; ++i) seeds.insert(trial_seed(3, i));
  CHECK(seeds.size() == 1000);
  CHECK(trial_seed(3, 0) != trial_seed(4, 0));
}

TEST_CASE("sweeps") {
  ExperimentConfig cfg = small_config();
  cfg.n = 200;
  cfg.trials = 4;
  CHECK_THROWS_AS(sweep(cfg, SweepParameter::c, {}), InvalidInput);

  const auto one = sweep(cfg, SweepParameter::c, {20.0});
  REQUIRE(one.size() == 1);
  CHECK(report_to_json(one[0].report, false) == report_to_json(run_experiment(cfg), false));

  const auto rows = sweep(cfg, SweepParameter::c, {5, 10, 20, 40});
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].non_monotone == (rows[i].report.success_rate < rows[i - 1].report.success_rate));
  }
  const std::string csv = sweep_to_csv(rows, SweepParameter::c);
  CHECK(count_lines(csv) == 5);
  CHECK(csv.rfind("parameter,value,trials,successes,success_rate,ci_low,ci_high,non_monotone,theorem1_c", 0) == 0);

  ExperimentConfig reg = cfg;
  reg.model = HostModel::regular;
  reg.regular_degree = 10;
  CHECK_THROWS_AS(sweep(reg, SweepParameter::regular_degree, {10.5}), InvalidInput);
}

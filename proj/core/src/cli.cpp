// Copyright 2026 The Roboforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roboforge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "roboforge/arm_design.hpp"
#include "roboforge/error.hpp"
#include "roboforge/figures.hpp"
#include "roboforge/harness.hpp"
#include "roboforge/pipeline.hpp"
#include "roboforge/rl_spec.hpp"
#include "roboforge/run_store.hpp"
#include "roboforge/scenario.hpp"
#include "roboforge/scoring.hpp"

#ifndef ROBOFORGE_DEFAULT_FIXTURE_DIR
#define ROBOFORGE_DEFAULT_FIXTURE_DIR "fixtures/replay"
#endif

namespace roboforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("{}: cannot read", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot write", path.string()));
  out << body;
}

TaskScenario require_scenario(const std::string& id) {
  auto s = find_scenario(id);
  if (!s) throw UsageError(fmt::format("unknown scenario '{}' (see `roboforge scenarios`)", id));
  return *s;
}

GatewayMode make_mode(const std::string& name, const CliConfig& cfg, const std::string& endpoint,
                      const fs::path& fixtures) {
  const fs::path dir = fixtures.empty() ? (cfg.fixture_dir.empty() ? default_fixture_dir() : cfg.fixture_dir) : fixtures;
  if (name == "replay") return ReplayMode{dir};
  const std::string ep = !endpoint.empty() ? endpoint : cfg.endpoint.value_or("");
  if (ep.empty()) throw UsageError(fmt::format("--mode {} needs --endpoint or an endpoint in the config", name));
  if (name == "live") return LiveMode{ep, cfg.credential_env};
  return RecordMode{ep, cfg.credential_env, dir};
}

std::string join_points(const std::vector<Point2>& pts) {
  std::string out;
  for (const auto& p : pts) out += fmt::format("{}({}, {})", out.empty() ? "" : " ", p.x, p.y);
  return out;
}

std::string join_links(const std::vector<double>& links) {
  std::string out;
  for (double l : links) out += fmt::format("{}{}", out.empty() ? "" : ", ", l);
  return "[" + out + "]";
}

std::string score_line(const ScoreCard& card) {
  return fmt::format("TCP={} CEF={} MA={} RDA={} RM={}", card[Metric::TCP], card[Metric::CEF], card[Metric::MA],
                     card[Metric::RDA], card[Metric::RM]);
}

}  // namespace

fs::path default_fixture_dir() { return fs::path(ROBOFORGE_DEFAULT_FIXTURE_DIR); }

CliConfig load_cli_config(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  if (!doc.is_object()) throw ParseError(fmt::format("{}: expected a JSON object", path.string()));
  CliConfig cfg;
  try {
    if (doc.contains("endpoint")) cfg.endpoint = doc.at("endpoint").get<std::string>();
    if (doc.contains("models")) cfg.models = doc.at("models").get<std::vector<std::string>>();
    if (doc.contains("credential_env")) cfg.credential_env = doc.at("credential_env").get<std::string>();
    if (doc.contains("fixture_dir")) cfg.fixture_dir = doc.at("fixture_dir").get<std::string>();
    if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("rl")) {
      const json& rl = doc.at("rl");
      if (rl.contains("episodes")) cfg.episodes = rl.at("episodes").get<int>();
      if (rl.contains("seed")) cfg.seed = rl.at("seed").get<std::uint64_t>();
      if (rl.contains("algorithm")) cfg.algorithm = rl.at("algorithm").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  // Relative directories are taken relative to the config file.
  const fs::path base = path.parent_path();
  if (!cfg.fixture_dir.empty() && cfg.fixture_dir.is_relative()) cfg.fixture_dir = base / cfg.fixture_dir;
  if (cfg.output_dir.is_relative() && doc.contains("output_dir")) cfg.output_dir = base / cfg.output_dir;
  return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-agent robot arm design and RL pipeline", "roboforge"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  auto* scenarios_cmd = app.add_subcommand("scenarios", "List the built-in task scenarios");
  bool list_all = false;
  scenarios_cmd->add_flag("--all", list_all, "Include the ablation example scenario");

  auto* run_cmd = app.add_subcommand("run", "Run the agent pipeline on one scenario");
  std::string run_scenario, run_model, run_mode = "replay", run_length = "normal", endpoint, run_out;
  std::string fixtures;
  std::vector<std::string> disabled;
  std::optional<int> run_episodes;
  run_cmd->add_option("scenario", run_scenario, "Scenario id")->required();
  run_cmd->add_option("--model", run_model, "Model id");
  run_cmd->add_option("--mode", run_mode, "Gateway mode")->check(CLI::IsMember({"live", "record", "replay"}));
  run_cmd->add_option("--length", run_length, "Description length")
      ->check(CLI::IsMember({"short", "normal", "long"}, CLI::ignore_case));
  run_cmd->add_option("--disable", disabled, "Agents to disable (task_analyst, robot_designer, rl_designer)")
      ->delimiter(',');
  run_cmd->add_option("--endpoint", endpoint, "Chat-completions URL for live/record");
  run_cmd->add_option("--fixtures", fixtures, "Replay fixture directory");
  run_cmd->add_option("--out", run_out, "Runs directory");
  run_cmd->add_option("--episodes", run_episodes, "Override the training episode budget")
      ->check(CLI::NonNegativeNumber);

  auto* design_cmd = app.add_subcommand("design", "Minimum-cost arm design, no LLM involved");
  std::string design_scenario;
  double design_margin = kDefaultDesignMargin;
  bool design_json = false;
  design_cmd->add_option("scenario", design_scenario, "Scenario id")->required();
  design_cmd->add_option("--margin", design_margin, "Reach reserve")->check(CLI::NonNegativeNumber);
  design_cmd->add_flag("--json", design_json, "Print the design as JSON");

  auto* train_cmd = app.add_subcommand("train", "Native RL training on the optimal design");
  std::string train_scenario, train_algorithm, train_out;
  std::optional<std::uint64_t> train_seed;
  std::optional<int> train_episodes;
  double train_margin = kDefaultDesignMargin;
  train_cmd->add_option("scenario", train_scenario, "Scenario id")->required();
  train_cmd->add_option("--algorithm", train_algorithm, "ppo or cem")
      ->check(CLI::IsMember({"ppo", "cem"}, CLI::ignore_case));
  train_cmd->add_option("--seed", train_seed, "Random seed");
  train_cmd->add_option("--episodes", train_episodes, "Episode budget")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--margin", train_margin, "Reach reserve of the design")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--out", train_out, "Output directory for CSVs and SVGs");

  auto* bench_cmd = app.add_subcommand("bench", "Score matrix over many runs");
  std::string study, bench_mode = "replay", bench_out, overrides_path;
  std::vector<std::string> bench_models;
  unsigned threads = 1;
  std::optional<int> bench_episodes;
  bench_cmd->add_option("study", study, "generalization or ablation")
      ->required()
      ->check(CLI::IsMember({"generalization", "ablation"}));
  bench_cmd->add_option("--models", bench_models, "Model ids")->delimiter(',');
  bench_cmd->add_option("--mode", bench_mode, "Gateway mode")->check(CLI::IsMember({"live", "record", "replay"}));
  bench_cmd->add_option("--endpoint", endpoint, "Chat-completions URL for live/record");
  bench_cmd->add_option("--fixtures", fixtures, "Replay fixture directory");
  bench_cmd->add_option("--overrides", overrides_path, "Manual RDA/RM scores (JSON)")->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench_out, "Output directory");
  bench_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--episodes", bench_episodes, "Override the training episode budget")
      ->check(CLI::NonNegativeNumber);

  auto* report_cmd = app.add_subcommand("report", "Print the final report of a stored run");
  auto* plot_cmd = app.add_subcommand("plot", "Regenerate the figures of a stored run");
  std::string run_id, runs_dir;
  for (auto* cmd : {report_cmd, plot_cmd}) {
    cmd->add_option("run_id", run_id, "Run id")->required();
    cmd->add_option("--runs", runs_dir, "Runs directory");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    CliConfig cfg;
    if (!config_path.empty()) cfg = load_cli_config(config_path);
    const fs::path runs_root = runs_dir.empty() ? cfg.output_dir : fs::path(runs_dir);

    if (*scenarios_cmd) {
      for (const auto& s : builtin_scenarios()) out << s.id << '\t' << s.title << '\n';
      if (list_all) out << example_scenario().id << '\t' << example_scenario().title << '\n';
      return kExitOk;
    }

    if (*run_cmd) {
      const TaskScenario scenario = require_scenario(run_scenario);
      AblationConfig ablation;
      ablation.length = *parse_description_length(run_length);
      for (const auto& name : disabled) {
        auto agent = parse_agent(name);
        if (!agent) throw UsageError(fmt::format("unknown agent '{}'", name));
        ablation.disabled.insert(*agent);
      }
      try {
        validate_ablation(ablation);
      } catch (const ValidationError& e) {
        throw UsageError(e.what());
      }
      const std::string model =
          !run_model.empty() ? run_model : (!cfg.models.empty() ? cfg.models.front() : std::string("stub-careful"));
      PipelineOptions options;
      options.episodes_override = run_episodes ? run_episodes : cfg.episodes;
      const GatewayMode mode = make_mode(run_mode, cfg, endpoint, fixtures);
      const PipelineArtifacts artifacts = run_pipeline(scenario, ablation, mode, model, options);
      const std::string id = make_run_id(scenario.id, model, ablation);
      const ScoreCard card = score_run(artifacts, scenario, id, ablation.label());
      const fs::path dir = save_run(artifacts, card, run_out.empty() ? runs_root : fs::path(run_out), id);
      out << "run " << id << " (" << mode_name(mode) << ")\n";
      bool failed = false;
      for (Stage stage : kStages) {
        out << fmt::format("  {:<16} {}\n", display_name(stage), to_string(artifacts.status[stage]));
        failed = failed || artifacts.status[stage].kind == StageOutcome::Kind::Failed;
      }
      out << "  code files: " << artifacts.code_files.size() << '\n';
      out << "  scores: " << score_line(card) << '\n';
      out << "  saved to " << dir.string() << '\n';
      return failed ? kExitRunFailure : kExitOk;
    }

    if (*design_cmd) {
      const TaskScenario scenario = require_scenario(design_scenario);
      try {
        const RobotDesign design =
            design_robots(DesignProblem::from(scenario), scenario.max_links_per_robot, design_margin);
        if (design_json) {
          out << design_to_json(design).dump(2) << '\n';
        } else {
          out << describe_design(design);
        }
      } catch (const InfeasibleDesignError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitRunFailure;
      }
      return kExitOk;
    }

    if (*train_cmd) {
      const TaskScenario scenario = require_scenario(train_scenario);
      RobotDesign design;
      try {
        design = design_robots(DesignProblem::from(scenario), scenario.max_links_per_robot, train_margin);
      } catch (const InfeasibleDesignError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitRunFailure;
      }
      const fs::path out_dir = !train_out.empty() ? fs::path(train_out) : cfg.output_dir / ("train-" + scenario.id);
      bool failed = false;
      for (std::size_t r = 0; r < design.robots.size(); ++r) {
        RLSpec spec = default_rlspec(design, r);
        if (const auto seed = train_seed ? train_seed : cfg.seed) spec.seed = *seed;
        if (const auto n = train_episodes ? train_episodes : cfg.episodes) spec.episodes = *n;
        const std::string algo = !train_algorithm.empty() ? train_algorithm : cfg.algorithm.value_or("ppo");
        spec.algorithm = parse_algorithm(algo);
        const TrainingResult result = train(spec);
        const std::string prefix = r == 0 ? "" : fmt::format("robot{}_", r + 1);
        const auto paths = emit_figures(result, evaluate_all(result, spec), spec, out_dir, prefix);
        const auto reached = std::count(result.success.begin(), result.success.end(), true);
        out << fmt::format("robot {}: base ({}, {}) links {} targets {}\n", r + 1, spec.base.x, spec.base.y,
                           join_links(spec.links), join_points(spec.targets));
        out << fmt::format("  {} seed {} episodes {}: reached {}/{} targets in {:.1f} s\n",
                           to_string(Algorithm{result.executed, ""}), spec.seed, spec.episodes, reached,
                           result.success.size(), result.wall_time);
        for (const auto& note : result.deviations) out << "  note: " << note << '\n';
        if (result.failed) {
          err << "training failed: " << result.diagnostic << '\n';
          failed = true;
        }
        for (const auto& p : paths) out << "  wrote " << p.string() << '\n';
      }
      return failed ? kExitRunFailure : kExitOk;
    }

    if (*bench_cmd) {
      HarnessOptions options;
      options.models = !bench_models.empty() ? bench_models : cfg.models;
      if (options.models.empty()) options.models = {"stub-careful", "stub-hasty"};
      options.mode = make_mode(bench_mode, cfg, endpoint, fixtures);
      options.threads = threads;
      options.pipeline.episodes_override = bench_episodes ? bench_episodes : cfg.episodes;
      if (!overrides_path.empty()) options.overrides = parse_overrides(read_text(overrides_path));
      const fs::path dir = !bench_out.empty() ? fs::path(bench_out) : cfg.output_dir / ("bench-" + study);
      options.runs_root = dir / "runs";
      const ScoreMatrix matrix = study == "ablation" ? run_ablation(options) : run_generalization(options);
      write_text(dir / "scores.csv", scores_csv(matrix.cards));
      const std::string summary = summary_markdown(matrix);
      write_text(dir / "summary.md", summary);
      out << summary << "\nwrote " << (dir / "scores.csv").string() << '\n';
      return kExitOk;
    }

    if (*report_cmd) {
      const fs::path file = runs_root / run_id / "final_report.md";
      if (!fs::exists(file)) {
        err << "no stored run at " << (runs_root / run_id).string() << '\n';
        return kExitRunFailure;
      }
      out << read_text(file);
      const fs::path scores = runs_root / run_id / "scores.csv";
      if (fs::exists(scores)) out << '\n' << read_text(scores);
      return kExitOk;
    }

    if (*plot_cmd) {
      const fs::path dir = runs_root / run_id;
      const PipelineArtifacts artifacts = load_run(dir);
      const auto paths = plot_run(artifacts, dir);
      if (paths.empty()) out << "run has no training results to plot\n";
      for (const auto& p : paths) out << "wrote " << p.string() << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRunFailure;
  }
  return kExitUsage;
}

}  // namespace roboforge

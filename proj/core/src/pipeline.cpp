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

#include "roboforge/pipeline.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "roboforge/error.hpp"
#include "roboforge/extractors.hpp"
#include "roboforge/prompts.hpp"
#include "roboforge/text.hpp"

namespace roboforge {

using nlohmann::json;

std::string_view to_string(Agent agent) {
  switch (agent) {
    case Agent::TaskAnalyst: return "task_analyst";
    case Agent::RobotDesigner: return "robot_designer";
    case Agent::RLDesigner: return "rl_designer";
  }
  return "?";
}

std::optional<Agent> parse_agent(std::string_view name) {
  for (Agent a : {Agent::TaskAnalyst, Agent::RobotDesigner, Agent::RLDesigner}) {
    if (name == to_string(a)) return a;
  }
  if (name == "1") return Agent::TaskAnalyst;
  if (name == "2") return Agent::RobotDesigner;
  if (name == "3") return Agent::RLDesigner;
  return std::nullopt;
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Analysis: return "Analysis";
    case Stage::Design: return "Design";
    case Stage::RLReport: return "RLReport";
    case Stage::CodeExtraction: return "CodeExtraction";
    case Stage::Execution: return "Execution";
  }
  return "?";
}

std::string_view display_name(Stage stage) {
  switch (stage) {
    case Stage::Analysis: return "Task Analysis";
    case Stage::Design: return "Robot Design";
    case Stage::RLReport: return "RL Design";
    case Stage::CodeExtraction: return "Code Extraction";
    case Stage::Execution: return "Execution";
  }
  return "?";
}

std::string AblationConfig::label() const {
  std::string base = "full";
  if (!disabled.empty()) {
    base = "C";
    if (disabled.count(Agent::TaskAnalyst)) base += "1";
    if (disabled.count(Agent::RobotDesigner)) base += "2";
    if (disabled.count(Agent::RLDesigner)) base += "3";
  }
  if (length != DescriptionLength::Normal) base += "/" + std::string(to_string(length));
  return base;
}

void validate_ablation(const AblationConfig& config) {
  if (config.disabled.size() > 2) throw ValidationError("ablation: at most two agents may be disabled");
}

std::vector<Stage> stages_of(Agent agent) {
  switch (agent) {
    case Agent::TaskAnalyst: return {Stage::Analysis};
    case Agent::RobotDesigner: return {Stage::Design};
    case Agent::RLDesigner: return {Stage::RLReport, Stage::CodeExtraction, Stage::Execution};
  }
  return {};
}

const std::vector<NamedCondition>& ablation_conditions() {
  static const std::vector<NamedCondition> conditions = [] {
    using A = Agent;
    std::vector<NamedCondition> c;
    c.push_back({"Short", {{}, DescriptionLength::Short}});
    c.push_back({"Normal", {{}, DescriptionLength::Normal}});
    c.push_back({"Long", {{}, DescriptionLength::Long}});
    c.push_back({"C1", {{A::TaskAnalyst}, DescriptionLength::Normal}});
    c.push_back({"C2", {{A::RobotDesigner}, DescriptionLength::Normal}});
    c.push_back({"C3", {{A::RLDesigner}, DescriptionLength::Normal}});
    c.push_back({"C12", {{A::TaskAnalyst, A::RobotDesigner}, DescriptionLength::Normal}});
    c.push_back({"C13", {{A::TaskAnalyst, A::RLDesigner}, DescriptionLength::Normal}});
    c.push_back({"C23", {{A::RobotDesigner, A::RLDesigner}, DescriptionLength::Normal}});
    return c;
  }();
  return conditions;
}

std::optional<AblationConfig> find_condition(std::string_view name) {
  for (const auto& c : ablation_conditions()) {
    if (text::to_lower(c.name) == text::to_lower(name)) return c.config;
  }
  return std::nullopt;
}

std::string to_string(const StageOutcome& outcome) {
  switch (outcome.kind) {
    case StageOutcome::Kind::Completed: return "Completed";
    case StageOutcome::Kind::Skipped: return "Skipped";
    case StageOutcome::Kind::Failed: return "Failed";
  }
  return "?";
}

int StageStatus::completed_count() const {
  return static_cast<int>(std::count_if(outcomes.begin(), outcomes.end(), [](const StageOutcome& o) {
    return o.kind == StageOutcome::Kind::Completed;
  }));
}

namespace {

bool stage_disabled(const AblationConfig& ablation, Stage stage) {
  for (Agent a : ablation.disabled) {
    auto s = stages_of(a);
    if (std::find(s.begin(), s.end(), stage) != s.end()) return true;
  }
  return false;
}

std::string compose_input(const std::vector<std::string>& notices, const std::string& upstream) {
  if (notices.empty()) return upstream;
  std::string out;
  for (const auto& n : notices) out += n + "\n";
  return out + "\n" + upstream;
}

class Runner {
 public:
  Runner(const TaskScenario& scenario, const AblationConfig& ablation, LlmGateway& gateway,
         const std::string& model_id, const PipelineOptions& options)
      : scenario_(scenario), gateway_(gateway), options_(options) {
    a_.scenario_id = scenario.id;
    a_.model_id = model_id;
    a_.ablation = ablation;
    a_.mode = std::string(mode_name(gateway.mode()));
    for (Stage s : kStages) a_.status[s] = StageOutcome::skipped();
  }

  PipelineArtifacts run() {
    try {
      validate_ablation(a_.ablation);
      a_.description = render_description(scenario_, a_.ablation.length);
    } catch (const std::exception& e) {
      fail_from(Stage::Analysis, e.what());
      return finish();
    }
    upstream_ = a_.description;

    if (!agent_stage(Stage::Analysis, Agent::TaskAnalyst, [&](const std::string& md) {
          a_.analysis = parse_task_analysis(md);
        })) {
      return finish();
    }
    if (!agent_stage(Stage::Design, Agent::RobotDesigner, [&](const std::string& md) {
          a_.design = parse_robot_design(md);
        })) {
      return finish();
    }
    if (!agent_stage(Stage::RLReport, Agent::RLDesigner, [&](const std::string& md) {
          a_.rl = parse_rl_design(md);
        })) {
      return finish();
    }
    if (!stage_disabled(a_.ablation, Stage::CodeExtraction)) {
      a_.code_files = a_.rl->code_blocks;
      if (a_.code_files.size() < 3) {
        fail_from(Stage::CodeExtraction, fmt::format("only {} code blocks extracted", a_.code_files.size()));
        return finish();
      }
      a_.status[Stage::CodeExtraction] = StageOutcome::completed();
    }
    if (!stage_disabled(a_.ablation, Stage::Execution)) execute();
    return finish();
  }

 private:
  PipelineArtifacts finish() {
    a_.final_report = merge_reports(a_);
    return std::move(a_);
  }

  // Marks `from` Failed and every later non-ablated stage Failed too.
  void fail_from(Stage from, const std::string& reason) {
    bool later = false;
    for (Stage s : kStages) {
      if (s == from) {
        a_.status[s] = StageOutcome::failed(reason);
        later = true;
      } else if (later) {
        a_.status[s] = stage_disabled(a_.ablation, s) ? StageOutcome::skipped()
                                                      : StageOutcome::failed("upstream stage failed");
      }
    }
  }

  template <typename Parse>
  bool agent_stage(Stage stage, Agent agent, Parse&& parse) {
    if (stage_disabled(a_.ablation, stage)) {
      notices_.push_back(std::string(kAbsentNotice) + std::string(display_name(stage)));
      return true;
    }
    const std::string input = compose_input(notices_, upstream_);
    ChatRequest request;
    switch (agent) {
      case Agent::TaskAnalyst: request = task_analyst_prompt(input, a_.model_id); break;
      case Agent::RobotDesigner: request = robot_designer_prompt(input, a_.model_id); break;
      case Agent::RLDesigner: request = rl_designer_prompt(input, a_.model_id); break;
    }
    ChatResponse response;
    try {
      response = gateway_.complete(request);
    } catch (const std::exception& e) {
      fail_from(stage, fmt::format("{} call failed: {}", to_string(agent), e.what()));
      return false;
    }
    a_.transcript.push_back({agent, request, response});
    try {
      parse(response.content);
    } catch (const std::exception& e) {
      fail_from(stage, fmt::format("report rejected: {}", e.what()));
      return false;
    }
    a_.status[stage] = StageOutcome::completed();
    upstream_ = response.content;
    notices_.clear();
    return true;
  }

  void execute() {
    ExecutionArtifacts ex;
    const std::vector<Point2>& targets = a_.analysis ? a_.analysis->targets : scenario_.targets;
    try {
      if (a_.design) {
        AssignedDesign assigned = assign_targets(*a_.design, targets, options_.margin);
        ex.design = std::move(assigned.design);
        ex.unreachable_targets = std::move(assigned.unreachable);
        ex.design_source = "design report";
        for (std::size_t t : ex.unreachable_targets) {
          ex.notes.push_back(fmt::format("target {} is not reachable by any reported robot", format_point(targets[t])));
        }
        if (ex.design.robots.empty()) throw ValidationError("no reported robot reaches any target");
      } else if (a_.analysis) {
        ex.design = design_robots(DesignProblem::from(*a_.analysis), options_.max_links, options_.margin);
        ex.design_source = "analysis";
        ex.notes.push_back("no design report; executing the computed optimum for the analysed geometry");
      } else {
        ex.design = design_robots(DesignProblem::from(scenario_), options_.max_links, options_.margin);
        ex.design_source = "scenario";
        ex.notes.push_back("no design or analysis report; executing the computed optimum for the scenario geometry");
      }
    } catch (const std::exception& e) {
      a_.execution = std::move(ex);
      fail_from(Stage::Execution, fmt::format("no executable design: {}", e.what()));
      return;
    }

    ex.spec_present = a_.rl->rlspec_source.has_value();
    try {
      for (std::size_t r = 0; r < ex.design.robots.size(); ++r) {
        RLSpec spec = parse_rlspec(*a_.rl, ex.design, r);
        if (options_.episodes_override) spec.episodes = *options_.episodes_override;
        ex.specs.push_back(std::move(spec));
      }
      ex.spec_parsed = true;
      ex.spec_consistent = true;
    } catch (const ConsistencyError& e) {
      ex.spec_parsed = true;
      ex.specs.clear();
      a_.execution = std::move(ex);
      fail_from(Stage::Execution, e.what());
      return;
    } catch (const std::exception& e) {
      ex.specs.clear();
      a_.execution = std::move(ex);
      fail_from(Stage::Execution, e.what());
      return;
    }

    if (!options_.execute) {
      ex.notes.push_back("native training not executed (disabled by options)");
      a_.execution = std::move(ex);
      a_.status[Stage::Execution] = StageOutcome::completed();
      return;
    }
    ex.launched = true;
    std::string failure;
    for (const auto& spec : ex.specs) {
      TrainingResult result = train(spec);
      for (const auto& d : result.deviations) ex.notes.push_back(d);
      if (result.failed && failure.empty()) failure = result.diagnostic;
      ex.training.push_back(std::move(result));
    }
    a_.execution = std::move(ex);
    if (!failure.empty()) {
      fail_from(Stage::Execution, "training failed: " + failure);
    } else {
      a_.status[Stage::Execution] = StageOutcome::completed();
    }
  }

  const TaskScenario& scenario_;
  LlmGateway& gateway_;
  PipelineOptions options_;
  PipelineArtifacts a_;
  std::string upstream_;
  std::vector<std::string> notices_;
};

}  // namespace

PipelineArtifacts run_pipeline(const TaskScenario& scenario, const AblationConfig& ablation, LlmGateway& gateway,
                               const std::string& model_id, const PipelineOptions& options) {
  return Runner(scenario, ablation, gateway, model_id, options).run();
}

PipelineArtifacts run_pipeline(const TaskScenario& scenario, const AblationConfig& ablation,
                               const GatewayMode& mode, const std::string& model_id,
                               const PipelineOptions& options) {
  std::optional<LlmGateway> gateway;
  try {
    gateway.emplace(mode);
  } catch (const std::exception& e) {
    PipelineArtifacts a;
    a.scenario_id = scenario.id;
    a.model_id = model_id;
    a.ablation = ablation;
    a.mode = std::string(mode_name(mode));
    for (Stage s : kStages) {
      a.status[s] = stage_disabled(ablation, s) ? StageOutcome::skipped()
                                                : StageOutcome::failed(s == Stage::Analysis ? e.what() : "upstream stage failed");
    }
    a.final_report = merge_reports(a);
    return a;
  }
  return run_pipeline(scenario, ablation, *gateway, model_id, options);
}

// ---- serialization ----

json rlspec_to_json(const RLSpec& s) {
  json targets = json::array();
  for (const auto& t : s.targets) targets.push_back({t.x, t.y});
  return {{"algorithm", to_string(s.algorithm)},
          {"links", s.links},
          {"base", {s.base.x, s.base.y}},
          {"targets", targets},
          {"dt", s.dt},
          {"max_steps", s.max_steps_per_episode},
          {"success_epsilon", s.success_epsilon},
          {"action_limit", s.action_limit},
          {"reward_weights", {s.reward.distance_w, s.reward.action_penalty_w, s.reward.success_bonus}},
          {"episodes", s.episodes},
          {"seed", s.seed}};
}

RLSpec rlspec_from_json(const json& j) {
  RLSpec s;
  s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  s.links = j.at("links").get<std::vector<double>>();
  s.base = {j.at("base").at(0).get<double>(), j.at("base").at(1).get<double>()};
  for (const auto& t : j.at("targets")) s.targets.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
  s.dt = j.at("dt").get<double>();
  s.max_steps_per_episode = j.at("max_steps").get<int>();
  s.success_epsilon = j.at("success_epsilon").get<double>();
  s.action_limit = j.at("action_limit").get<double>();
  const auto& w = j.at("reward_weights");
  s.reward = {w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>()};
  s.episodes = j.at("episodes").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

namespace {

std::string_view kind_name(Algorithm::Kind k) {
  switch (k) {
    case Algorithm::Kind::PPO: return "PPO";
    case Algorithm::Kind::SAC: return "SAC";
    case Algorithm::Kind::CEM: return "CEM";
    case Algorithm::Kind::Other: return "Other";
  }
  return "Other";
}

Algorithm::Kind kind_from(std::string_view name) {
  if (name == "PPO") return Algorithm::Kind::PPO;
  if (name == "SAC") return Algorithm::Kind::SAC;
  if (name == "CEM") return Algorithm::Kind::CEM;
  return Algorithm::Kind::Other;
}

json architecture_to_json(const PolicyArchitecture& a) {
  return {{"obs_dim", a.obs_dim},       {"act_dim", a.act_dim},
          {"hidden", a.hidden},         {"bias", a.bias},
          {"learn_log_std", a.learn_log_std}, {"init_log_std", a.init_log_std},
          {"distance_scale", a.distance_scale}, {"action_limit", a.action_limit}};
}

PolicyArchitecture architecture_from_json(const json& j) {
  PolicyArchitecture a;
  a.obs_dim = j.at("obs_dim").get<std::size_t>();
  a.act_dim = j.at("act_dim").get<std::size_t>();
  a.hidden = j.at("hidden").get<std::vector<int>>();
  a.bias = j.at("bias").get<bool>();
  a.learn_log_std = j.at("learn_log_std").get<bool>();
  a.init_log_std = j.at("init_log_std").get<double>();
  a.distance_scale = j.at("distance_scale").get<double>();
  a.action_limit = j.at("action_limit").get<double>();
  return a;
}

json outcome_to_json(const StageOutcome& o) { return {{"status", to_string(o)}, {"reason", o.reason}}; }

StageOutcome outcome_from_json(const json& j) {
  const auto name = j.at("status").get<std::string>();
  StageOutcome o;
  o.kind = name == "Completed" ? StageOutcome::Kind::Completed
           : name == "Failed"  ? StageOutcome::Kind::Failed
                               : StageOutcome::Kind::Skipped;
  o.reason = j.value("reason", "");
  return o;
}

}  // namespace

json training_to_json(const TrainingResult& r) {
  json curve = json::array();
  for (const auto& e : r.learning_curve) curve.push_back({e.episode, e.total_reward, e.final_distance});
  return {{"executed", kind_name(r.executed)},
          {"learning_curve", curve},
          {"success", r.success},
          {"wall_time", r.wall_time},
          {"deviations", r.deviations},
          {"failed", r.failed},
          {"diagnostic", r.diagnostic},
          {"policy", {{"architecture", architecture_to_json(r.policy.architecture)}, {"parameters", r.policy.parameters}}}};
}

TrainingResult training_from_json(const json& j) {
  TrainingResult r;
  r.executed = kind_from(j.at("executed").get<std::string>());
  for (const auto& e : j.at("learning_curve")) {
    r.learning_curve.push_back({e.at(0).get<int>(), e.at(1).get<double>(), e.at(2).get<double>()});
  }
  r.success = j.at("success").get<std::vector<bool>>();
  r.wall_time = j.at("wall_time").get<double>();
  r.deviations = j.at("deviations").get<std::vector<std::string>>();
  r.failed = j.at("failed").get<bool>();
  r.diagnostic = j.at("diagnostic").get<std::string>();
  r.policy.architecture = architecture_from_json(j.at("policy").at("architecture"));
  r.policy.parameters = j.at("policy").at("parameters").get<std::vector<double>>();
  return r;
}

json artifacts_to_json(const PipelineArtifacts& a) {
  json doc;
  doc["scenario_id"] = a.scenario_id;
  doc["model_id"] = a.model_id;
  json disabled = json::array();
  for (Agent agent : a.ablation.disabled) disabled.push_back(to_string(agent));
  doc["ablation"] = {{"label", a.ablation.label()}, {"disabled", disabled}, {"length", to_string(a.ablation.length)}};
  doc["mode"] = a.mode;
  doc["description"] = a.description;
  json status = json::object();
  for (Stage s : kStages) status[std::string(to_string(s))] = outcome_to_json(a.status[s]);
  doc["status"] = status;
  doc["reports"] = {
      {"analysis", a.analysis ? json(a.analysis->raw_markdown) : json(nullptr)},
      {"design", a.design ? json(a.design->raw_markdown) : json(nullptr)},
      {"rl", a.rl ? json(a.rl->raw_markdown) : json(nullptr)},
  };
  json code = json::array();
  for (const auto& c : a.code_files) code.push_back({{"filename", c.filename}, {"language", c.language_tag}, {"source", c.source}});
  doc["code_files"] = code;
  if (a.execution) {
    const auto& ex = *a.execution;
    json specs = json::array();
    for (const auto& s : ex.specs) specs.push_back(rlspec_to_json(s));
    json training = json::array();
    for (const auto& t : ex.training) training.push_back(training_to_json(t));
    doc["execution"] = {{"design", design_to_json(ex.design)},
                        {"design_source", ex.design_source},
                        {"unreachable_targets", ex.unreachable_targets},
                        {"spec_present", ex.spec_present},
                        {"spec_parsed", ex.spec_parsed},
                        {"spec_consistent", ex.spec_consistent},
                        {"launched", ex.launched},
                        {"specs", specs},
                        {"training", training},
                        {"notes", ex.notes}};
  } else {
    doc["execution"] = nullptr;
  }
  doc["final_report"] = a.final_report;
  json transcript = json::array();
  for (const auto& t : a.transcript) {
    transcript.push_back({{"agent", to_string(t.agent)},
                          {"request", request_to_json(t.request)},
                          {"response", response_to_json(t.response)}});
  }
  doc["transcript"] = transcript;
  return doc;
}

PipelineArtifacts artifacts_from_json(const json& doc) {
  PipelineArtifacts a;
  try {
    a.scenario_id = doc.at("scenario_id").get<std::string>();
    a.model_id = doc.at("model_id").get<std::string>();
    for (const auto& name : doc.at("ablation").at("disabled")) {
      auto agent = parse_agent(name.get<std::string>());
      if (!agent) throw ParseError("ablation.disabled: unknown agent " + name.get<std::string>());
      a.ablation.disabled.insert(*agent);
    }
    auto length = parse_description_length(doc.at("ablation").at("length").get<std::string>());
    if (!length) throw ParseError("ablation.length: unknown level");
    a.ablation.length = *length;
    a.mode = doc.at("mode").get<std::string>();
    a.description = doc.at("description").get<std::string>();
    for (Stage s : kStages) a.status[s] = outcome_from_json(doc.at("status").at(std::string(to_string(s))));
    const auto& reports = doc.at("reports");
    if (!reports.at("analysis").is_null()) a.analysis = parse_task_analysis(reports["analysis"].get<std::string>());
    if (!reports.at("design").is_null()) a.design = parse_robot_design(reports["design"].get<std::string>());
    if (!reports.at("rl").is_null()) a.rl = parse_rl_design(reports["rl"].get<std::string>());
    for (const auto& c : doc.at("code_files")) {
      a.code_files.push_back({c.at("filename").get<std::string>(), c.at("language").get<std::string>(),
                              c.at("source").get<std::string>()});
    }
    if (!doc.at("execution").is_null()) {
      const auto& e = doc["execution"];
      ExecutionArtifacts ex;
      ex.design = design_from_json(e.at("design"));
      ex.design_source = e.at("design_source").get<std::string>();
      ex.unreachable_targets = e.at("unreachable_targets").get<std::vector<std::size_t>>();
      ex.spec_present = e.at("spec_present").get<bool>();
      ex.spec_parsed = e.at("spec_parsed").get<bool>();
      ex.spec_consistent = e.at("spec_consistent").get<bool>();
      ex.launched = e.at("launched").get<bool>();
      for (const auto& s : e.at("specs")) ex.specs.push_back(rlspec_from_json(s));
      for (const auto& t : e.at("training")) ex.training.push_back(training_from_json(t));
      ex.notes = e.at("notes").get<std::vector<std::string>>();
      a.execution = std::move(ex);
    }
    a.final_report = doc.at("final_report").get<std::string>();
    for (const auto& t : doc.at("transcript")) {
      auto agent = parse_agent(t.at("agent").get<std::string>());
      if (!agent) throw ParseError("transcript.agent: unknown agent");
      a.transcript.push_back({*agent, request_from_json(t.at("request")), response_from_json(t.at("response"))});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("run transcript: ") + e.what());
  }
  return a;
}

}  // namespace roboforge

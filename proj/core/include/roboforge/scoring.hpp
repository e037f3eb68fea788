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

#ifndef ROBOFORGE_SCORING_HPP_
#define ROBOFORGE_SCORING_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roboforge/arm_design.hpp"
#include "roboforge/pipeline.hpp"
#include "roboforge/training.hpp"

namespace roboforge {

enum class Metric { TCP, CEF, MA, RDA, RM };
inline constexpr std::array<Metric, 5> kMetrics{Metric::TCP, Metric::CEF, Metric::MA, Metric::RDA, Metric::RM};
std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);  // case-insensitive

struct Provenance {
  bool manual = false;
  std::string annotator;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ScoreCard {
  std::string run_id;
  std::string model_id;
  std::string key;  // scenario id or ablation condition
  std::array<double, 5> scores{};
  std::array<Provenance, 5> provenance{};

  double& operator[](Metric m) { return scores[static_cast<std::size_t>(m)]; }
  double operator[](Metric m) const { return scores[static_cast<std::size_t>(m)]; }
};

// One point per Completed stage.
double score_tcp(const StageStatus& status);

// +1 at least three code files, +1 env.py/train.py/eval.py all present,
// +1 rlspec block present and parseable, +1 rlspec consistent with the
// design, +1 native training launched.
double score_cef(const PipelineArtifacts& artifacts);

// Mean final distance over the last tenth of the curve is below the first
// tenth, or the last tenth already averages inside the success radius.
bool learning_progress(const std::vector<EpisodeRecord>& curve, double success_epsilon);

// 5 * (reached fraction) rounded to the nearest 0.5, minus 1 (floored at 0)
// without learning progress; a failed run scores 0.
double score_ma(const TrainingResult& result, const RLSpec& spec);
// Over every target of the run, including targets no robot was given.
double score_ma(const PipelineArtifacts& artifacts);

// +2 every target reachable and IK-certified, +1 links and bases drawn from
// the options, and when everything is reachable +1 cost ratio <= 1.25 and +1
// cost ratio <= 1.05.
double score_rda(const DesignVerification& verification);
// 0 unless the Design stage completed.
double score_rda(const PipelineArtifacts& artifacts, const TaskScenario& scenario,
                 double margin = kDefaultDesignMargin);

// +1 per complete section group (analysis, design, RL), +1 no code fences
// (counted only once the RL group is present), +1 complete run header.
double score_rm(std::string_view final_report);

ScoreCard score_run(const PipelineArtifacts& artifacts, const TaskScenario& scenario,
                    const std::string& run_id, const std::string& key);

struct ManualOverride {
  std::string run_id;
  Metric metric = Metric::RDA;
  double value = 0.0;
  std::string annotator;
};

// JSON list of {run_id, metric, value, annotator}. Only RDA and RM may be
// overridden and values must lie in [0, 5] (ValidationError otherwise).
std::vector<ManualOverride> parse_overrides(std::string_view json_text);
void apply_overrides(std::vector<ScoreCard>& cards, const std::vector<ManualOverride>& overrides);

struct MetricSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample SD, 0 for n = 1
  std::size_t n = 0;
};

// Throws std::invalid_argument on an empty input.
MetricSummary summarize(std::span<const double> values);

struct AggregateRow {
  std::string group;
  std::array<MetricSummary, 5> metrics;
};

enum class GroupBy { Model, Key };

// Rows ordered by first appearance of each group.
std::vector<AggregateRow> aggregate(const std::vector<ScoreCard>& cards, GroupBy group_by);

}  // namespace roboforge

#endif  // ROBOFORGE_SCORING_HPP_

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

#include "roboforge/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "roboforge/error.hpp"
#include "roboforge/extractors.hpp"
#include "roboforge/reports.hpp"
#include "roboforge/text.hpp"

namespace roboforge {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::TCP: return "TCP";
    case Metric::CEF: return "CEF";
    case Metric::MA: return "MA";
    case Metric::RDA: return "RDA";
    case Metric::RM: return "RM";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
  const std::string lower = text::to_lower(name);
  for (Metric m : kMetrics) {
    if (lower == text::to_lower(to_string(m))) return m;
  }
  return std::nullopt;
}

namespace {

double clamp_score(double v) { return std::clamp(v, 0.0, 5.0); }

double round_half(double v) { return std::round(v * 2.0) / 2.0; }

}  // namespace

double score_tcp(const StageStatus& status) { return status.completed_count(); }

double score_cef(const PipelineArtifacts& a) {
  if (!a.rl) return 0.0;
  double score = 0.0;
  if (a.code_files.size() >= 3) score += 1.0;
  auto has = [&](std::string_view name) {
    return std::any_of(a.code_files.begin(), a.code_files.end(), [&](const CodeArtifact& c) { return c.filename == name; });
  };
  if (has("env.py") && has("train.py") && has("eval.py")) score += 1.0;
  if (a.execution) {
    if (a.execution->spec_present && a.execution->spec_parsed) score += 1.0;
    if (a.execution->spec_consistent) score += 1.0;
    if (a.execution->launched) score += 1.0;
  } else if (a.rl->rlspec_source) {
    try {
      parse_rlspec_entries(*a.rl->rlspec_source);
      score += 1.0;
    } catch (const Error&) {
    }
  }
  return clamp_score(score);
}

bool learning_progress(const std::vector<EpisodeRecord>& curve, double success_epsilon) {
  if (curve.empty()) return false;
  const double first = mean_final_distance(curve, 0.0, 0.1);
  const double last = mean_final_distance(curve, 0.9, 1.0);
  return last < first || last < success_epsilon;
}

double score_ma(const TrainingResult& result, const RLSpec& spec) {
  if (result.failed || result.success.empty()) return 0.0;
  const double reached = static_cast<double>(std::count(result.success.begin(), result.success.end(), true));
  double score = round_half(5.0 * reached / static_cast<double>(result.success.size()));
  if (!learning_progress(result.learning_curve, spec.success_epsilon)) score = std::max(0.0, score - 1.0);
  return clamp_score(score);
}

double score_ma(const PipelineArtifacts& a) {
  if (!a.status.completed(Stage::Execution) || !a.execution || a.execution->training.empty()) return 0.0;
  const auto& ex = *a.execution;
  std::size_t total = ex.design.targets.size();
  std::size_t reached = 0;
  bool progress = true;
  for (std::size_t r = 0; r < ex.training.size(); ++r) {
    const auto& t = ex.training[r];
    if (t.failed) return 0.0;
    reached += static_cast<std::size_t>(std::count(t.success.begin(), t.success.end(), true));
    progress = progress && learning_progress(t.learning_curve, ex.specs.at(r).success_epsilon);
  }
  if (total == 0) return 0.0;
  double score = round_half(5.0 * static_cast<double>(reached) / static_cast<double>(total));
  if (!progress) score = std::max(0.0, score - 1.0);
  return clamp_score(score);
}

double score_rda(const DesignVerification& v) {
  double score = 0.0;
  const bool reachable = v.all_reachable && v.certified;
  if (reachable) score += 2.0;
  if (v.links_from_options && v.bases_from_options) score += 1.0;
  if (reachable && v.cost_ratio) {
    if (*v.cost_ratio <= 1.25 + 1e-9) score += 1.0;
    if (*v.cost_ratio <= 1.05 + 1e-9) score += 1.0;
  }
  return clamp_score(score);
}

double score_rda(const PipelineArtifacts& a, const TaskScenario& scenario, double margin) {
  if (!a.status.completed(Stage::Design) || !a.design) return 0.0;
  return score_rda(verify_design(*a.design, scenario, margin));
}

double score_rm(std::string_view final_report) {
  double score = 0.0;
  bool rl_group = false;
  for (ReportKind kind : {ReportKind::TaskAnalysis, ReportKind::RobotDesign, ReportKind::RLDesign}) {
    auto sections = locate_sections(final_report, kind);
    const bool complete = sections.size() == section_headings(kind).size() &&
                          std::all_of(sections.begin(), sections.end(),
                                      [](const ReportSection& s) { return !text::trim(s.body).empty(); });
    if (complete) score += 1.0;
    if (kind == ReportKind::RLDesign) rl_group = complete;
  }
  if (rl_group && find_fenced_blocks(final_report).empty()) score += 1.0;

  static const std::array<std::regex, 4> header{
      std::regex(R"(^- Scenario: \S.*$)"), std::regex(R"(^- Model: \S.*$)"),
      std::regex(R"(^- Ablation: \S.*$)"), std::regex(R"(^- Stages: .*Execution=\w+.*$)")};
  const auto lines = text::split_lines(final_report);
  const bool header_ok = std::all_of(header.begin(), header.end(), [&](const std::regex& re) {
    return std::any_of(lines.begin(), lines.end(), [&](const std::string& l) { return std::regex_match(l, re); });
  });
  if (header_ok) score += 1.0;
  return clamp_score(score);
}

ScoreCard score_run(const PipelineArtifacts& a, const TaskScenario& scenario, const std::string& run_id,
                    const std::string& key) {
  ScoreCard card;
  card.run_id = run_id;
  card.model_id = a.model_id;
  card.key = key;
  card[Metric::TCP] = score_tcp(a.status);
  card[Metric::CEF] = score_cef(a);
  card[Metric::MA] = score_ma(a);
  card[Metric::RDA] = score_rda(a, scenario);
  card[Metric::RM] = score_rm(a.final_report);
  return card;
}

std::vector<ManualOverride> parse_overrides(std::string_view json_text) {
  nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) throw ParseError("overrides: expected a JSON array");
  std::vector<ManualOverride> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    auto field = [&](const char* key) -> const nlohmann::json& {
      if (!item.is_object() || !item.contains(key)) throw ParseError(fmt::format("overrides[{}]: missing {}", i, key));
      return item[key];
    };
    ManualOverride o;
    if (!field("run_id").is_string() || !field("metric").is_string() || !field("value").is_number() ||
        !field("annotator").is_string()) {
      throw ParseError(fmt::format("overrides[{}]: wrong field type", i));
    }
    o.run_id = item["run_id"].get<std::string>();
    auto metric = parse_metric(item["metric"].get<std::string>());
    if (!metric) throw ParseError(fmt::format("overrides[{}]: unknown metric", i));
    if (*metric != Metric::RDA && *metric != Metric::RM) {
      throw ValidationError(fmt::format("overrides[{}]: only RDA and RM accept manual scores", i));
    }
    o.metric = *metric;
    o.value = item["value"].get<double>();
    if (!(o.value >= 0.0 && o.value <= 5.0)) throw ValidationError(fmt::format("overrides[{}]: value must be in [0, 5]", i));
    o.annotator = item["annotator"].get<std::string>();
    if (o.annotator.empty()) throw ValidationError(fmt::format("overrides[{}]: annotator is empty", i));
    out.push_back(std::move(o));
  }
  return out;
}

void apply_overrides(std::vector<ScoreCard>& cards, const std::vector<ManualOverride>& overrides) {
  for (const auto& o : overrides) {
    if (o.metric != Metric::RDA && o.metric != Metric::RM) {
      throw ValidationError("only RDA and RM accept manual scores");
    }
    for (auto& c : cards) {
      if (c.run_id != o.run_id) continue;
      c[o.metric] = o.value;
      c.provenance[static_cast<std::size_t>(o.metric)] = {true, o.annotator};
    }
  }
}

MetricSummary summarize(std::span<const double> input) {
  if (input.empty()) throw std::invalid_argument("summarize: empty input");
  // Sorted first so the floating-point sums do not depend on input order.
  std::vector<double> values(input.begin(), input.end());
  std::sort(values.begin(), values.end());
  MetricSummary s;
  s.n = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(sq / static_cast<double>(s.n - 1));
  }
  return s;
}

std::vector<AggregateRow> aggregate(const std::vector<ScoreCard>& cards, GroupBy group_by) {
  if (cards.empty()) throw std::invalid_argument("aggregate: no score cards");
  std::vector<std::string> groups;
  for (const auto& c : cards) {
    const std::string& g = group_by == GroupBy::Model ? c.model_id : c.key;
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
  }
  std::vector<AggregateRow> rows;
  for (const auto& g : groups) {
    AggregateRow row;
    row.group = g;
    for (Metric m : kMetrics) {
      std::vector<double> values;
      for (const auto& c : cards) {
        if ((group_by == GroupBy::Model ? c.model_id : c.key) == g) values.push_back(c[m]);
      }
      row.metrics[static_cast<std::size_t>(m)] = summarize(values);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace roboforge

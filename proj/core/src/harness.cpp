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

#include "roboforge/harness.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "roboforge/error.hpp"
#include "roboforge/run_store.hpp"

namespace roboforge {

namespace {

struct Job {
  const TaskScenario* scenario;
  std::string model;
  std::string key;
  AblationConfig ablation;
};

std::vector<ScoreCard> run_jobs(const std::vector<Job>& jobs, const HarnessOptions& options) {
  if (options.models.empty()) throw ValidationError("harness: no model ids given");
  LlmGateway gateway(options.mode);
  std::vector<ScoreCard> cards(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const Job& job = jobs[i];
        const std::string run_id = make_run_id(job.scenario->id, job.model, job.ablation);
        PipelineArtifacts a = run_pipeline(*job.scenario, job.ablation, gateway, job.model, options.pipeline);
        cards[i] = score_run(a, *job.scenario, run_id, job.key);
        if (options.runs_root) save_run(a, cards[i], *options.runs_root, run_id);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  apply_overrides(cards, options.overrides);
  return cards;
}

}  // namespace

ScoreMatrix run_generalization(const HarnessOptions& options) {
  std::vector<Job> jobs;
  for (const auto& model : options.models) {
    for (const auto& s : builtin_scenarios()) jobs.push_back({&s, model, s.id, AblationConfig{}});
  }
  ScoreMatrix m;
  m.study = "generalization";
  m.cards = run_jobs(jobs, options);
  m.by_model = aggregate(m.cards, GroupBy::Model);
  return m;
}

ScoreMatrix run_ablation(const HarnessOptions& options) {
  std::vector<Job> jobs;
  for (const auto& model : options.models) {
    for (const auto& c : ablation_conditions()) jobs.push_back({&example_scenario(), model, c.name, c.config});
  }
  ScoreMatrix m;
  m.study = "ablation";
  m.cards = run_jobs(jobs, options);
  m.by_model = aggregate(m.cards, GroupBy::Model);
  return m;
}

namespace {

std::string provenance_text(const Provenance& p) { return p.manual ? "manual:" + p.annotator : "auto"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string scores_csv(const std::vector<ScoreCard>& cards) {
  std::string out = "run_id,model,key,tcp,cef,ma,rda,rm,rda_provenance,rm_provenance\n";
  for (const auto& c : cards) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", csv_field(c.run_id), csv_field(c.model_id), csv_field(c.key),
                       c[Metric::TCP], c[Metric::CEF], c[Metric::MA], c[Metric::RDA], c[Metric::RM],
                       csv_field(provenance_text(c.provenance[static_cast<std::size_t>(Metric::RDA)])),
                       csv_field(provenance_text(c.provenance[static_cast<std::size_t>(Metric::RM)])));
  }
  return out;
}

std::string summary_markdown(const ScoreMatrix& m) {
  const bool ablation = m.study == "ablation";
  std::string out = fmt::format("# {} scores\n\n", ablation ? "Ablation" : "Generalization");
  out += fmt::format("| Model | {} | TCP | CEF | MA | RDA | RM |\n", ablation ? "Condition" : "Scenario");
  out += "|---|---|---|---|---|---|---|\n";
  for (const auto& c : m.cards) {
    out += fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n", c.model_id, c.key, c[Metric::TCP], c[Metric::CEF],
                       c[Metric::MA], c[Metric::RDA], c[Metric::RM]);
  }
  out += "\n## Mean and SD per model\n\n";
  out += "| Model | n | TCP | CEF | MA | RDA | RM |\n|---|---|---|---|---|---|---|\n";
  for (const auto& row : m.by_model) {
    out += fmt::format("| {} | {} |", row.group, row.metrics[0].n);
    for (const auto& s : row.metrics) out += fmt::format(" {:.2f} ± {:.2f} |", s.mean, s.sd);
    out += "\n";
  }
  return out;
}

}  // namespace roboforge

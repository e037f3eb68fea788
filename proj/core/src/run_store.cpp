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

#include "roboforge/run_store.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "roboforge/error.hpp"
#include "roboforge/extractors.hpp"
#include "roboforge/figures.hpp"
#include "roboforge/harness.hpp"

namespace roboforge {

namespace {

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::filesystem::filesystem_error("cannot write", path, std::make_error_code(std::errc::io_error));
  out << content;
}

}  // namespace

std::string make_run_id(const std::string& scenario_id, const std::string& model_id, const AblationConfig& ablation) {
  std::string id = fmt::format("{}-{}-{}", scenario_id, model_id, ablation.label());
  for (char& c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return id;
}

std::filesystem::path save_run(const PipelineArtifacts& a, const ScoreCard& card, const std::filesystem::path& runs_root,
                               const std::string& run_id) {
  const auto dir = runs_root / run_id;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "reports");
  std::filesystem::create_directories(dir / "code");
  std::filesystem::create_directories(dir / "figures");
  if (a.analysis) write_text(dir / "reports" / "task_analysis.md", a.analysis->raw_markdown);
  if (a.design) write_text(dir / "reports" / "robot_design.md", a.design->raw_markdown);
  if (a.rl) write_text(dir / "reports" / "rl_design.md", a.rl->raw_markdown);
  write_code_files(a.code_files, dir / "code");
  plot_run(a, dir);
  write_text(dir / "scores.csv", scores_csv({card}));
  write_text(dir / "transcript.json", artifacts_to_json(a).dump(2) + "\n");
  write_text(dir / "final_report.md", a.final_report);
  return dir;
}

PipelineArtifacts load_run(const std::filesystem::path& run_dir) {
  const auto path = run_dir / "transcript.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("no run transcript at {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(ss.str(), nullptr, false);
  if (doc.is_discarded()) throw ParseError(fmt::format("{}: not valid JSON", path.string()));
  return artifacts_from_json(doc);
}

std::vector<std::filesystem::path> plot_run(const PipelineArtifacts& a, const std::filesystem::path& run_dir) {
  std::vector<std::filesystem::path> written;
  if (!a.execution) return written;
  const auto& ex = *a.execution;
  for (std::size_t r = 0; r < ex.training.size() && r < ex.specs.size(); ++r) {
    const std::string prefix = r == 0 ? "" : fmt::format("robot{}_", r + 1);
    auto trajectories = evaluate_all(ex.training[r], ex.specs[r]);
    auto files = emit_figures(ex.training[r], trajectories, ex.specs[r], run_dir / "figures", prefix);
    written.insert(written.end(), files.begin(), files.end());
  }
  return written;
}

}  // namespace roboforge

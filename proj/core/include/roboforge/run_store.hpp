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

#ifndef ROBOFORGE_RUN_STORE_HPP_
#define ROBOFORGE_RUN_STORE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "roboforge/pipeline.hpp"
#include "roboforge/scoring.hpp"

namespace roboforge {

// "<scenario>-<model>-<ablation label>" with characters outside [A-Za-z0-9._-]
// replaced by '_'.
std::string make_run_id(const std::string& scenario_id, const std::string& model_id,
                        const AblationConfig& ablation);

// Run directory layout:
//   reports/{task_analysis,robot_design,rl_design}.md   (present reports)
//   code/                                               (extracted files)
//   figures/                                            (per trained robot)
//   scores.csv  transcript.json  final_report.md
std::filesystem::path save_run(const PipelineArtifacts& artifacts, const ScoreCard& card,
                               const std::filesystem::path& runs_root, const std::string& run_id);

// Reads transcript.json of a run directory (ParseError when absent or bad).
PipelineArtifacts load_run(const std::filesystem::path& run_dir);

// Regenerates figures/ from the stored training results. Robots after the
// first get a "robot<k>_" file prefix.
std::vector<std::filesystem::path> plot_run(const PipelineArtifacts& artifacts,
                                            const std::filesystem::path& run_dir);

}  // namespace roboforge

#endif  // ROBOFORGE_RUN_STORE_HPP_

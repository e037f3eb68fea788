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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "roboforge/extractors.hpp"
#include "roboforge/pipeline.hpp"

namespace roboforge {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("roboforge_ex_" + name);
  fs::remove_all(p);
  return p;
}

TEST(ExtractCode, BoldFilename) {
  auto a = extract_code("Some text.\n\n**train.py**\n\n```python\nprint('t')\n```\n");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].filename, "train.py");
  EXPECT_EQ(a[0].source, "print('t')\n");
  EXPECT_EQ(a[0].language_tag, "python");
}

TEST(ExtractCode, PositionalFallback) {
  auto a = extract_code("```\na\n```\ntext\n```\nb\n```\n```\nc\n```\n");
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].filename, "env.py");
  EXPECT_EQ(a[1].filename, "train.py");
  EXPECT_EQ(a[2].filename, "eval.py");
  EXPECT_EQ(a[0].language_tag, "unknown");
}

TEST(ExtractCode, InfoStringNameWins) {
  auto a = extract_code("### helpers.py\n```python name=utils.py\nx = 1\n```\n### helpers.py\n```python\ny = 2\n```\n");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].filename, "utils.py");
  EXPECT_EQ(a[1].filename, "helpers.py");
}

TEST(ExtractCode, EmptyAndTildeAndIndented) {
  EXPECT_TRUE(extract_code("").empty());
  EXPECT_TRUE(extract_code("no fences at all\n    indented code\n").empty());
  auto a = extract_code("~~~python\nz = 3\n~~~\n");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].source, "z = 3\n");
}

TEST(ExtractCode, RlspecIsNotACodeFile) {
  auto a = extract_code("```python\na\n```\n```rlspec\nalgorithm: PPO\n```\n");
  ASSERT_EQ(a.size(), 1u);
}

TEST(ExtractCode, PrefixStable) {
  const std::string md = "**env.py**\n```python\na\n```\n\n```\nb\n```\n";
  auto before = extract_code(md);
  for (const std::string tail : {"\nmore prose\n", "\n```\nc\n```\n", "\n**x.py**\n```\nd\n```\n", "\n```\nunclosed"}) {
    auto after = extract_code(md + tail);
    ASSERT_GE(after.size(), before.size());
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(after[i], before[i]);
  }
}

TEST(WriteCodeFiles, RoundTripAndCollisions) {
  const auto dir = fresh_dir("write");
  std::vector<CodeArtifact> arts = {{"env.py", "python", "a\r\nb\n"}, {"env.py", "python", "second\n"},
                                    {"train.py", "python", "t\n"}, {"env.py", "python", "third\n"}};
  auto paths = write_code_files(arts, dir);
  ASSERT_EQ(paths.size(), 4u);
  EXPECT_EQ(paths[0].filename(), "env.py");
  EXPECT_EQ(paths[1].filename(), "env-2.py");
  EXPECT_EQ(paths[2].filename(), "train.py");
  EXPECT_EQ(paths[3].filename(), "env-3.py");
  EXPECT_EQ(slurp(paths[0]), "a\nb\n");
  EXPECT_EQ(slurp(paths[1]), "second\n");
}

TEST(WriteCodeFiles, EmptyListMakesEmptyDirectory) {
  const auto dir = fresh_dir("empty");
  EXPECT_TRUE(write_code_files({}, dir).empty());
  EXPECT_TRUE(fs::is_directory(dir));
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST(WriteCodeFiles, ThreeFilesEqualSources) {
  const auto dir = fresh_dir("three");
  auto arts = extract_code("```\nimport a\n```\n```\nimport b\n```\n```\nimport c\n```\n");
  auto paths = write_code_files(arts, dir);
  ASSERT_EQ(paths.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(slurp(paths[i]), arts[i].source);
}

const char* kRlReport = R"(# RL Design Report
## 1. Environment Design
Arm.
## 2. Motor Motion Definition
Speeds.
## 3. Reinforcement Learning Algorithm Selection
Algorithm: PPO
## 4. Success and Failure Criteria
Close enough.
## 5. Initial Conditions
Straight.

**env.py**
```python
e
```
**train.py**
```python
t
```
**eval.py**
```python
v
```
)";

TEST(MergeReports, PlaceholdersAndNoFences) {
  PipelineArtifacts a;
  a.scenario_id = "1";
  a.model_id = "m";
  a.rl = parse_rl_design(kRlReport);
  for (Stage s : kStages) a.status[s] = StageOutcome::completed();
  const std::string merged = merge_reports(a);
  EXPECT_EQ(merged.find("```"), std::string::npos);
  for (auto f : {"env.py", "train.py", "eval.py"})
    EXPECT_NE(merged.find(std::string("[code artifact: ") + f + "]"), std::string::npos);
  EXPECT_NE(merged.find("- Scenario: 1"), std::string::npos);
  EXPECT_NE(merged.find("- Model: m"), std::string::npos);
}

TEST(MergeReports, OnlyPresentReportsAndHeaderOnly) {
  PipelineArtifacts empty;
  empty.scenario_id = "1";
  empty.model_id = "m";
  const std::string header_only = merge_reports(empty);
  EXPECT_NE(header_only.find("# Final Report"), std::string::npos);
  EXPECT_EQ(header_only.find("## Task Analysis Report"), std::string::npos);
  EXPECT_EQ(header_only.find("## RL Design Report"), std::string::npos);

  PipelineArtifacts c23 = empty;
  TaskAnalysisReport analysis;
  analysis.raw_markdown = "# Task Analysis Report\nbody text\n";
  c23.analysis = analysis;
  const std::string merged = merge_reports(c23);
  EXPECT_NE(merged.find("body text"), std::string::npos);
  EXPECT_EQ(merged.find("## Robotic System Design Report"), std::string::npos);
  EXPECT_TRUE(merged.starts_with(header_only.substr(0, header_only.find("- Stages"))));
}

TEST(StripCode, UnclosedFenceRemoved) {
  const std::string s = strip_code_blocks("text\n```python\nnever closed\n");
  EXPECT_EQ(s.find("```"), std::string::npos);
  EXPECT_EQ(s.find("never closed"), std::string::npos);
}

}  // namespace
}  // namespace roboforge

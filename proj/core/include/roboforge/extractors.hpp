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

#ifndef ROBOFORGE_EXTRACTORS_HPP_
#define ROBOFORGE_EXTRACTORS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "roboforge/reports.hpp"

namespace roboforge {

struct PipelineArtifacts;

// One fenced region of a Markdown document. Lines are 0-based indices into
// text::split_lines(markdown).
struct FencedBlock {
  std::size_t open_line = 0;
  std::size_t close_line = 0;  // == line count when the fence is never closed
  std::string info;            // full info string after the fence marker
  std::string body;
  bool closed = false;
};

// Backtick and tilde fences; indented code blocks are ignored. An unclosed
// fence runs to the end of the document.
std::vector<FencedBlock> find_fenced_blocks(std::string_view markdown);

// First whitespace-delimited token of a fence info string, or "".
std::string fence_language(std::string_view info);

// Splits every fenced block (except the machine-readable "rlspec" block) into
// a named artifact. Filename resolution: "name=..." in the info string, then
// the nearest preceding heading or bold text naming a file, then env.py /
// train.py / eval.py by position.
std::vector<CodeArtifact> extract_code(std::string_view markdown);

// Writes one LF-normalized file per artifact. Duplicate names get "-2", "-3"
// suffixes before the extension. Throws std::filesystem::filesystem_error.
std::vector<std::filesystem::path> write_code_files(const std::vector<CodeArtifact>& artifacts,
                                                    const std::filesystem::path& out_dir);

// Replaces every fenced block with "[code artifact: <filename>]".
std::string strip_code_blocks(std::string_view markdown);

// The final report: run header followed by each present report, code-free.
std::string merge_reports(const PipelineArtifacts& artifacts);

}  // namespace roboforge

#endif  // ROBOFORGE_EXTRACTORS_HPP_

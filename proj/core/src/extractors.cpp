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

#include "roboforge/extractors.hpp"

#include <fmt/format.h>

#include <fstream>
#include <map>
#include <regex>
#include <set>

#include "roboforge/pipeline.hpp"
#include "roboforge/text.hpp"

namespace roboforge {
namespace {

constexpr std::array<const char*, 3> kCanonicalNames = {"env.py", "train.py", "eval.py"};

struct Fence {
  char marker;
  std::size_t length;
  std::string info;
};

std::optional<Fence> parse_fence(std::string_view line) {
  std::size_t indent = 0;
  while (indent < line.size() && line[indent] == ' ') ++indent;
  if (indent > 3 || indent >= line.size()) return std::nullopt;
  char marker = line[indent];
  if (marker != '`' && marker != '~') return std::nullopt;
  std::size_t n = 0;
  while (indent + n < line.size() && line[indent + n] == marker) ++n;
  if (n < 3) return std::nullopt;
  std::string info(text::trim(line.substr(indent + n)));
  if (marker == '`' && info.find('`') != std::string::npos) return std::nullopt;
  return Fence{marker, n, std::move(info)};
}

bool is_rlspec(const FencedBlock& block) {
  return text::to_lower(fence_language(block.info)) == "rlspec";
}

std::string basename_of(std::string_view name) {
  std::string s(text::trim(name));
  while (!s.empty() && (s.front() == '"' || s.front() == '\'')) s.erase(s.begin());
  while (!s.empty() && (s.back() == '"' || s.back() == '\'')) s.pop_back();
  auto slash = s.find_last_of("/\\");
  if (slash != std::string::npos) s = s.substr(slash + 1);
  if (s == "." || s == "..") return {};
  return s;
}

std::optional<std::string> name_from_info(std::string_view info) {
  static const std::regex re(R"re((?:^|\s)(?:name|filename|file|title)\s*=\s*("[^"]+"|'[^']+'|\S+))re",
                             std::regex::icase);
  std::string s(info);
  std::smatch m;
  if (std::regex_search(s, m, re)) {
    auto name = basename_of(m[1].str());
    if (!name.empty()) return name;
  }
  return std::nullopt;
}

std::optional<std::string> file_name_in(std::string_view line) {
  static const std::regex re(
      R"(([A-Za-z_][A-Za-z0-9_\-]*(?:/[A-Za-z0-9_\-]+)*\.(?:py|cpp|hpp|cc|h|c|js|ts|json|ya?ml|toml|sh|txt|cfg|ini|rs|go|java|ipynb))\b)");
  std::string s(line);
  std::smatch m;
  if (std::regex_search(s, m, re)) return basename_of(m[1].str());
  return std::nullopt;
}

bool is_heading_or_bold(std::string_view line) {
  auto t = text::trim(line);
  if (!t.empty() && t.front() == '#') return true;
  auto open = t.find("**");
  if (open != std::string_view::npos && t.find("**", open + 2) != std::string_view::npos) return true;
  open = t.find("__");
  return open != std::string_view::npos && t.find("__", open + 2) != std::string_view::npos;
}

std::string bold_or_heading_text(std::string_view line) {
  auto t = text::trim(line);
  if (!t.empty() && t.front() == '#') return std::string(t);
  std::string out;
  for (std::string_view marker : {"**", "__"}) {
    std::size_t pos = 0;
    while (true) {
      auto open = t.find(marker, pos);
      if (open == std::string_view::npos) break;
      auto close = t.find(marker, open + 2);
      if (close == std::string_view::npos) break;
      out += std::string(t.substr(open + 2, close - open - 2)) + " ";
      pos = close + 2;
    }
  }
  return out;
}

std::string fallback_name(std::size_t position, std::string_view language) {
  if (position < kCanonicalNames.size()) return kCanonicalNames[position];
  static const std::map<std::string, std::string> kExt = {
      {"python", "py"}, {"py", "py"},     {"cpp", "cpp"},   {"c++", "cpp"}, {"c", "c"},
      {"bash", "sh"},   {"sh", "sh"},     {"json", "json"}, {"yaml", "yaml"},
      {"yml", "yaml"},  {"toml", "toml"}, {"javascript", "js"}};
  auto it = kExt.find(text::to_lower(language));
  return fmt::format("block_{}.{}", position + 1, it == kExt.end() ? "txt" : it->second);
}

struct ResolvedBlock {
  FencedBlock block;
  std::optional<CodeArtifact> artifact;  // empty for rlspec and empty bodies
};

std::vector<ResolvedBlock> resolve_blocks(std::string_view markdown) {
  auto lines = text::split_lines(markdown);
  auto blocks = find_fenced_blocks(markdown);
  std::vector<ResolvedBlock> resolved;
  std::size_t position = 0;
  std::size_t search_floor = 0;
  for (auto& block : blocks) {
    ResolvedBlock r{block, std::nullopt};
    if (!is_rlspec(block) && !text::trim(block.body).empty()) {
      std::optional<std::string> name = name_from_info(block.info);
      for (std::size_t i = block.open_line; !name && i > search_floor; --i) {
        const std::string& line = lines[i - 1];
        if (is_heading_or_bold(line)) name = file_name_in(bold_or_heading_text(line));
      }
      std::string language = fence_language(block.info);
      if (language.find('=') != std::string::npos) language.clear();
      if (!name) name = fallback_name(position, language);
      r.artifact = CodeArtifact{*name, language.empty() ? "unknown" : language, block.body};
      ++position;
    }
    search_floor = block.closed ? block.close_line + 1 : lines.size();
    resolved.push_back(std::move(r));
  }
  return resolved;
}

}  // namespace

std::vector<FencedBlock> find_fenced_blocks(std::string_view markdown) {
  auto lines = text::split_lines(markdown);
  std::vector<FencedBlock> blocks;
  std::size_t i = 0;
  while (i < lines.size()) {
    auto open = parse_fence(lines[i]);
    if (!open) {
      ++i;
      continue;
    }
    FencedBlock block;
    block.open_line = i;
    block.info = open->info;
    std::string body;
    std::size_t j = i + 1;
    for (; j < lines.size(); ++j) {
      auto close = parse_fence(lines[j]);
      if (close && close->marker == open->marker && close->length >= open->length &&
          close->info.empty()) {
        block.closed = true;
        break;
      }
      body += lines[j];
      body += '\n';
    }
    block.close_line = j;
    block.body = std::move(body);
    blocks.push_back(std::move(block));
    i = j + 1;
  }
  return blocks;
}

std::string fence_language(std::string_view info) {
  auto t = text::trim(info);
  auto end = t.find_first_of(" \t{");
  return std::string(t.substr(0, end));
}

std::vector<CodeArtifact> extract_code(std::string_view markdown) {
  std::vector<CodeArtifact> artifacts;
  for (auto& r : resolve_blocks(markdown)) {
    if (r.artifact) artifacts.push_back(std::move(*r.artifact));
  }
  return artifacts;
}

std::vector<std::filesystem::path> write_code_files(const std::vector<CodeArtifact>& artifacts,
                                                    const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::set<std::string> used;
  std::vector<fs::path> written;
  for (const auto& artifact : artifacts) {
    std::string name = basename_of(artifact.filename);
    if (name.empty()) name = "artifact.txt";
    if (used.count(name)) {
      fs::path p(name);
      std::string stem = p.stem().string();
      std::string ext = p.extension().string();
      for (int k = 2;; ++k) {
        std::string candidate = fmt::format("{}-{}{}", stem, k, ext);
        if (!used.count(candidate)) {
          name = candidate;
          break;
        }
      }
    }
    used.insert(name);
    fs::path path = out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw fs::filesystem_error("cannot open for writing", path,
                                 std::make_error_code(std::errc::permission_denied));
    }
    std::string body = text::normalize_newlines(artifact.source);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) {
      throw fs::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
    }
    written.push_back(path);
  }
  return written;
}

std::string strip_code_blocks(std::string_view markdown) {
  auto lines = text::split_lines(markdown);
  auto resolved = resolve_blocks(markdown);
  std::string out;
  std::size_t i = 0;
  for (const auto& r : resolved) {
    for (; i < r.block.open_line; ++i) out += lines[i] + "\n";
    if (r.artifact) {
      out += "[code artifact: " + r.artifact->filename + "]\n";
    } else if (is_rlspec(r.block)) {
      out += "RL specification entries:\n";
      for (const auto& entry : text::split_lines(r.block.body)) {
        if (!text::trim(entry).empty()) out += "- " + std::string(text::trim(entry)) + "\n";
      }
    }
    i = r.block.close_line + 1;
  }
  for (; i < lines.size(); ++i) out += lines[i] + "\n";
  return out;
}

std::string merge_reports(const PipelineArtifacts& artifacts) {
  std::string out = "# Final Report\n\n";
  out += "- Scenario: " + artifacts.scenario_id + "\n";
  out += "- Model: " + artifacts.model_id + "\n";
  out += "- Ablation: " + artifacts.ablation.label() + "\n";
  out += "- Stages:";
  for (Stage s : kStages) {
    out += (s == Stage::Analysis ? " " : ", ") + std::string(to_string(s)) + "=" + to_string(artifacts.status[s]);
  }
  out += "\n";
  auto append = [&](std::string_view title, const std::string& raw) {
    out += "\n## " + std::string(title) + "\n\n";
    std::string body = strip_code_blocks(raw);
    out += body;
    if (!body.empty() && body.back() != '\n') out += "\n";
  };
  if (artifacts.analysis) append("Task Analysis Report", artifacts.analysis->raw_markdown);
  if (artifacts.design) append("Robotic System Design Report", artifacts.design->raw_markdown);
  if (artifacts.rl) append("RL Design Report", artifacts.rl->raw_markdown);
  return out;
}

}  // namespace roboforge

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

#include "roboforge/reports.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <set>

#include "roboforge/error.hpp"
#include "roboforge/extractors.hpp"
#include "roboforge/text.hpp"

namespace roboforge {
namespace {

constexpr std::array<std::string_view, 5> kAnalysisHeadings = {
    "Number of Targets to be Reached", "Number of Robots to be Built", "Base Location Options",
    "Arm Link Length Options", "Arm Choices Information"};
constexpr std::array<std::string_view, 5> kDesignHeadings = {
    "Required Number of Robots", "Selected Base Location", "Design Decisions for Robotic Arms",
    "Final Robotic Arm Configuration", "Summary"};
constexpr std::array<std::string_view, 5> kRLHeadings = {
    "Environment Design", "Motor Motion Definition",
    "Reinforcement Learning Algorithm Selection", "Success and Failure Criteria",
    "Initial Conditions"};

constexpr double kHeadingThreshold = 0.8;
constexpr std::size_t kMaxHeadingTokens = 10;

std::set<std::string> heading_tokens(std::string_view s) {
  static const std::set<std::string> kStop = {"of", "to", "be", "and", "for", "the",
                                              "a",  "an", "in", "on", "&"};
  std::set<std::string> tokens;
  std::string lower = text::to_lower(s);
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (current == "rl") {
      tokens.insert("reinforcement");
      tokens.insert("learning");
    } else if (!kStop.count(current)) {
      if (current.size() > 3 && current.back() == 's' && current[current.size() - 2] != 's')
        current.pop_back();
      tokens.insert(current);
    }
    current.clear();
  };
  for (char c : lower) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current += c;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

struct HeadingCandidate {
  std::string title;
  std::string inline_body;
};

// Strips markup and numbering; splits "Heading: inline text".
std::optional<HeadingCandidate> heading_candidate(std::string_view line) {
  std::string s;
  for (char c : text::trim(line)) {
    if (c == '*' || c == '_' || c == '`') continue;
    s += c;
  }
  std::string_view v = text::trim(s);
  while (!v.empty() && (v.front() == '#' || v.front() == '>' || v.front() == '-' ||
                        v.front() == '+'))
    v = text::trim(v.substr(1));
  static const std::regex numbering(
      R"(^(?:(?:section|step|part)\s*)?\(?\d{1,2}(?:\.\d{1,2})*[\.\):]?\s+)", std::regex::icase);
  std::string rest(v);
  std::smatch m;
  if (std::regex_search(rest, m, numbering)) rest = m.suffix().str();
  HeadingCandidate cand;
  std::size_t split = rest.find(':');
  for (std::string_view sep : {" - ", " – ", " — "}) {
    std::size_t pos = rest.find(sep);
    if (pos != std::string::npos && pos < split) split = pos;
  }
  if (split != std::string::npos) {
    cand.title = std::string(text::trim(std::string_view(rest).substr(0, split)));
    std::size_t after = rest.find_first_not_of(":-–— ", split);
    cand.inline_body = after == std::string::npos ? "" : std::string(text::trim(rest.substr(after)));
  } else {
    cand.title = std::string(text::trim(rest));
  }
  if (cand.title.empty() || text::word_count(cand.title) > kMaxHeadingTokens) return std::nullopt;
  return cand;
}

std::vector<bool> fenced_mask(std::string_view markdown, std::size_t line_count) {
  std::vector<bool> mask(line_count, false);
  for (const auto& block : find_fenced_blocks(markdown)) {
    for (std::size_t i = block.open_line; i <= block.close_line && i < line_count; ++i)
      mask[i] = true;
  }
  return mask;
}

const ReportSection* find(const std::vector<ReportSection>& sections, std::string_view heading) {
  for (const auto& s : sections) {
    if (s.heading == heading) return &s;
  }
  return nullptr;
}

std::vector<ReportSection> require_sections(std::string_view markdown, ReportKind kind) {
  auto sections = locate_sections(markdown, kind);
  std::vector<std::string> missing;
  for (auto heading : section_headings(kind)) {
    if (!find(sections, heading)) missing.emplace_back(heading);
  }
  if (!missing.empty()) throw SchemaError(std::move(missing));
  return sections;
}

std::string first_line(std::string_view body) {
  for (const auto& line : text::split_lines(body)) {
    auto t = text::trim(line);
    if (!t.empty()) return std::string(t);
  }
  return {};
}

std::string without_points(std::string_view s) {
  static const std::regex point(R"(\([^()]*,[^()]*\))");
  return std::regex_replace(std::string(s), point, " ");
}

[[noreturn]] void extraction_failure(const ReportSection& section, std::string_view what) {
  throw ExtractionError(section.heading + " (line " + std::to_string(section.line) + "): " +
                        std::string(what) + " in '" + first_line(section.body) + "'");
}

std::vector<Point2> required_points(const ReportSection& section) {
  auto points = text::scan_points(section.body);
  if (points.empty()) points = text::scan_bare_pairs(without_points(section.body));
  if (points.empty()) extraction_failure(section, "no coordinate pair found");
  for (const auto& p : points) {
    if (!p.finite()) extraction_failure(section, "non-finite coordinate");
  }
  return points;
}

std::vector<double> links_in(std::string_view line) {
  static const std::regex bracket(R"(\[([^\]]*)\])");
  std::string s(line);
  std::smatch m;
  if (std::regex_search(s, m, bracket)) {
    auto numbers = text::scan_numbers(m[1].str());
    if (!numbers.empty()) return numbers;
  }
  return text::scan_lengths(s);
}

}  // namespace

std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::TaskAnalysis: return "Task Analysis Report";
    case ReportKind::RobotDesign: return "Robot Design Report";
    case ReportKind::RLDesign: return "RL Design Report";
  }
  return "";
}

std::span<const std::string_view> section_headings(ReportKind kind) {
  switch (kind) {
    case ReportKind::TaskAnalysis: return kAnalysisHeadings;
    case ReportKind::RobotDesign: return kDesignHeadings;
    case ReportKind::RLDesign: return kRLHeadings;
  }
  return {};
}

std::string to_string(const Algorithm& algorithm) {
  switch (algorithm.kind) {
    case Algorithm::Kind::PPO: return "PPO";
    case Algorithm::Kind::SAC: return "SAC";
    case Algorithm::Kind::CEM: return "CEM";
    case Algorithm::Kind::Other: return algorithm.other.empty() ? "Other" : algorithm.other;
  }
  return "Other";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string lower = text::to_lower(text::trim(name));
  static const std::regex ppo(R"(\bppo\b|proximal policy)");
  static const std::regex sac(R"(\bsac\b|soft actor)");
  static const std::regex cem(R"(\bcem\b|cross[- ]entropy)");
  if (std::regex_search(lower, ppo)) return {Algorithm::Kind::PPO, {}};
  if (std::regex_search(lower, sac)) return {Algorithm::Kind::SAC, {}};
  if (std::regex_search(lower, cem)) return {Algorithm::Kind::CEM, {}};
  return {Algorithm::Kind::Other, std::string(text::trim(name))};
}

double heading_similarity(std::string_view candidate, std::string_view canonical) {
  auto a = heading_tokens(candidate);
  auto b = heading_tokens(canonical);
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : a) common += b.count(t);
  return static_cast<double>(common) / static_cast<double>(std::max(a.size(), b.size()));
}

std::vector<ReportSection> locate_sections(std::string_view markdown, ReportKind kind) {
  auto headings = section_headings(kind);
  auto lines = text::split_lines(markdown);
  auto in_fence = fenced_mask(markdown, lines.size());

  struct Hit {
    std::size_t line;
    std::size_t heading;
    std::string inline_body;
  };
  std::vector<Hit> hits;
  std::vector<bool> taken(headings.size(), false);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (in_fence[i]) continue;
    auto cand = heading_candidate(lines[i]);
    if (!cand) continue;
    double best = 0.0;
    std::size_t best_index = headings.size();
    for (std::size_t h = 0; h < headings.size(); ++h) {
      double score = heading_similarity(cand->title, headings[h]);
      if (score > best) {
        best = score;
        best_index = h;
      }
    }
    if (best_index == headings.size() || best < kHeadingThreshold || taken[best_index]) continue;
    taken[best_index] = true;
    hits.push_back({i, best_index, cand->inline_body});
  }

  std::vector<ReportSection> sections;
  for (std::size_t k = 0; k < hits.size(); ++k) {
    std::size_t end = k + 1 < hits.size() ? hits[k + 1].line : lines.size();
    std::string body = hits[k].inline_body;
    for (std::size_t i = hits[k].line + 1; i < end; ++i) {
      if (!body.empty()) body += '\n';
      body += lines[i];
    }
    sections.push_back({std::string(headings[hits[k].heading]),
                        std::string(text::trim(body)), static_cast<int>(hits[k].line + 1)});
  }
  return sections;
}

TaskAnalysisReport parse_task_analysis(std::string_view markdown) {
  if (text::trim(markdown).empty()) throw SchemaError({kAnalysisHeadings.begin(), kAnalysisHeadings.end()});
  auto sections = require_sections(markdown, ReportKind::TaskAnalysis);
  const auto& targets = *find(sections, kAnalysisHeadings[0]);
  const auto& robots = *find(sections, kAnalysisHeadings[1]);
  const auto& bases = *find(sections, kAnalysisHeadings[2]);
  const auto& links = *find(sections, kAnalysisHeadings[3]);
  const auto& notes = *find(sections, kAnalysisHeadings[4]);

  TaskAnalysisReport report;
  report.raw_markdown = std::string(markdown);
  report.targets = required_points(targets);
  report.num_targets = text::scan_count(without_points(targets.body))
                           .value_or(static_cast<int>(report.targets.size()));
  auto robot_count = text::scan_count(without_points(robots.body));
  if (!robot_count) extraction_failure(robots, "no robot count found");
  report.num_robots = *robot_count;
  report.base_options = required_points(bases);
  report.link_options = text::scan_lengths(links.body);
  if (report.link_options.empty()) report.link_options = text::scan_numbers(without_points(links.body));
  if (report.link_options.empty()) extraction_failure(links, "no link length found");
  for (double l : report.link_options) {
    if (!(l > 0.0)) extraction_failure(links, "link length must be > 0");
  }
  report.arm_choices_notes = notes.body;
  if (report.num_targets < 1) extraction_failure(targets, "target count must be >= 1");
  if (report.num_robots < 1) extraction_failure(robots, "robot count must be >= 1");
  return report;
}

RobotDesignReport parse_robot_design(std::string_view markdown) {
  if (text::trim(markdown).empty()) throw SchemaError({kDesignHeadings.begin(), kDesignHeadings.end()});
  auto sections = require_sections(markdown, ReportKind::RobotDesign);
  const auto& robots = *find(sections, kDesignHeadings[0]);
  const auto& bases = *find(sections, kDesignHeadings[1]);
  const auto& decisions = *find(sections, kDesignHeadings[2]);
  const auto& config = *find(sections, kDesignHeadings[3]);
  const auto& summary = *find(sections, kDesignHeadings[4]);

  RobotDesignReport report;
  report.raw_markdown = std::string(markdown);
  auto count = text::scan_count(without_points(robots.body));
  if (!count || *count < 1) extraction_failure(robots, "no robot count found");
  report.required_robots = *count;
  report.selected_bases = required_points(bases);
  if (static_cast<int>(report.selected_bases.size()) < report.required_robots)
    extraction_failure(bases, "fewer base locations than robots");
  report.selected_bases.resize(static_cast<std::size_t>(report.required_robots));
  report.design_rationale = decisions.body;
  report.summary = summary.body;

  static const std::regex robot_label(R"(robot\s*#?\s*(\d+))", std::regex::icase);
  int current = 1;
  std::vector<ArmConfigurationEntry> entries;
  for (const auto& line : text::split_lines(config.body)) {
    std::smatch m;
    if (std::regex_search(line, m, robot_label)) current = std::stoi(m[1].str());
    auto links = links_in(line);
    if (links.empty()) continue;
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const auto& e) { return e.robot_index == current; });
    if (it == entries.end()) {
      entries.push_back({current, links});
    } else {
      it->links.insert(it->links.end(), links.begin(), links.end());
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.robot_index < b.robot_index; });
  if (static_cast<int>(entries.size()) != report.required_robots) {
    extraction_failure(config, "found " + std::to_string(entries.size()) +
                                   " arm configurations for " +
                                   std::to_string(report.required_robots) + " robots");
  }
  for (const auto& e : entries) {
    for (double l : e.links) {
      if (!(l > 0.0)) extraction_failure(config, "link length must be > 0");
    }
  }
  report.arm_configurations = std::move(entries);
  return report;
}

RLDesignReport parse_rl_design(std::string_view markdown) {
  if (text::trim(markdown).empty()) throw SchemaError({kRLHeadings.begin(), kRLHeadings.end()});
  auto sections = require_sections(markdown, ReportKind::RLDesign);
  RLDesignReport report;
  report.raw_markdown = std::string(markdown);
  report.env_design = find(sections, kRLHeadings[0])->body;
  report.motor_motion = find(sections, kRLHeadings[1])->body;
  const auto& algo = *find(sections, kRLHeadings[2]);
  report.success_failure_criteria = find(sections, kRLHeadings[3])->body;
  report.initial_conditions = find(sections, kRLHeadings[4])->body;

  static const std::regex labelled(R"(algorithm\s*(?:choice|selected)?\s*[:=]\s*([^\n]+))",
                                   std::regex::icase);
  std::smatch m;
  std::string body = algo.body;
  if (std::regex_search(body, m, labelled)) {
    report.algorithm = parse_algorithm(m[1].str());
  } else {
    report.algorithm = parse_algorithm(body);
    if (report.algorithm.kind == Algorithm::Kind::Other)
      report.algorithm.other = first_line(algo.body);
  }

  for (const auto& block : find_fenced_blocks(markdown)) {
    if (text::to_lower(fence_language(block.info)) == "rlspec") {
      report.rlspec_source = block.body;
      break;
    }
  }
  report.code_blocks = extract_code(markdown);
  return report;
}

AnyReport parse_report(std::string_view markdown, ReportKind kind) {
  switch (kind) {
    case ReportKind::TaskAnalysis: return parse_task_analysis(markdown);
    case ReportKind::RobotDesign: return parse_robot_design(markdown);
    case ReportKind::RLDesign: return parse_rl_design(markdown);
  }
  throw std::invalid_argument("unknown report kind");
}

}  // namespace roboforge

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

#include "roboforge/scenario.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>

#include "roboforge/error.hpp"
#include "roboforge/text.hpp"

namespace roboforge {
namespace {

using json = nlohmann::json;

TaskScenario make(std::string id, std::string title, std::string description,
                  std::vector<Point2> bases, std::vector<Point2> targets,
                  std::vector<double> links) {
  return TaskScenario{std::move(id),      std::move(title),   std::move(description),
                      std::move(bases),   std::move(targets), std::move(links),
                      3};
}

std::string join_points(const std::vector<Point2>& points, std::string_view last_sep) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out += (i + 1 == points.size()) ? std::string(last_sep) : std::string(", ");
    out += format_point(points[i]);
  }
  return out;
}

std::string join_lengths(const std::vector<double>& lengths) {
  std::string out;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i > 0) out += (i + 1 == lengths.size()) ? ", and " : ", ";
    out += format_length(lengths[i]) + " m";
  }
  return out;
}

std::string count_word(std::size_t n) {
  static const char* kWords[] = {"zero", "one", "two",   "three", "four", "five",
                                 "six",  "seven", "eight", "nine",  "ten"};
  return n < 11 ? kWords[n] : std::to_string(n);
}

std::string normal_description(const TaskScenario& s) {
  std::string out = fmt::format("Task: {}. {} ", s.title, s.description);
  out +=
      "The work happens in a flat two-dimensional workspace, and every position below is "
      "given in meters in one shared frame. ";
  out += fmt::format("The robot base can be installed at {} candidate location{}: {}. ",
                     count_word(s.base_options.size()), s.base_options.size() == 1 ? "" : "s",
                     join_points(s.base_options, " or "));
  out += fmt::format("The arm tip has to reach {} target point{} located at {}. ",
                     count_word(s.targets.size()), s.targets.size() == 1 ? "" : "s",
                     join_points(s.targets, ", and "));
  out += fmt::format(
      "Each robot is a planar serial arm built from links chosen among the length options "
      "{}; a length may be reused, and one robot carries at most {} links. ",
      join_lengths(s.link_options), count_word(static_cast<std::size_t>(s.max_links_per_robot)));
  out +=
      "Decide how many robots are needed, where each one stands, which targets it serves, and "
      "which links it uses so that every target is reachable without oversizing the arms.";
  return out;
}

const char* kLongContext[] = {
    "Background. Small planar manipulators are increasingly deployed next to people and "
    "other machines, so a design team has to balance reach, cost, and safety before any "
    "hardware is ordered. Every additional link adds weight at the tip, raises the torque the "
    "shoulder motor must deliver, and enlarges the sweep volume that has to be guarded. An arm "
    "that is too short, on the other hand, simply cannot serve the task, and relocating a "
    "mounted base later is expensive because anchoring, cabling, and calibration all have to "
    "be redone.",
    "Operating considerations. The arm is expected to move smoothly between its resting pose "
    "and each goal, slowing down near the goal so that the tip settles instead of "
    "overshooting. Joint motors are rate limited, and the controller will eventually be "
    "trained in simulation before it is transferred to the real cell, so the kinematic "
    "description has to be exact and internally consistent. Positions that are barely "
    "reachable at full extension are considered fragile, because small calibration errors "
    "then turn into missed goals, and designers usually keep a modest reserve of reach.",
    "Documentation requirements. The final proposal must explain the chosen coordinate "
    "frame, list every assumption that was made, justify the number of robots and the base "
    "positions, and describe the link selection in a way that a reviewer can verify by hand. "
    "The controller design must state how success and failure are judged and which initial "
    "pose every episode starts from. The concrete task follows.",
};

}  // namespace

std::string_view to_string(DescriptionLength level) {
  switch (level) {
    case DescriptionLength::Short: return "short";
    case DescriptionLength::Normal: return "normal";
    case DescriptionLength::Long: return "long";
  }
  return "normal";
}

std::optional<DescriptionLength> parse_description_length(std::string_view name) {
  std::string lower = text::to_lower(name);
  if (lower == "short") return DescriptionLength::Short;
  if (lower == "normal") return DescriptionLength::Normal;
  if (lower == "long") return DescriptionLength::Long;
  return std::nullopt;
}

const std::vector<TaskScenario>& builtin_scenarios() {
  static const std::vector<TaskScenario> kScenarios = {
      make("1", "Rehabilitation Therapy",
           "A clinic wants an arm that guides a patient's hand through a set of reaching "
           "exercises above a treatment table.",
           {{0, 0}, {0.5, 0}}, {{0.5, 1.2}, {0.8, 1.5}, {1.0, 1.0}}, {0.8, 1.0, 1.2}),
      make("2", "Surgical Instrument Handling",
           "An operating room needs an arm that passes sterile instruments to fixed hand-off "
           "spots around the surgical field.",
           {{0, 0.5}, {0.2, 0.3}}, {{0.5, 0.5}, {0.7, 0.7}, {1.0, 0.6}}, {0.7, 0.9, 1.1}),
      make("3", "Elderly Feeding Assistance",
           "A care home wants an arm that brings a spoon from the tray to several positions "
           "near a seated resident.",
           {{0, -0.5}, {-0.3, -0.5}}, {{0.4, 0.2}, {0.5, 0.5}, {0.6, 0.3}}, {0.6, 0.8, 1.0}),
      make("4", "Physical Therapy Stretching",
           "A therapy center needs an arm that holds a limb support at several stretching "
           "positions beside a bed.",
           {{0.5, 0}, {0.3, -0.2}}, {{0.5, 1.0}, {0.6, 1.2}, {0.8, 1.1}}, {0.9, 1.1, 1.3}),
      make("5", "Prosthetic Limb Training",
           "A training lab wants an arm that presents objects at fixed spots so amputees can "
           "practice grasping with a new prosthesis.",
           {{0, 0}, {0.2, -0.2}}, {{0.3, 0.4}, {0.5, 0.6}, {0.7, 0.5}}, {0.7, 0.9, 1.2}),
      make("6", "Assembly Line Placement",
           "A production line needs an arm that places parts onto fixtures spread along a "
           "moving conveyor section.",
           {{0, 0}, {0, 0.3}}, {{0.4, 0.3}, {0.6, 0.5}, {0.8, 0.4}}, {0.8, 1.0, 1.2}),
      make("7", "Warehouse Item Sorting",
           "A warehouse wants an arm that drops items into sorting bins mounted on a rack "
           "in front of the station.",
           {{0, 0}, {-0.5, 0}}, {{0.5, 1.0}, {0.7, 1.2}, {1.0, 1.1}}, {0.9, 1.1, 1.3}),
      make("8", "Automobile Welding",
           "A body shop needs an arm that moves a welding tip to several seam points on a "
           "car door panel.",
           {{0, 0}, {1.2, 0.5}}, {{0.4, 0.2}, {0.6, 0.3}, {0.8, 0.4}}, {0.7, 0.9, 1.0}),
      make("9", "Pick-and-Place for Electronics",
           "An electronics plant wants an arm that places components onto pads of a circuit "
           "board held in a fixture.",
           {{0, 0}, {0.2, 0.3}}, {{0.3, 0.4}, {0.5, 0.5}, {0.7, 0.6}}, {0.6, 0.8, 1.0}),
      make("10", "Palletizing in Logistics",
           "A logistics hub needs an arm that stacks cartons at several drop positions on a "
           "pallet next to the line.",
           {{0, 0}, {0.5, 0.5}}, {{0.4, 0.5}, {0.6, 0.7}, {0.8, 1.0}}, {0.9, 1.2, 1.5}),
  };
  return kScenarios;
}

const TaskScenario& example_scenario() {
  // Two bases 10 m apart; four boxes 5 m apart on a parallel line 20 m in
  // front of the bases' midpoint.
  static const TaskScenario kExample =
      make("example", "Factory Box Picking",
           "A factory floor has two robot mounting points and a row of boxes to pick up on a "
           "line parallel to the mounting points.",
           {{-5, 0}, {5, 0}}, {{-7.5, 20}, {-2.5, 20}, {2.5, 20}, {7.5, 20}}, {10, 5, 2});
  return kExample;
}

std::optional<TaskScenario> find_scenario(std::string_view id) {
  for (const auto& s : builtin_scenarios()) {
    if (s.id == id) return s;
  }
  if (id == example_scenario().id) return example_scenario();
  return std::nullopt;
}

void validate_scenario(const TaskScenario& s) {
  if (s.id.empty()) throw ValidationError("id: empty");
  if (text::trim(s.description).empty()) throw ValidationError("description: empty");
  if (s.base_options.empty()) throw ValidationError("base_options: empty");
  if (s.targets.empty()) throw ValidationError("targets: empty");
  if (s.link_options.empty()) throw ValidationError("link_options: empty");
  for (const auto& p : s.base_options) {
    if (!p.finite()) throw ValidationError("base_options: non-finite coordinate");
  }
  for (const auto& p : s.targets) {
    if (!p.finite()) throw ValidationError("targets: non-finite coordinate");
  }
  for (double l : s.link_options) {
    if (!std::isfinite(l) || l <= 0.0) throw ValidationError("link_options: must be > 0");
  }
  if (s.max_links_per_robot < 1) throw ValidationError("max_links_per_robot: must be >= 1");
}

namespace {

std::string read_string(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return {};
  if (!doc[key].is_string()) throw ParseError(std::string(key) + ": expected a string");
  return doc[key].get<std::string>();
}

std::vector<Point2> read_points(const json& doc, const char* key) {
  std::vector<Point2> points;
  if (!doc.contains(key) || doc[key].is_null()) return points;
  const json& arr = doc[key];
  if (!arr.is_array()) throw ParseError(std::string(key) + ": expected an array of [x, y]");
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
      throw ParseError(std::string(key) + ": expected an array of [x, y]");
    points.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return points;
}

}  // namespace

TaskScenario parse_scenario(std::string_view bytes) {
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) throw ParseError("scenario: not a valid JSON document");
  if (!doc.is_object()) throw ParseError("scenario: expected a JSON object");

  TaskScenario s;
  s.id = read_string(doc, "id");
  s.title = read_string(doc, "title");
  s.description = read_string(doc, "description");
  s.base_options = read_points(doc, "base_options");
  s.targets = read_points(doc, "targets");
  if (doc.contains("link_options") && !doc["link_options"].is_null()) {
    const json& arr = doc["link_options"];
    if (!arr.is_array()) throw ParseError("link_options: expected an array of numbers");
    for (const auto& item : arr) {
      if (!item.is_number()) throw ParseError("link_options: expected an array of numbers");
      s.link_options.push_back(item.get<double>());
    }
  }
  if (doc.contains("max_links_per_robot")) {
    const json& v = doc["max_links_per_robot"];
    if (!v.is_number_integer()) throw ParseError("max_links_per_robot: expected an integer");
    s.max_links_per_robot = v.get<int>();
  }
  validate_scenario(s);
  return s;
}

std::string serialize_scenario(const TaskScenario& s) {
  json doc;
  doc["id"] = s.id;
  doc["title"] = s.title;
  doc["description"] = s.description;
  auto points = [](const std::vector<Point2>& ps) {
    json arr = json::array();
    for (const auto& p : ps) arr.push_back({p.x, p.y});
    return arr;
  };
  doc["base_options"] = points(s.base_options);
  doc["targets"] = points(s.targets);
  doc["link_options"] = s.link_options;
  doc["max_links_per_robot"] = s.max_links_per_robot;
  return doc.dump(2) + "\n";
}

std::string render_description(const TaskScenario& s, DescriptionLength level) {
  switch (level) {
    case DescriptionLength::Short:
      return fmt::format("Design a robot arm system for the {} task.", s.title);
    case DescriptionLength::Normal:
      return normal_description(s);
    case DescriptionLength::Long: {
      std::string out;
      for (const char* paragraph : kLongContext) {
        out += paragraph;
        out += "\n\n";
      }
      return out + normal_description(s);
    }
  }
  return normal_description(s);
}

}  // namespace roboforge

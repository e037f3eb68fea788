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

#include "roboforge/arm_design.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "roboforge/error.hpp"

namespace roboforge {
namespace {

constexpr double kCostTolerance = 1e-9;
constexpr double kOptionTolerance = 1e-9;
constexpr double kCertificateTolerance = 1e-3;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

bool in_options(double length, const std::vector<double>& options) {
  return std::any_of(options.begin(), options.end(),
                     [&](double o) { return std::abs(o - length) <= kOptionTolerance; });
}

bool in_options(const Point2& p, const std::vector<Point2>& options) {
  return std::any_of(options.begin(), options.end(), [&](const Point2& o) {
    return std::abs(o.x - p.x) <= kOptionTolerance && std::abs(o.y - p.y) <= kOptionTolerance;
  });
}

std::string format_options(const std::vector<double>& options) {
  std::vector<double> sorted = options;
  std::sort(sorted.begin(), sorted.end());
  std::string out = "{";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_length(sorted[i]);
  }
  return out + "}";
}

std::string format_links(const std::vector<double>& links) {
  std::string out = "[";
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_length(links[i]);
  }
  return out + "]";
}

// Cheapest link set reaching every listed target from base, or nullopt.
// Candidates are pre-sorted by (cost, link count, lexicographic).
const std::vector<double>* cheapest_set(const std::vector<std::vector<double>>& candidates,
                                        const Point2& base, const std::vector<Point2>& targets,
                                        double margin) {
  for (const auto& links : candidates) {
    ArmConfiguration arm{links, base};
    bool ok = std::all_of(targets.begin(), targets.end(),
                          [&](const Point2& t) { return is_reachable(arm, t, margin); });
    if (ok) return &links;
  }
  return nullptr;
}

}  // namespace

DesignProblem DesignProblem::from(const TaskScenario& scenario) {
  return {scenario.base_options, scenario.targets, scenario.link_options};
}

DesignProblem DesignProblem::from(const TaskAnalysisReport& analysis) {
  return {analysis.base_options, analysis.targets, analysis.link_options};
}

std::size_t RobotDesign::link_count() const {
  std::size_t n = 0;
  for (const auto& r : robots) n += r.arm.links.size();
  return n;
}

std::vector<std::vector<double>> candidate_link_sets(const std::vector<double>& options,
                                                     int max_links) {
  std::vector<double> unique = options;
  std::sort(unique.begin(), unique.end(), std::greater<>());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<std::vector<double>> sets;
  std::vector<double> current;
  // Non-increasing sequences over the descending option list.
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (!current.empty()) sets.push_back(current);
    if (static_cast<int>(current.size()) == max_links) return;
    for (std::size_t i = start; i < unique.size(); ++i) {
      current.push_back(unique[i]);
      grow(i);
      current.pop_back();
    }
  };
  grow(0);
  std::stable_sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    double ca = sum(a), cb = sum(b);
    if (std::abs(ca - cb) > kCostTolerance) return ca < cb;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return sets;
}

bool design_less(const RobotDesign& a, const RobotDesign& b) {
  if (std::abs(a.total_cost - b.total_cost) > kCostTolerance) return a.total_cost < b.total_cost;
  if (a.robots.size() != b.robots.size()) return a.robots.size() < b.robots.size();
  if (a.link_count() != b.link_count()) return a.link_count() < b.link_count();
  auto bases = [](const RobotDesign& d) {
    std::vector<Point2> out;
    for (const auto& r : d.robots) out.push_back(r.arm.base);
    return out;
  };
  auto ba = bases(a), bb = bases(b);
  if (ba != bb) return ba < bb;
  for (std::size_t i = 0; i < a.robots.size(); ++i) {
    if (a.robots[i].arm.links != b.robots[i].arm.links)
      return a.robots[i].arm.links < b.robots[i].arm.links;
  }
  for (std::size_t i = 0; i < a.robots.size(); ++i) {
    if (a.robots[i].targets != b.robots[i].targets)
      return a.robots[i].targets < b.robots[i].targets;
  }
  return false;
}

RobotDesign design_robots(const DesignProblem& problem, int max_links, double margin) {
  if (problem.base_options.empty() || problem.targets.empty() || problem.link_options.empty())
    throw std::invalid_argument("design_robots: bases, targets and link options must be non-empty");
  if (max_links < 1) throw std::invalid_argument("design_robots: max_links must be >= 1");

  const auto candidates = candidate_link_sets(problem.link_options, max_links);
  const std::size_t num_targets = problem.targets.size();

  // Bases in canonical (coordinate) order so robot order is canonical too.
  std::vector<Point2> bases = problem.base_options;
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

  std::optional<RobotDesign> best;
  for (std::size_t k = 1; k <= std::min(bases.size(), num_targets); ++k) {
    // Subsets of k bases via a selection mask.
    std::vector<bool> mask(bases.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<Point2> chosen;
      for (std::size_t i = 0; i < bases.size(); ++i) {
        if (mask[i]) chosen.push_back(bases[i]);
      }
      // Every surjective target -> robot map.
      std::vector<std::size_t> owner(num_targets, 0);
      while (true) {
        std::vector<std::vector<std::size_t>> groups(k);
        for (std::size_t t = 0; t < num_targets; ++t) groups[owner[t]].push_back(t);
        bool surjective = std::none_of(groups.begin(), groups.end(),
                                       [](const auto& g) { return g.empty(); });
        if (surjective) {
          RobotDesign design;
          design.targets = problem.targets;
          design.margin = margin;
          bool feasible = true;
          for (std::size_t r = 0; r < k && feasible; ++r) {
            std::vector<Point2> pts;
            for (auto t : groups[r]) pts.push_back(problem.targets[t]);
            const auto* links = cheapest_set(candidates, chosen[r], pts, margin);
            if (!links) {
              feasible = false;
              break;
            }
            design.robots.push_back({ArmConfiguration{*links, chosen[r]}, groups[r]});
            design.total_cost += sum(*links);
          }
          if (feasible && (!best || design_less(design, *best))) best = std::move(design);
        }
        std::size_t pos = 0;
        while (pos < num_targets && ++owner[pos] == k) owner[pos++] = 0;
        if (pos == num_targets) break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }

  if (best) return *best;

  std::vector<std::string> diagnostics;
  const auto& longest = candidates.empty() ? std::vector<double>{} : *std::max_element(
      candidates.begin(), candidates.end(),
      [](const auto& a, const auto& b) { return sum(a) < sum(b); });
  for (const auto& target : problem.targets) {
    bool reachable = std::any_of(bases.begin(), bases.end(), [&](const Point2& base) {
      return cheapest_set(candidates, base, {target}, margin) != nullptr;
    });
    if (reachable) continue;
    for (const auto& base : bases) {
      // Best attempt: the set whose annulus comes closest to the target.
      const std::vector<double>* closest = &longest;
      double gap = std::numeric_limits<double>::infinity();
      double d = distance(base, target);
      for (const auto& links : candidates) {
        auto reach = reach_interval(links);
        double g = std::max({0.0, reach.min_reach - d, d * (1.0 + margin) - reach.max_reach});
        if (g < gap) {
          gap = g;
          closest = &links;
        }
      }
      auto reach = reach_interval(*closest);
      diagnostics.push_back(fmt::format(
          "target {} unreachable from base {}: best links {} reach [{}, {}], distance {:.4f}",
          format_point(target), format_point(base), format_links(*closest),
          format_length(reach.min_reach), format_length(reach.max_reach), d));
    }
  }
  std::string message = "no feasible design";
  for (const auto& d : diagnostics) message += "\n  " + d;
  throw InfeasibleDesignError(message, std::move(diagnostics));
}

AssignedDesign assign_targets(const RobotDesignReport& report, const std::vector<Point2>& targets,
                              double margin) {
  std::vector<RobotAssignment> robots;
  for (std::size_t r = 0; r < report.arm_configurations.size(); ++r) {
    std::vector<double> links = report.arm_configurations[r].links;
    std::sort(links.begin(), links.end(), std::greater<>());
    Point2 base = r < report.selected_bases.size() ? report.selected_bases[r]
                                                   : report.selected_bases.back();
    robots.push_back({ArmConfiguration{links, base}, {}});
  }
  AssignedDesign out;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    auto it = std::find_if(robots.begin(), robots.end(), [&](const RobotAssignment& r) {
      return is_reachable(r.arm, targets[t], margin);
    });
    if (it == robots.end()) {
      out.unreachable.push_back(t);
    } else {
      it->targets.push_back(t);
    }
  }
  out.design.targets = targets;
  out.design.margin = margin;
  for (auto& r : robots) {
    if (r.targets.empty()) continue;
    out.design.total_cost += sum(r.arm.links);
    out.design.robots.push_back(std::move(r));
  }
  return out;
}

DesignVerification verify_design(const RobotDesignReport& report, const TaskScenario& scenario,
                                 double margin) {
  DesignVerification v;
  double cost = 0.0;
  for (const auto& config : report.arm_configurations) {
    for (double l : config.links) {
      cost += l;
      if (!in_options(l, scenario.link_options)) {
        v.links_from_options = false;
        v.findings.push_back(fmt::format("robot {}: link {} not in options {}",
                                         config.robot_index, format_length(l),
                                         format_options(scenario.link_options)));
      }
    }
    if (static_cast<int>(config.links.size()) > scenario.max_links_per_robot) {
      v.links_from_options = false;
      v.findings.push_back(fmt::format("robot {}: {} links exceed the limit of {}",
                                       config.robot_index, config.links.size(),
                                       scenario.max_links_per_robot));
    }
  }
  for (const auto& base : report.selected_bases) {
    if (!in_options(base, scenario.base_options)) {
      v.bases_from_options = false;
      v.findings.push_back(fmt::format("base {} not among the base options", format_point(base)));
    }
  }
  v.report_cost = cost;

  auto assigned = assign_targets(report, scenario.targets, margin);
  for (auto t : assigned.unreachable) {
    v.all_reachable = false;
    v.certified = false;
    v.findings.push_back(
        fmt::format("target {} not reachable by any robot", format_point(scenario.targets[t])));
  }
  for (const auto& robot : assigned.design.robots) {
    for (auto t : robot.targets) {
      auto ik = solve_ik(robot.arm, scenario.targets[t], kCertificateTolerance, 2000);
      if (!ik.success) {
        v.certified = false;
        v.findings.push_back(fmt::format("target {}: no IK certificate (tip error {:.4g})",
                                         format_point(scenario.targets[t]), ik.tip_error));
      }
    }
  }
  v.design = assigned.design;

  try {
    auto optimum = design_robots(DesignProblem::from(scenario), scenario.max_links_per_robot,
                                 margin);
    v.optimal_cost = optimum.total_cost;
    if (optimum.total_cost > 0.0) v.cost_ratio = cost / optimum.total_cost;
    if (v.cost_ratio && *v.cost_ratio > 1.0 + kCostTolerance) {
      v.findings.push_back(fmt::format("cost {} is {:.3f}x the optimum {}", format_length(cost),
                                       *v.cost_ratio, format_length(optimum.total_cost)));
    }
  } catch (const InfeasibleDesignError&) {
    v.findings.push_back("scenario has no feasible design at this margin");
  }
  return v;
}

nlohmann::json design_to_json(const RobotDesign& design) {
  nlohmann::json doc;
  doc["targets"] = nlohmann::json::array();
  for (const auto& t : design.targets) doc["targets"].push_back({t.x, t.y});
  doc["robots"] = nlohmann::json::array();
  for (const auto& r : design.robots) {
    doc["robots"].push_back({{"base", {r.arm.base.x, r.arm.base.y}},
                             {"links", r.arm.links},
                             {"targets", r.targets}});
  }
  doc["total_cost"] = design.total_cost;
  doc["margin"] = design.margin;
  return doc;
}

RobotDesign design_from_json(const nlohmann::json& doc) {
  try {
    RobotDesign d;
    for (const auto& t : doc.at("targets")) d.targets.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    for (const auto& r : doc.at("robots")) {
      RobotAssignment a;
      a.arm.base = {r.at("base").at(0).get<double>(), r.at("base").at(1).get<double>()};
      a.arm.links = r.at("links").get<std::vector<double>>();
      a.targets = r.at("targets").get<std::vector<std::size_t>>();
      d.robots.push_back(std::move(a));
    }
    d.total_cost = doc.at("total_cost").get<double>();
    d.margin = doc.at("margin").get<double>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("design: ") + e.what());
  }
}

std::string describe_design(const RobotDesign& design) {
  std::string out;
  for (std::size_t i = 0; i < design.robots.size(); ++i) {
    const auto& r = design.robots[i];
    std::vector<std::string> targets;
    for (auto t : r.targets) targets.push_back(format_point(design.targets[t]));
    out += fmt::format("Robot {}: base {}, links {}, targets {}\n", i + 1,
                       format_point(r.arm.base), format_links(r.arm.links),
                       fmt::join(targets, ", "));
  }
  out += fmt::format("Total link length: {} m\n", format_length(design.total_cost));
  return out;
}

}  // namespace roboforge

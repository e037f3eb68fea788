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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <tuple>

namespace roboforge::oracle {

namespace {

struct Table {
  std::vector<double> c, s;
  explicit Table(int grid) : c(grid), s(grid) {
    for (int i = 0; i < grid; ++i) {
      double a = 2.0 * std::numbers::pi * i / grid;
      c[i] = std::cos(a);
      s[i] = std::sin(a);
    }
  }
};

// Tip positions with the first joint at zero; the table angles are absolute
// headings, so enumerating them covers every relative configuration.
template <typename F>
void for_each_tip(const std::vector<double>& links, const Table& t, bool spin_first, F&& f) {
  const int grid = static_cast<int>(t.c.size());
  const int first = spin_first ? grid : 1;
  if (links.size() == 1) {
    for (int a = 0; a < first; ++a) f(links[0] * t.c[a], links[0] * t.s[a]);
  } else if (links.size() == 2) {
    for (int a = 0; a < first; ++a)
      for (int b = 0; b < grid; ++b)
        f(links[0] * t.c[a] + links[1] * t.c[b], links[0] * t.s[a] + links[1] * t.s[b]);
  } else {
    for (int a = 0; a < first; ++a)
      for (int b = 0; b < grid; ++b) {
        const double x = links[0] * t.c[a] + links[1] * t.c[b];
        const double y = links[0] * t.s[a] + links[1] * t.s[b];
        for (int c = 0; c < grid; ++c) f(x + links[2] * t.c[c], y + links[2] * t.s[c]);
      }
  }
}

}  // namespace

SampledReach sample_reach(const std::vector<double>& links, int grid) {
  static thread_local std::map<int, Table> tables;
  auto it = tables.try_emplace(grid, grid).first;
  SampledReach r{std::numeric_limits<double>::infinity(), 0.0};
  for_each_tip(links, it->second, false, [&](double x, double y) {
    const double d = std::sqrt(x * x + y * y);
    r.min_distance = std::min(r.min_distance, d);
    r.max_distance = std::max(r.max_distance, d);
  });
  return r;
}

double sampled_tip_gap(const std::vector<double>& links, const Point2& base, const Point2& target, int grid) {
  const Table t(grid);
  double best = std::numeric_limits<double>::infinity();
  const double tx = target.x - base.x, ty = target.y - base.y;
  for_each_tip(links, t, true, [&](double x, double y) { best = std::min(best, std::hypot(x - tx, y - ty)); });
  return best;
}

namespace {

bool reaches(const std::vector<double>& links, const Point2& base, const Point2& target, double margin) {
  double sum = 0.0, longest = 0.0;
  for (double l : links) {
    sum += l;
    longest = std::max(longest, l);
  }
  const double d = std::sqrt((target.x - base.x) * (target.x - base.x) + (target.y - base.y) * (target.y - base.y));
  const double slack = 1e-9;
  return d + slack >= std::max(0.0, 2.0 * longest - sum) && d * (1.0 + margin) <= sum + slack;
}

void all_tuples(const std::vector<double>& options, int max_links, std::vector<double>& cur,
                std::vector<std::vector<double>>& out) {
  if (!cur.empty()) out.push_back(cur);
  if (static_cast<int>(cur.size()) == max_links) return;
  for (double o : options) {
    cur.push_back(o);
    all_tuples(options, max_links, cur, out);
    cur.pop_back();
  }
}

using Key = std::tuple<long long, std::size_t, std::size_t, std::vector<std::pair<double, double>>,
                       std::vector<std::vector<double>>, std::vector<std::vector<std::size_t>>>;

Key key_of(const RobotDesign& d) {
  std::vector<std::pair<double, double>> bases;
  std::vector<std::vector<double>> links;
  std::vector<std::vector<std::size_t>> targets;
  std::size_t n_links = 0;
  for (const auto& r : d.robots) {
    bases.emplace_back(r.arm.base.x, r.arm.base.y);
    links.push_back(r.arm.links);
    targets.push_back(r.targets);
    n_links += r.arm.links.size();
  }
  return {std::llround(d.total_cost * 1e8), d.robots.size(), n_links, bases, links, targets};
}

}  // namespace

std::optional<RobotDesign> brute_force_design(const std::vector<Point2>& base_options,
                                              const std::vector<Point2>& targets,
                                              const std::vector<double>& link_options, int max_links,
                                              double margin) {
  std::set<Point2> unique_bases(base_options.begin(), base_options.end());
  const std::vector<Point2> bases(unique_bases.begin(), unique_bases.end());
  std::vector<std::vector<double>> tuples;
  std::vector<double> cur;
  all_tuples(link_options, max_links, cur, tuples);

  std::optional<RobotDesign> best;
  std::optional<Key> best_key;
  const std::size_t nb = bases.size(), nt = targets.size();
  std::vector<std::size_t> map(nt, 0);
  while (true) {
    // Robots are the used bases, in coordinate order.
    std::vector<std::size_t> used;
    for (std::size_t b = 0; b < nb; ++b)
      if (std::count(map.begin(), map.end(), b) > 0) used.push_back(b);
    std::vector<std::vector<std::vector<double>>> feasible(used.size());
    bool ok = true;
    for (std::size_t r = 0; r < used.size() && ok; ++r) {
      for (const auto& t : tuples) {
        bool all = true;
        for (std::size_t i = 0; i < nt; ++i)
          if (map[i] == used[r] && !reaches(t, bases[used[r]], targets[i], margin)) all = false;
        if (all) {
          auto sorted = t;
          std::sort(sorted.rbegin(), sorted.rend());
          feasible[r].push_back(sorted);
        }
      }
      ok = !feasible[r].empty();
    }
    if (ok) {
      std::vector<std::size_t> pick(used.size(), 0);
      while (true) {
        RobotDesign d;
        d.targets = targets;
        d.margin = margin;
        for (std::size_t r = 0; r < used.size(); ++r) {
          RobotAssignment a;
          a.arm.base = bases[used[r]];
          a.arm.links = feasible[r][pick[r]];
          for (std::size_t i = 0; i < nt; ++i)
            if (map[i] == used[r]) a.targets.push_back(i);
          for (double l : a.arm.links) d.total_cost += l;
          d.robots.push_back(a);
        }
        Key k = key_of(d);
        if (!best_key || k < *best_key) {
          best_key = k;
          best = d;
        }
        std::size_t r = 0;
        while (r < used.size() && ++pick[r] == feasible[r].size()) pick[r++] = 0;
        if (r == used.size()) break;
      }
    }
    std::size_t i = 0;
    while (i < nt && ++map[i] == nb) map[i++] = 0;
    if (i == nt) break;
  }
  return best;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace roboforge::oracle

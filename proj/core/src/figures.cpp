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

#include "roboforge/figures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "roboforge/kinematics.hpp"

namespace roboforge {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Non-degenerate range with a little padding.
  Range padded(double fallback_lo, double fallback_hi) const {
    Range r = *this;
    if (!(r.lo <= r.hi)) return {fallback_lo, fallback_hi};
    double span = r.hi - r.lo;
    if (span < 1e-9) span = std::max(1.0, std::abs(r.hi));
    return {r.lo - 0.05 * span, r.hi + 0.05 * span};
  }
};

class Canvas {
 public:
  Canvas(std::string title, Range x, Range y, std::string x_label, std::string y_label)
      : x_(x), y_(y) {
    out_ = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        kWidth, kHeight);
    out_ += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    out_ += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", kWidth / 2, title);
    axes(x_label, y_label);
  }

  double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view cls, std::string_view color,
                std::string_view extra = "") {
    if (pts.empty()) return;
    std::string points;
    for (const auto& [x, y] : pts) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(x), py(y));
    }
    out_ += fmt::format("<polyline class=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n",
                        cls, color, extra, points);
  }

  void raw(const std::string& s) { out_ += s; }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 8;
    for (const auto& [label, color] : entries) {
      const double x = kWidth - kRight - 150;
      out_ += fmt::format("<line class=\"legend\" x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                          x, y, x + 20, y, color);
      out_ += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", x + 26, y + 4, label);
      y += 16;
    }
  }

  std::string finish() { return out_ + "</svg>\n"; }

 private:
  void axes(const std::string& x_label, const std::string& y_label) {
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    out_ += fmt::format("<g class=\"axes\" stroke=\"black\"><line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>"
                        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\"/></g>\n",
                        x0, y0, x1, y1);
    for (int i = 0; i <= 4; ++i) {
      const double xv = x_.lo + (x_.hi - x_.lo) * i / 4.0;
      const double yv = y_.lo + (y_.hi - y_.lo) * i / 4.0;
      out_ += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n", px(xv), y0 + 18, xv);
      out_ += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", x0 - 6, py(yv) + 4, yv);
    }
    out_ += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", (x0 + x1) / 2, kHeight - 12, x_label);
    out_ += fmt::format("<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                        (y0 + y1) / 2, (y0 + y1) / 2, y_label);
  }

  Range x_, y_;
  std::string out_;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::filesystem::filesystem_error("cannot write figure", path, std::make_error_code(std::errc::io_error));
  out << content;
  if (!out) throw std::filesystem::filesystem_error("cannot write figure", path, std::make_error_code(std::errc::io_error));
}

}  // namespace

std::string learning_curve_svg(const std::vector<EpisodeRecord>& curve) {
  Range x, y;
  for (const auto& e : curve) {
    x.add(e.episode);
    y.add(e.total_reward);
  }
  Canvas c("Learning curve", x.padded(0, 1), y.padded(-1, 0), "episode", "total reward");
  std::vector<std::pair<double, double>> data, avg;
  double window = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    data.emplace_back(curve[i].episode, curve[i].total_reward);
    window += curve[i].total_reward;
    if (i >= 10) window -= curve[i - 10].total_reward;
    avg.emplace_back(curve[i].episode, window / static_cast<double>(std::min<std::size_t>(i + 1, 10)));
  }
  c.polyline(data, "data", "#9bbcd8");
  c.polyline(avg, "moving-average", "#1f4e79");
  c.legend({{"episode reward", "#9bbcd8"}, {"10-episode average", "#1f4e79"}});
  return c.finish();
}

std::string motor_control_svg(const std::vector<Trajectory>& trajectories) {
  Range x, y;
  std::size_t joints = 0;
  for (const auto& t : trajectories) {
    for (const auto& s : t.steps) {
      x.add(s.t);
      for (double a : s.joint_angles) y.add(a);
      joints = std::max(joints, s.joint_angles.size());
    }
  }
  Canvas c("Motor control", x.padded(0, 1), y.padded(-1, 1), "time [s]", "joint angle [rad]");
  const char* dashes[] = {"", " stroke-dasharray=\"6 3\"", " stroke-dasharray=\"2 2\"", " stroke-dasharray=\"8 2 2 2\""};
  for (const auto& t : trajectories) {
    for (std::size_t k = 0; k < joints; ++k) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& s : t.steps) {
        if (k < s.joint_angles.size()) pts.emplace_back(s.t, s.joint_angles[k]);
      }
      c.polyline(pts, fmt::format("joint joint-{} target-{}", k + 1, t.target_index), kPalette[k % std::size(kPalette)],
                 dashes[t.target_index % std::size(dashes)]);
    }
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t k = 0; k < joints; ++k) legend.emplace_back(fmt::format("joint {}", k + 1), kPalette[k % std::size(kPalette)]);
  c.legend(legend);
  return c.finish();
}

std::string tip_trajectory_svg(const RLSpec& spec, const std::vector<Trajectory>& trajectories) {
  const ReachInterval reach = reach_interval(spec.links);
  Range x, y;
  x.add(spec.base.x - reach.max_reach);
  x.add(spec.base.x + reach.max_reach);
  y.add(spec.base.y - reach.max_reach);
  y.add(spec.base.y + reach.max_reach);
  for (const auto& t : spec.targets) {
    x.add(t.x);
    y.add(t.y);
  }
  for (const auto& t : trajectories) {
    for (const auto& s : t.steps) {
      x.add(s.tip.x);
      y.add(s.tip.y);
    }
  }
  Range xr = x.padded(-1, 1), yr = y.padded(-1, 1);
  // Equal scale on both axes so the annulus stays circular.
  const double sx = (xr.hi - xr.lo) / (kWidth - kLeft - kRight);
  const double sy = (yr.hi - yr.lo) / (kHeight - kTop - kBottom);
  if (sx > sy) {
    const double extra = (sx * (kHeight - kTop - kBottom) - (yr.hi - yr.lo)) / 2;
    yr.lo -= extra;
    yr.hi += extra;
  } else {
    const double extra = (sy * (kWidth - kLeft - kRight) - (xr.hi - xr.lo)) / 2;
    xr.lo -= extra;
    xr.hi += extra;
  }
  Canvas c("End-effector trajectories", xr, yr, "x [m]", "y [m]");
  const double scale = (kWidth - kLeft - kRight) / (xr.hi - xr.lo);
  c.raw(fmt::format("<circle class=\"annulus\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n",
                    c.px(spec.base.x), c.py(spec.base.y), reach.max_reach * scale));
  if (reach.min_reach > 0.0) {
    c.raw(fmt::format("<circle class=\"annulus\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n",
                      c.px(spec.base.x), c.py(spec.base.y), reach.min_reach * scale));
  }
  c.raw(fmt::format("<rect class=\"base-marker\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"10\" height=\"10\" fill=\"black\"/>\n",
                    c.px(spec.base.x) - 5, c.py(spec.base.y) - 5));
  for (const auto& t : trajectories) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : t.steps) pts.emplace_back(s.tip.x, s.tip.y);
    c.polyline(pts, fmt::format("tip-path target-{}", t.target_index), kPalette[t.target_index % std::size(kPalette)]);
  }
  for (std::size_t i = 0; i < spec.targets.size(); ++i) {
    c.raw(fmt::format("<circle class=\"target-marker\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" fill=\"{}\" stroke=\"black\"/>\n",
                      c.px(spec.targets[i].x), c.py(spec.targets[i].y), kPalette[i % std::size(kPalette)]));
  }
  return c.finish();
}

std::vector<Trajectory> evaluate_all(const TrainingResult& result, const RLSpec& spec) {
  std::vector<Trajectory> out;
  for (std::size_t t = 0; t < spec.targets.size(); ++t) out.push_back(evaluate(result.policy, spec, t));
  return out;
}

std::vector<std::filesystem::path> emit_figures(const TrainingResult& result, const std::vector<Trajectory>& trajectories,
                                                const RLSpec& spec, const std::filesystem::path& out_dir,
                                                const std::string& prefix) {
  std::filesystem::create_directories(out_dir);
  const std::string trajectory_data = trajectories_csv(trajectories);
  const std::vector<std::pair<std::string, std::string>> files{
      {"learning_curve.svg", learning_curve_svg(result.learning_curve)},
      {"learning_curve.csv", learning_curve_csv(result.learning_curve)},
      {"motor_control.svg", motor_control_svg(trajectories)},
      {"motor_control.csv", trajectory_data},
      {"tip_trajectory.svg", tip_trajectory_svg(spec, trajectories)},
      {"tip_trajectory.csv", trajectory_data},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : files) {
    const auto path = out_dir / (prefix + name);
    write_file(path, content);
    written.push_back(path);
  }
  return written;
}

}  // namespace roboforge

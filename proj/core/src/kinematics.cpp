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

#include "roboforge/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace roboforge {
namespace {

// Boundary comparisons tolerate round-off in the distance computation.
constexpr double kReachSlack = 1e-12;

}  // namespace

double ArmConfiguration::total_length() const {
  return std::accumulate(links.begin(), links.end(), 0.0);
}

std::vector<Point2> forward_kinematics(std::span<const double> links,
                                       std::span<const double> angles, const Point2& base) {
  if (links.empty() || links.size() != angles.size()) {
    throw std::invalid_argument("forward_kinematics: links and angles must have equal, non-zero size");
  }
  std::vector<Point2> joints;
  joints.reserve(links.size() + 1);
  joints.push_back(base);
  double heading = 0.0;
  Point2 p = base;
  for (std::size_t k = 0; k < links.size(); ++k) {
    heading += angles[k];
    p.x += links[k] * std::cos(heading);
    p.y += links[k] * std::sin(heading);
    joints.push_back(p);
  }
  return joints;
}

Point2 tip_position(std::span<const double> links, std::span<const double> angles,
                    const Point2& base) {
  return forward_kinematics(links, angles, base).back();
}

ReachInterval reach_interval(std::span<const double> links) {
  if (links.empty()) throw std::invalid_argument("reach_interval: no links");
  double sum = std::accumulate(links.begin(), links.end(), 0.0);
  double longest = *std::max_element(links.begin(), links.end());
  return {std::max(0.0, 2.0 * longest - sum), sum};
}

bool is_reachable(const ArmConfiguration& config, const Point2& target, double margin) {
  if (margin < 0.0) throw std::invalid_argument("is_reachable: margin must be >= 0");
  auto reach = reach_interval(config.links);
  double d = distance(config.base, target);
  double scale = std::max(1.0, reach.max_reach) * kReachSlack;
  return reach.min_reach <= d + scale && d * (1.0 + margin) <= reach.max_reach + scale;
}

namespace {

// One Levenberg step on the tip position: dq = J^T (J J^T + lambda^2 I)^-1 e.
void damped_step(const std::vector<double>& links, const Point2& base, const Point2& target,
                 std::vector<double>& angles, double lambda) {
  const auto joints = forward_kinematics(links, angles, base);
  const Point2& tip = joints.back();
  const double ex = target.x - tip.x, ey = target.y - tip.y;
  // Column j of J is the tip offset from joint j rotated by +90 degrees.
  double a = lambda * lambda, b = 0.0, d = lambda * lambda;
  for (std::size_t j = 0; j < links.size(); ++j) {
    const double jx = -(tip.y - joints[j].y), jy = tip.x - joints[j].x;
    a += jx * jx;
    b += jx * jy;
    d += jy * jy;
  }
  const double det = a * d - b * b;
  if (!(std::abs(det) > 1e-300)) return;
  const double wx = (d * ex - b * ey) / det, wy = (a * ey - b * ex) / det;
  for (std::size_t j = 0; j < links.size(); ++j) {
    const double jx = -(tip.y - joints[j].y), jy = tip.x - joints[j].x;
    angles[j] += jx * wx + jy * wy;
  }
}

}  // namespace

IKSolution solve_ik(const ArmConfiguration& config, const Point2& target, double tol,
                    int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_ik: tol must be > 0");
  const auto& links = config.links;
  const std::size_t n = links.size();
  std::vector<double> angles(n, 0.0);

  auto error_of = [&](const std::vector<double>& a) {
    return distance(tip_position(links, a, config.base), target);
  };

  IKSolution best{false, angles, error_of(angles), 0};
  if (best.tip_error <= tol) {
    best.success = true;
    return best;
  }

  double previous = best.tip_error;
  for (int sweep = 1; sweep <= max_iters; ++sweep) {
    for (std::size_t j = n; j-- > 0;) {
      auto joints = forward_kinematics(links, angles, config.base);
      const Point2& pivot = joints[j];
      const Point2& tip = joints.back();
      double tx = tip.x - pivot.x, ty = tip.y - pivot.y;
      double gx = target.x - pivot.x, gy = target.y - pivot.y;
      if (std::hypot(tx, ty) < 1e-12 || std::hypot(gx, gy) < 1e-12) continue;
      double delta = std::atan2(tx * gy - ty * gx, tx * gx + ty * gy);
      angles[j] = std::remainder(angles[j] + delta, 2.0 * M_PI);
    }
    double err = error_of(angles);
    // CCD creeps when an inner link is short next to the outer ones; a damped
    // least-squares step, kept only when it helps, restores fast convergence.
    if (err > tol) {
      std::vector<double> trial = angles;
      damped_step(links, config.base, target, trial, 0.1 * err);
      const double trial_err = error_of(trial);
      if (trial_err < err) {
        angles = std::move(trial);
        err = trial_err;
      }
    }
    if (err < best.tip_error) best = {false, angles, err, sweep};
    if (err <= tol) {
      best.success = true;
      best.sweeps = sweep;
      return best;
    }
    // Folded or fully stretched singular poses stall CCD; kick the inner
    // joints off the singularity.
    if (previous - err < 1e-14) {
      for (std::size_t j = 0; j < n; ++j) angles[j] += (j % 2 == 0 ? 0.35 : -0.6);
    }
    previous = err;
  }
  best.sweeps = max_iters;
  return best;
}

}  // namespace roboforge

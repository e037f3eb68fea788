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

#ifndef ROBOFORGE_GEOMETRY_HPP_
#define ROBOFORGE_GEOMETRY_HPP_

#include <cmath>
#include <compare>
#include <string>

namespace roboforge {

// Planar point in meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(const Point2& a, const Point2& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

// "(0.5, 1.2)" with shortest round-trip decimals.
std::string format_point(const Point2& p);

// Shortest round-trip decimal that always carries a fractional part ("1.0").
std::string format_length(double meters);

}  // namespace roboforge

#endif  // ROBOFORGE_GEOMETRY_HPP_

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

// The ten reference scenarios transcribed by hand, kept apart from the
// library's own fixture table so the two can be compared.

#ifndef ROBOFORGE_TESTS_REFERENCE_TABLE_HPP_
#define ROBOFORGE_TESTS_REFERENCE_TABLE_HPP_

#include <array>
#include <string_view>
#include <vector>

#include "roboforge/geometry.hpp"

namespace roboforge::reference {

struct Row {
  std::string_view id;
  std::string_view title;
  std::vector<Point2> bases;
  std::vector<Point2> targets;
  std::vector<double> links;
};

inline const std::vector<Row>& rows() {
  static const std::vector<Row> table = {
      {"1", "Rehabilitation Therapy", {{0, 0}, {0.5, 0}}, {{0.5, 1.2}, {0.8, 1.5}, {1.0, 1.0}}, {0.8, 1.0, 1.2}},
      {"2", "Surgical Instrument Handling", {{0, 0.5}, {0.2, 0.3}}, {{0.5, 0.5}, {0.7, 0.7}, {1.0, 0.6}},
       {0.7, 0.9, 1.1}},
      {"3", "Elderly Feeding Assistance", {{0, -0.5}, {-0.3, -0.5}}, {{0.4, 0.2}, {0.5, 0.5}, {0.6, 0.3}},
       {0.6, 0.8, 1.0}},
      {"4", "Physical Therapy Stretching", {{0.5, 0}, {0.3, -0.2}}, {{0.5, 1.0}, {0.6, 1.2}, {0.8, 1.1}},
       {0.9, 1.1, 1.3}},
      {"5", "Prosthetic Limb Training", {{0, 0}, {0.2, -0.2}}, {{0.3, 0.4}, {0.5, 0.6}, {0.7, 0.5}},
       {0.7, 0.9, 1.2}},
      {"6", "Assembly Line Placement", {{0, 0}, {0, 0.3}}, {{0.4, 0.3}, {0.6, 0.5}, {0.8, 0.4}}, {0.8, 1.0, 1.2}},
      {"7", "Warehouse Item Sorting", {{0, 0}, {-0.5, 0}}, {{0.5, 1.0}, {0.7, 1.2}, {1.0, 1.1}}, {0.9, 1.1, 1.3}},
      {"8", "Automobile Welding", {{0, 0}, {1.2, 0.5}}, {{0.4, 0.2}, {0.6, 0.3}, {0.8, 0.4}}, {0.7, 0.9, 1.0}},
      {"9", "Pick-and-Place for Electronics", {{0, 0}, {0.2, 0.3}}, {{0.3, 0.4}, {0.5, 0.5}, {0.7, 0.6}},
       {0.6, 0.8, 1.0}},
      {"10", "Palletizing in Logistics", {{0, 0}, {0.5, 0.5}}, {{0.4, 0.5}, {0.6, 0.7}, {0.8, 1.0}},
       {0.9, 1.2, 1.5}},
  };
  return table;
}

}  // namespace roboforge::reference

#endif  // ROBOFORGE_TESTS_REFERENCE_TABLE_HPP_

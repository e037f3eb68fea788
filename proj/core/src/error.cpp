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

#include "roboforge/error.hpp"

#include <utility>

namespace roboforge {
namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> missing)
    : Error("missing required sections: [" + join_names(missing) + "]"),
      missing_(std::move(missing)) {}

InfeasibleDesignError::InfeasibleDesignError(std::string message,
                                             std::vector<std::string> diagnostics)
    : Error(std::move(message)), diagnostics_(std::move(diagnostics)) {}

ConsistencyError::ConsistencyError(std::vector<std::string> fields)
    : Error("rlspec contradicts the robot design: " + join_names(fields)),
      fields_(std::move(fields)) {}

ProviderError::ProviderError(int status, std::string body)
    : Error("provider returned HTTP " + std::to_string(status) + ": " + body),
      status_(status),
      body_(std::move(body)) {}

FixtureMissingError::FixtureMissingError(std::string key)
    : Error("no replay fixture for key " + key), key_(std::move(key)) {}

}  // namespace roboforge

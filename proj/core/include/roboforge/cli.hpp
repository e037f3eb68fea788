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

#ifndef ROBOFORGE_CLI_HPP_
#define ROBOFORGE_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "roboforge/training.hpp"

namespace roboforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitUsage = 2;

// JSON config file. Every key is optional:
//   {"endpoint": "...", "models": ["..."], "credential_env": "...",
//    "fixture_dir": "...", "output_dir": "...",
//    "rl": {"episodes": 300, "seed": 7, "algorithm": "ppo"}}
struct CliConfig {
  std::optional<std::string> endpoint;
  std::vector<std::string> models;
  std::string credential_env = "ROBOFORGE_API_KEY";
  std::filesystem::path fixture_dir;
  std::filesystem::path output_dir = "runs";
  std::optional<int> episodes;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> algorithm;
};

// Throws ParseError on unreadable files or malformed values.
CliConfig load_cli_config(const std::filesystem::path& path);

// Replay fixtures shipped with the source tree.
std::filesystem::path default_fixture_dir();

// args excludes the program name. Returns 0 on success, 1 when a run fails,
// 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roboforge

#endif  // ROBOFORGE_CLI_HPP_

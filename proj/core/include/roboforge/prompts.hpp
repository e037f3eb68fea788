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

#ifndef ROBOFORGE_PROMPTS_HPP_
#define ROBOFORGE_PROMPTS_HPP_

#include <string>
#include <string_view>

#include "roboforge/llm_gateway.hpp"

namespace roboforge {

// Prefix of the line injected for every disabled upstream agent.
inline constexpr std::string_view kAbsentNotice = "UPSTREAM STAGE ABSENT: ";

// System prompts. Each names its agent role on the first line; the stub
// provider keys on those role names.
std::string_view task_analyst_system_prompt();
std::string_view robot_designer_system_prompt();
std::string_view rl_designer_system_prompt();

ChatRequest task_analyst_prompt(std::string_view description, const std::string& model_id);
ChatRequest robot_designer_prompt(std::string_view analysis_markdown, const std::string& model_id);
ChatRequest rl_designer_prompt(std::string_view design_markdown, const std::string& model_id);

}  // namespace roboforge

#endif  // ROBOFORGE_PROMPTS_HPP_

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

#include "roboforge/stub_provider.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "roboforge/arm_design.hpp"
#include "roboforge/error.hpp"
#include "roboforge/prompts.hpp"
#include "roboforge/reports.hpp"
#include "roboforge/text.hpp"

namespace roboforge {

namespace {

enum class Role { Analyst, Designer, RLDesigner, Unknown };

Role detect_role(const ChatRequest& request) {
  for (const auto& m : request.messages) {
    if (m.role != "system") continue;
    if (text::contains(m.content, "You are the Task Analyst")) return Role::Analyst;
    if (text::contains(m.content, "You are the Robot Designer")) return Role::Designer;
    if (text::contains(m.content, "You are the RL Designer")) return Role::RLDesigner;
  }
  return Role::Unknown;
}

std::string user_text(const ChatRequest& request) {
  std::string out;
  for (const auto& m : request.messages) {
    if (m.role == "user") out += m.content + "\n";
  }
  return out;
}

// Input with the ABSENT notice lines removed.
std::string strip_notices(const std::string& input, int* count = nullptr) {
  std::string out;
  int n = 0;
  for (const auto& line : text::split_lines(input)) {
    if (line.rfind(kAbsentNotice, 0) == 0) {
      ++n;
      continue;
    }
    out += line + "\n";
  }
  if (count) *count = n;
  return std::string(text::trim(out));
}

struct Geometry {
  std::vector<Point2> bases;
  std::vector<Point2> targets;
  std::vector<double> links;
  int max_links = 3;
  bool assumed = false;
};

std::string join(const std::vector<std::string>& parts, std::string_view last_sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += (i + 1 == parts.size()) ? std::string(last_sep) : std::string(", ");
    out += parts[i];
  }
  return out;
}

std::string points_text(const std::vector<Point2>& ps, std::string_view last_sep = " and ") {
  std::vector<std::string> parts;
  for (const auto& p : ps) parts.push_back(format_point(p));
  return join(parts, last_sep);
}

std::string lengths_text(const std::vector<double>& ls) {
  std::vector<std::string> parts;
  for (double l : ls) parts.push_back(format_length(l) + " m");
  return join(parts, " and ");
}

std::string link_list(const std::vector<double>& ls) {
  std::vector<std::string> parts;
  for (double l : ls) parts.push_back(format_length(l));
  return "[" + text::join(parts, ", ") + "]";
}

// Reads bases, targets and link options from free prose: sentences are split
// at ". " so decimals stay intact.
Geometry geometry_from_prose(const std::string& prose) {
  Geometry g;
  std::string flat = prose;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  static const std::regex sentence_end(R"(\.\s+)");
  std::sregex_token_iterator it(flat.begin(), flat.end(), sentence_end, -1), end;
  for (; it != end; ++it) {
    const std::string s = *it;
    const std::string lower = text::to_lower(s);
    auto points = text::scan_points(s);
    if (!points.empty() && text::contains(lower, "base") && g.bases.empty()) {
      g.bases = points;
    } else if (!points.empty() && text::contains(lower, "target") && g.targets.empty()) {
      g.targets = points;
    }
    if (text::contains(lower, "length") && g.links.empty()) g.links = text::scan_lengths(s);
    static const std::regex at_most(R"(at most (\w+) links?)", std::regex::icase);
    std::smatch m;
    if (std::regex_search(s, m, at_most)) {
      if (auto n = text::scan_count(m[1].str())) g.max_links = *n;
    }
  }
  return g;
}

Geometry assumed_geometry() {
  Geometry g;
  g.bases = {{0.0, 0.0}};
  g.targets = {{0.5, 0.5}, {0.7, 0.2}, {0.3, 0.6}};
  g.links = {0.5, 0.7, 0.9};
  g.assumed = true;
  return g;
}

Geometry geometry_from_input(const std::string& input) {
  try {
    TaskAnalysisReport a = parse_task_analysis(input);
    Geometry g;
    g.bases = a.base_options;
    g.targets = a.targets;
    g.links = a.link_options;
    return g;
  } catch (const Error&) {
  }
  Geometry g = geometry_from_prose(input);
  if (g.bases.empty() || g.targets.empty() || g.links.empty()) return assumed_geometry();
  return g;
}

std::string words_for(std::size_t n) {
  static const char* words[] = {"zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};
  return n < std::size(words) ? words[n] : std::to_string(n);
}

std::optional<RobotDesign> careful_design(const Geometry& g) {
  try {
    return design_robots({g.bases, g.targets, g.links}, g.max_links, kDefaultDesignMargin);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<RobotDesign> hasty_design(const Geometry& g) {
  const double longest = *std::max_element(g.links.begin(), g.links.end());
  const Point2 base = g.bases.front();
  for (int k = 1; k <= g.max_links; ++k) {
    ArmConfiguration arm{std::vector<double>(static_cast<std::size_t>(k), longest), base};
    bool all = std::all_of(g.targets.begin(), g.targets.end(),
                           [&](const Point2& t) { return is_reachable(arm, t, 0.0); });
    if (!all) continue;
    RobotDesign d;
    d.targets = g.targets;
    RobotAssignment r{arm, {}};
    for (std::size_t i = 0; i < g.targets.size(); ++i) r.targets.push_back(i);
    d.robots.push_back(r);
    d.total_cost = arm.total_length();
    return d;
  }
  return careful_design(g);
}

std::string analyst_reply(const ChatRequest& request) {
  const std::string input = strip_notices(user_text(request));
  Geometry g = geometry_from_prose(input);
  if (g.bases.empty() || g.targets.empty() || g.links.empty()) g = assumed_geometry();
  std::size_t robots = 1;
  if (auto d = careful_design(g)) robots = d->robots.size();

  std::string out = "# Task Analysis Report\n\n";
  if (g.assumed) {
    out += "The description names the task but gives no positions or link lengths, so the values below are assumed "
           "for a small bench-top cell and should be confirmed.\n\n";
  }
  out += "All positions are expressed in one planar frame in meters, with the x axis to the right and the y axis "
         "forward, exactly as the coordinates are given.\n\n";
  out += "## 1. Number of Targets to be Reached\n\n";
  out += fmt::format("There are {} targets to be reached: {}.\n\n", words_for(g.targets.size()), points_text(g.targets));
  out += "## 2. Number of Robots to be Built\n\n";
  out += fmt::format("Robots to build: {}. Each robot needs its own base, and {} base location{} available.\n\n",
                     robots, words_for(g.bases.size()), g.bases.size() == 1 ? " is" : "s are");
  out += "## 3. Base Location Options\n\n";
  out += fmt::format("The base can be placed at {}.\n\n", points_text(g.bases, " or "));
  out += "## 4. Arm Link Length Options\n\n";
  out += fmt::format("Available link lengths are {}, kept exactly as specified. A length may be used more than once, "
                     "with at most {} links per arm.\n\n",
                     lengths_text(g.links), words_for(static_cast<std::size_t>(g.max_links)));
  out += "## 5. Arm Choices Information\n\n";
  out += "Each arm is a planar serial chain with revolute joints and no joint limits. The designer should pick the "
         "shortest combination of links whose reach covers every assigned target, keeping a small reserve so that no "
         "target sits at full extension.\n";
  return out;
}

std::string designer_reply(const ChatRequest& request, bool hasty) {
  int notices = 0;
  const std::string input = strip_notices(user_text(request), &notices);
  Geometry g = geometry_from_input(input);
  std::optional<RobotDesign> design = hasty ? hasty_design(g) : careful_design(g);

  std::string out = "# Robotic System Design Report\n\n";
  if (notices > 0) out += "The task analysis was not available, so the raw task description was analysed directly.\n\n";
  if (!design) {
    const double longest = *std::max_element(g.links.begin(), g.links.end());
    out += "## 1. Required Number of Robots\n\nRequired robots: 1.\n\n";
    out += fmt::format("## 2. Selected Base Location\n\nRobot 1 is mounted at {}.\n\n", format_point(g.bases.front()));
    out += "## 3. Design Decisions for Robotic Arms\n\nNo combination of the available links reaches every target "
           "with a safety reserve, so the longest admissible arm is proposed.\n\n";
    out += fmt::format("## 4. Final Robotic Arm Configuration\n\nRobot 1: links {} m\n\n",
                       link_list(std::vector<double>(static_cast<std::size_t>(g.max_links), longest)));
    out += "## 5. Summary\n\nThe task cannot be fully covered with the given options.\n";
    return out;
  }
  out += "## 1. Required Number of Robots\n\n";
  out += fmt::format("Required robots: {}.\n\n", design->robots.size());
  out += "## 2. Selected Base Location\n\n";
  for (std::size_t r = 0; r < design->robots.size(); ++r) {
    out += fmt::format("- Robot {} is mounted at {}.\n", r + 1, format_point(design->robots[r].arm.base));
  }
  out += "\n## 3. Design Decisions for Robotic Arms\n\n";
  for (std::size_t r = 0; r < design->robots.size(); ++r) {
    const auto& robot = design->robots[r];
    double farthest = 0.0;
    std::vector<Point2> served;
    for (std::size_t t : robot.targets) {
      served.push_back(design->targets[t]);
      farthest = std::max(farthest, distance(robot.arm.base, design->targets[t]));
    }
    ReachInterval reach = reach_interval(robot.arm.links);
    out += fmt::format("Robot {} serves {}. The farthest of these lies {:.3f} m from the base. ", r + 1,
                       points_text(served), farthest);
    if (hasty) {
      out += fmt::format("Using the longest available link throughout keeps the build simple and gives a reach "
                         "of {:.2f} m.\n\n", reach.max_reach);
    } else {
      out += fmt::format("Keeping a 5% reserve the arm needs at least {:.3f} m of reach; the chosen links give a "
                         "reach ring from {:.2f} m to {:.2f} m, the cheapest admissible combination.\n\n",
                         farthest * (1.0 + kDefaultDesignMargin), reach.min_reach, reach.max_reach);
    }
  }
  out += "## 4. Final Robotic Arm Configuration\n\n";
  for (std::size_t r = 0; r < design->robots.size(); ++r) {
    out += fmt::format("Robot {}: links {} m\n", r + 1, link_list(design->robots[r].arm.links));
  }
  out += "\n## 5. Summary\n\n";
  out += fmt::format("{} with a total link length of {:.2f} m {} all {} targets.\n",
                     design->robots.size() == 1 ? std::string("One robot")
                                                : fmt::format("{} robots", design->robots.size()),
                     design->total_cost, design->robots.size() == 1 ? "covers" : "cover", words_for(design->targets.size()));
  return out;
}

std::string rl_reply(const ChatRequest& request, bool hasty) {
  int notices = 0;
  const std::string input = strip_notices(user_text(request), &notices);
  std::vector<double> links{1.0, 1.0};
  Point2 base{0.0, 0.0};
  try {
    RobotDesignReport d = parse_robot_design(input);
    links = d.arm_configurations.front().links;
    base = d.selected_bases.front();
  } catch (const Error&) {
    Geometry g = geometry_from_input(input);
    if (auto d = careful_design(g)) {
      links = d->robots.front().arm.links;
      base = d->robots.front().arm.base;
    }
  }
  const std::string algorithm = hasty ? "SAC" : "PPO";
  const std::string links_py = [&] {
    std::vector<std::string> parts;
    for (double l : links) parts.push_back(format_length(l));
    return "[" + text::join(parts, ", ") + "]";
  }();

  std::string out = "# RL Design Report\n\n";
  if (notices > 0) out += "Some upstream reports were not available; the design below is inferred from the input text.\n\n";
  out += "## 1. Environment Design\n\n";
  out += fmt::format("Each robot is a planar arm with {} revolute joints mounted at {}. The observation holds the sine "
                     "and cosine of every cumulative joint angle, the tip-to-target offset and its length. One policy "
                     "is trained per robot and the active target changes every episode.\n\n",
                     links.size(), format_point(base));
  out += "## 2. Motor Motion Definition\n\n";
  out += "Actions are joint angular velocities limited to 1.0 rad/s and integrated with a 0.05 s time step. The "
         "reward is the negative tip distance, a small penalty on squared joint speed and a bonus of 10 on success.\n\n";
  out += "## 3. Reinforcement Learning Algorithm Selection\n\n";
  out += fmt::format("Algorithm: {}\n\n", algorithm);
  out += hasty ? "SAC handles continuous joint velocities and explores well through its entropy bonus.\n\n"
               : "PPO is stable on continuous joint-velocity control, needs little tuning and trains quickly for "
                 "short reaching episodes.\n\n";
  out += "## 4. Success and Failure Criteria\n\n";
  out += "An episode succeeds when the tip comes within 0.05 m of the active target. It fails when 100 steps pass "
         "without reaching it.\n\n";
  out += "## 5. Initial Conditions\n\n";
  out += "Every episode starts from the straight arm along the +x axis with up to 0.05 rad of uniform noise on each "
         "joint. Evaluation starts from the exact straight pose.\n\n";

  out += "**env.py**\n\n```python\n";
  out += "import numpy as np\n\n";
  out += fmt::format("LINKS = {}\nBASE = np.array([{}, {}])\n\n", links_py, format_length(base.x), format_length(base.y));
  out += R"(class ArmReachEnv:
    def __init__(self, targets, dt=0.05, max_steps=100, eps=0.05):
        self.targets = np.asarray(targets, dtype=float)
        self.dt, self.max_steps, self.eps = dt, max_steps, eps

    def tip(self, q):
        heading = np.cumsum(q)
        return BASE + np.array([np.sum(LINKS * np.cos(heading)), np.sum(LINKS * np.sin(heading))])

    def reset(self, target_index, rng):
        self.k = target_index
        self.q = np.zeros(len(LINKS)) if rng is None else rng.uniform(-0.05, 0.05, len(LINKS))
        self.steps = 0
        return self.observe()

    def observe(self):
        heading = np.cumsum(self.q)
        delta = self.targets[self.k] - self.tip(self.q)
        return np.concatenate([np.stack([np.sin(heading), np.cos(heading)], 1).ravel(), delta, [np.linalg.norm(delta)]])

    def step(self, action):
        a = np.clip(action, -1.0, 1.0)
        self.q = self.q + a * self.dt
        self.steps += 1
        d = np.linalg.norm(self.targets[self.k] - self.tip(self.q))
        done = d < self.eps or self.steps >= self.max_steps
        return self.observe(), -d - 0.01 * a @ a + (10.0 if d < self.eps else 0.0), done
```

)";
  out += "**train.py**\n\n```python\n";
  out += fmt::format("from env import LINKS, ArmReachEnv\nfrom agents import {}\n\n", algorithm);
  out += fmt::format(R"(def main(targets, episodes=300, seed=7):
    env = ArmReachEnv(targets)
    agent = {}(obs_dim=2 * len(LINKS) + 3, act_dim=len(LINKS), seed=seed)
    for episode in range(episodes):
        agent.run_episode(env, episode % len(targets))
    agent.save("policy.pt")
```

)", algorithm);
  out += "**eval.py**\n\n```python\n";
  out += R"(import matplotlib.pyplot as plt
from env import ArmReachEnv

def evaluate(agent, targets):
    env = ArmReachEnv(targets)
    for k in range(len(targets)):
        obs, done, path = env.reset(k, None), False, []
        while not done:
            obs, _, done = env.step(agent.act(obs, deterministic=True))
            path.append(env.tip(env.q))
        plt.plot(*zip(*path))
    plt.savefig("trajectories.png")
```

)";
  out += "```rlspec\n";
  out += fmt::format("algorithm: {}\nepisodes: 300\nmax_steps: 100\ndt: 0.05\nsuccess_epsilon: 0.05\n"
                     "action_limit: 1.0\nreward_weights: 1.0, 0.01, 10.0\nseed: 7\n",
                     algorithm);
  out += "```\n";
  return out;
}

}  // namespace

std::string stub_completion(const ChatRequest& request) {
  const bool hasty = request.model_id == kStubHasty;
  switch (detect_role(request)) {
    case Role::Analyst: return analyst_reply(request);
    case Role::Designer: return designer_reply(request, hasty);
    case Role::RLDesigner: return rl_reply(request, hasty);
    case Role::Unknown: break;
  }
  return "I can only act as the Task Analyst, Robot Designer or RL Designer.";
}

struct StubChatServer::Impl {
  httplib::Server server;
};

StubChatServer::StubChatServer() : impl_(std::make_unique<Impl>()) {
  impl_->server.Post(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
      res.status = 400;
      res.set_content(R"({"error":"invalid JSON"})", "application/json");
      return;
    }
    ChatRequest request;
    try {
      request = request_from_json(body);
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
      return;
    }
    const std::string content = stub_completion(request);
    nlohmann::json reply = {
        {"id", "stub"},
        {"object", "chat.completion"},
        {"model", request.model_id},
        {"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", content}}}, {"finish_reason", "stop"}}}},
        {"usage",
         {{"prompt_tokens", static_cast<int>(text::word_count(req.body))},
          {"completion_tokens", static_cast<int>(text::word_count(content))}}}};
    res.set_content(reply.dump(), "application/json");
  });
  port_ = impl_->server.bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw TransportError("stub server: cannot bind a local port");
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

StubChatServer::~StubChatServer() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

std::string StubChatServer::endpoint() const {
  return fmt::format("http://127.0.0.1:{}/v1/chat/completions", port_);
}

}  // namespace roboforge

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

#include <gtest/gtest.h>

#include <regex>

#include "reference_table.hpp"
#include "roboforge/error.hpp"
#include "roboforge/random.hpp"
#include "roboforge/scenario.hpp"
#include "roboforge/text.hpp"

namespace roboforge {
namespace {

TEST(Scenario, BuiltinsMatchReferenceTable) {
  const auto& s = builtin_scenarios();
  const auto& ref = reference::rows();
  ASSERT_EQ(s.size(), 10u);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    SCOPED_TRACE(ref[i].id);
    EXPECT_EQ(s[i].id, ref[i].id);
    EXPECT_EQ(s[i].title, ref[i].title);
    EXPECT_EQ(s[i].base_options, ref[i].bases);
    EXPECT_EQ(s[i].targets, ref[i].targets);
    EXPECT_EQ(s[i].link_options, ref[i].links);
    EXPECT_EQ(s[i].max_links_per_robot, 3);
    EXPECT_NO_THROW(validate_scenario(s[i]));
  }
}

TEST(Scenario, RowOneAndEight) {
  const auto& r1 = builtin_scenarios()[0];
  EXPECT_EQ(r1.title, "Rehabilitation Therapy");
  EXPECT_EQ(r1.base_options, (std::vector<Point2>{{0, 0}, {0.5, 0}}));
  const auto& r8 = builtin_scenarios()[7];
  EXPECT_EQ(r8.title, "Automobile Welding");
  EXPECT_EQ(r8.base_options, (std::vector<Point2>{{0, 0}, {1.2, 0.5}}));
  EXPECT_EQ(r8.link_options, (std::vector<double>{0.7, 0.9, 1.0}));
}

TEST(Scenario, FindById) {
  EXPECT_EQ(find_scenario("3")->title, "Elderly Feeding Assistance");
  EXPECT_TRUE(find_scenario("example").has_value());
  EXPECT_FALSE(find_scenario("11").has_value());
}

TEST(Scenario, SerializeParseRoundTrip) {
  for (const auto& s : builtin_scenarios()) EXPECT_EQ(parse_scenario(serialize_scenario(s)), s);
  EXPECT_EQ(parse_scenario(serialize_scenario(example_scenario())), example_scenario());
}

TEST(Scenario, RoundTripRandomized) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    TaskScenario s;
    s.id = "r" + std::to_string(trial);
    s.title = "Random task";
    s.description = "Reach the points.";
    auto pt = [&] { return Point2{rng.uniform(-5, 5), rng.uniform(-5, 5)}; };
    for (int i = 0, n = 1 + static_cast<int>(rng.next() % 3); i < n; ++i) s.base_options.push_back(pt());
    for (int i = 0, n = 1 + static_cast<int>(rng.next() % 5); i < n; ++i) s.targets.push_back(pt());
    for (int i = 0, n = 1 + static_cast<int>(rng.next() % 4); i < n; ++i) s.link_options.push_back(rng.uniform(0.01, 3));
    s.max_links_per_robot = 1 + static_cast<int>(rng.next() % 4);
    ASSERT_EQ(parse_scenario(serialize_scenario(s)), s);
  }
}

TEST(Scenario, ParseErrors) {
  const std::string ok = R"({"id":"x","title":"t","description":"d","base_options":[[0,0],[1,0]],
    "targets":[[1,1],[2,2],[0.5,0.5]],"link_options":[1.0],"max_links_per_robot":3})";
  auto s = parse_scenario(ok);
  EXPECT_EQ(s.base_options.size(), 2u);
  EXPECT_EQ(s.targets.size(), 3u);

  try {
    parse_scenario(R"({"id":"x","title":"t","description":"d","base_options":[[0,0]],"link_options":[1.0]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "targets: empty");
  }
  try {
    parse_scenario(R"({"id":"x","title":"t","description":"d","base_options":[[0,0]],"targets":[[1,1]],
      "link_options":[-0.5]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "link_options: must be > 0");
  }
  EXPECT_THROW(parse_scenario("{not json"), ParseError);
  try {
    parse_scenario(R"({"id":"x","title":"t","description":"d","base_options":[[0]],"targets":[[1,1]],
      "link_options":[1]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("base_options"), std::string::npos);
  }
  EXPECT_THROW(parse_scenario(R"({"id":"x","title":"t","description":"","base_options":[[0,0]],
    "targets":[[1,1]],"link_options":[1]})"),
               ValidationError);
}

TEST(Scenario, ShortDescription) {
  const auto& s = builtin_scenarios()[0];
  const std::string d = render_description(s, DescriptionLength::Short);
  EXPECT_LE(text::word_count(d), 20u);
  EXPECT_NE(d.find(s.title), std::string::npos);
  EXPECT_FALSE(std::regex_search(d, std::regex("[0-9]")));
}

TEST(Scenario, NormalDescriptionWordCountAndFacts) {
  for (const auto& s : builtin_scenarios()) {
    SCOPED_TRACE(s.id);
    const std::string d = render_description(s, DescriptionLength::Normal);
    const auto words = text::word_count(d);
    EXPECT_GE(words, 100u);
    EXPECT_LE(words, 150u);
    // Every coordinate and link option is recoverable from the prose.
    auto pts = text::scan_points(d);
    for (const auto& b : s.base_options) EXPECT_NE(std::find(pts.begin(), pts.end(), b), pts.end());
    for (const auto& t : s.targets) EXPECT_NE(std::find(pts.begin(), pts.end(), t), pts.end());
    auto lengths = text::scan_lengths(d);
    for (double l : s.link_options) EXPECT_NE(std::find(lengths.begin(), lengths.end(), l), lengths.end());
  }
}

TEST(Scenario, LongDescriptionExtendsNormal) {
  for (const auto& s : builtin_scenarios()) {
    const std::string normal = render_description(s, DescriptionLength::Normal);
    const std::string long_text = render_description(s, DescriptionLength::Long);
    EXPECT_GE(text::word_count(long_text), 250u) << s.id;
    EXPECT_NE(long_text.find(normal), std::string::npos) << s.id;
  }
}

TEST(Scenario, DescriptionLevelNames) {
  EXPECT_EQ(parse_description_length("LONG"), DescriptionLength::Long);
  EXPECT_EQ(to_string(DescriptionLength::Short), "short");
  EXPECT_FALSE(parse_description_length("medium").has_value());
}

}  // namespace
}  // namespace roboforge

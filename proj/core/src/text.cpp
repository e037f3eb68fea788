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

#include "roboforge/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <regex>
#include <sstream>

namespace roboforge {

std::string format_point(const Point2& p) {
  return fmt::format("({}, {})", p.x, p.y);
}

std::string format_length(double meters) {
  std::string s = fmt::format("{}", meters);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace text {
namespace {

const char* kNumber = R"([-+]?(?:\d+(?:\.\d*)?|\.\d+))";

double to_double(const std::string& s) { return std::stod(s); }

const std::regex& point_regex() {
  static const std::regex re(std::string(R"(\(\s*()") + kNumber +
                             R"()\s*m?\s*,\s*()" + kNumber + R"()\s*m?\s*\))");
  return re;
}

}  // namespace

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('\n', start);
    if (end == std::string_view::npos) end = s.size();
    std::string_view line = s.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (end == s.size()) break;
    start = end + 1;
  }
  if (!lines.empty() && lines.back().empty() && !s.empty() && s.back() == '\n') lines.pop_back();
  return lines;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      break;
    }
    parts.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::size_t word_count(std::string_view s) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : s) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

bool icontains(std::string_view haystack, std::string_view needle) {
  return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

std::string normalize_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\r') {
      out += '\n';
      if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::vector<Point2> scan_points(std::string_view s) {
  std::vector<Point2> points;
  std::string str(s);
  for (auto it = std::sregex_iterator(str.begin(), str.end(), point_regex());
       it != std::sregex_iterator(); ++it) {
    points.push_back({to_double((*it)[1].str()), to_double((*it)[2].str())});
  }
  return points;
}

std::vector<Point2> scan_bare_pairs(std::string_view s) {
  static const std::regex re(std::string("(") + kNumber + R"()\s*m?\s*,\s*()" + kNumber +
                             R"()(?![\d.]))");
  std::vector<Point2> points;
  std::string str(s);
  for (auto it = std::sregex_iterator(str.begin(), str.end(), re); it != std::sregex_iterator();
       ++it) {
    points.push_back({to_double((*it)[1].str()), to_double((*it)[2].str())});
  }
  return points;
}

std::vector<double> scan_lengths(std::string_view s) {
  static const std::regex re(std::string("(") + kNumber +
                             R"()\s*(?:m|meters?|metres?)(?![A-Za-z]))");
  std::string str = std::regex_replace(std::string(s), point_regex(), " ");
  std::vector<double> lengths;
  for (auto it = std::sregex_iterator(str.begin(), str.end(), re); it != std::sregex_iterator();
       ++it) {
    // Reject a match glued to a preceding identifier character ("x1m").
    auto pos = static_cast<std::size_t>(it->position(0));
    if (pos > 0 && (std::isalpha(static_cast<unsigned char>(str[pos - 1])) || str[pos - 1] == '_'))
      continue;
    lengths.push_back(to_double((*it)[1].str()));
  }
  return lengths;
}

std::vector<double> scan_numbers(std::string_view s) {
  static const std::regex re(kNumber);
  std::vector<double> numbers;
  std::string str(s);
  for (auto it = std::sregex_iterator(str.begin(), str.end(), re); it != std::sregex_iterator();
       ++it) {
    auto pos = static_cast<std::size_t>(it->position(0));
    if (pos > 0 && (std::isalpha(static_cast<unsigned char>(str[pos - 1])) || str[pos - 1] == '_'))
      continue;
    numbers.push_back(to_double(it->str()));
  }
  return numbers;
}

std::optional<int> scan_count(std::string_view s) {
  static const std::array<std::string_view, 21> kWords = {
      "zero",    "one",     "two",       "three",    "four",     "five",    "six",
      "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
      "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen", "twenty"};
  std::string lower = to_lower(s);
  std::size_t i = 0;
  while (i < lower.size()) {
    unsigned char c = static_cast<unsigned char>(lower[i]);
    if (std::isdigit(c)) {
      bool glued = i > 0 && (std::isalpha(static_cast<unsigned char>(lower[i - 1])) ||
                             lower[i - 1] == '.' || lower[i - 1] == '-');
      std::size_t j = i;
      while (j < lower.size() && std::isdigit(static_cast<unsigned char>(lower[j]))) ++j;
      bool decimal = j < lower.size() && lower[j] == '.' && j + 1 < lower.size() &&
                     std::isdigit(static_cast<unsigned char>(lower[j + 1]));
      if (!glued && !decimal) {
        int value = 0;
        std::from_chars(lower.data() + i, lower.data() + j, value);
        return value;
      }
      while (j < lower.size() &&
             (std::isdigit(static_cast<unsigned char>(lower[j])) || lower[j] == '.'))
        ++j;
      i = j;
    } else if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < lower.size() && std::isalpha(static_cast<unsigned char>(lower[j]))) ++j;
      std::string_view word(lower.data() + i, j - i);
      for (std::size_t w = 0; w < kWords.size(); ++w) {
        if (word == kWords[w]) return static_cast<int>(w);
      }
      i = j;
    } else {
      ++i;
    }
  }
  return std::nullopt;
}

}  // namespace text
}  // namespace roboforge

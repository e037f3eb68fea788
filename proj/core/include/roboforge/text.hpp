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

#ifndef ROBOFORGE_TEXT_HPP_
#define ROBOFORGE_TEXT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roboforge/geometry.hpp"

namespace roboforge::text {

std::string_view trim(std::string_view s);
std::string_view rtrim(std::string_view s);
std::string to_lower(std::string_view s);

// Splits on '\n'; a trailing '\r' is dropped from each line.
std::vector<std::string> split_lines(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Whitespace-delimited token count.
std::size_t word_count(std::string_view s);

bool contains(std::string_view haystack, std::string_view needle);
bool icontains(std::string_view haystack, std::string_view needle);

// Normalizes line endings to LF.
std::string normalize_newlines(std::string_view s);

// Signed-decimal pairs written as "(x, y)" or "[x, y]", optionally with an "m"
// suffix on either component.
std::vector<Point2> scan_points(std::string_view s);

// Fallback for "x, y" written without brackets: consecutive comma-separated
// decimal pairs.
std::vector<Point2> scan_bare_pairs(std::string_view s);

// Decimals carrying a meter suffix ("0.8m", "1.0 m", "2 meters"). Bracketed
// coordinate pairs are skipped.
std::vector<double> scan_lengths(std::string_view s);

// Every signed decimal in the text, in order.
std::vector<double> scan_numbers(std::string_view s);

// First cardinal count in the text: digits or a number word up to twenty.
std::optional<int> scan_count(std::string_view s);

}  // namespace roboforge::text

#endif  // ROBOFORGE_TEXT_HPP_

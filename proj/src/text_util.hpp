// Copyright 2026 The patrolnet Authors
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

#ifndef PATROLNET_SRC_TEXT_UTIL_HPP
#define PATROLNET_SRC_TEXT_UTIL_HPP

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "patrolnet/errors.hpp"

namespace patrolnet::detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_uint(std::string_view token, std::size_t line_no, std::string_view field) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || token.front() == '-' || ec != std::errc{} || ptr != end) {
    throw ParseError(line_no, fmt::format("bad {} \"{}\"", field, token));
  }
  return value;
}

inline double parse_real(std::string_view token, std::size_t line_no, std::string_view field) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(line_no, fmt::format("bad {} \"{}\"", field, token));
  }
  return value;
}

}  // namespace patrolnet::detail

#endif  // PATROLNET_SRC_TEXT_UTIL_HPP

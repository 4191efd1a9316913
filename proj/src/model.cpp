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

#include "patrolnet/model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "patrolnet/errors.hpp"
#include "text_util.hpp"

namespace patrolnet {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::size_t Dataset::point_count() const {
  std::size_t n = 0;
  for (const auto& traj : trajectories) n += traj.points.size();
  return n;
}

DatasetSummary summarize(const Dataset& dataset) {
  DatasetSummary summary;
  summary.trajectories = dataset.trajectories.size();
  summary.points = dataset.point_count();
  if (summary.points == 0) return summary;

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& traj : dataset.trajectories) {
    for (const auto& p : traj.points) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
  }
  summary.diameter = std::hypot(max_x - min_x, max_y - min_y);
  return summary;
}

Dataset parse_trajectories(std::istream& in) {
  Dataset dataset;
  std::unordered_map<std::uint32_t, std::size_t> slot;
  std::string line;
  std::size_t line_no = 0;
  std::size_t records = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    if (tokens.size() != 4) {
      throw ParseError(line_no, fmt::format("expected 4 fields (ID timestamp X Y), got {}",
                                            tokens.size()));
    }
    const auto id = detail::parse_uint<std::uint32_t>(tokens[0], line_no, "id");
    const auto t = detail::parse_uint<std::uint32_t>(tokens[1], line_no, "timestamp");
    const double x = detail::parse_real(tokens[2], line_no, "x");
    const double y = detail::parse_real(tokens[3], line_no, "y");

    auto [it, inserted] = slot.try_emplace(id, dataset.trajectories.size());
    if (inserted) dataset.trajectories.push_back(Trajectory{Rfid{id}, {}});
    auto& points = dataset.trajectories[it->second].points;

    const auto pos = std::lower_bound(
        points.begin(), points.end(), static_cast<Tick>(t),
        [](const TrajPoint& p, Tick tick) { return p.t < tick; });
    if (pos != points.end() && pos->t == static_cast<Tick>(t)) {
      throw ParseError(line_no, fmt::format("duplicate timestamp {} for id {}", t, id));
    }
    points.insert(pos, TrajPoint{static_cast<Tick>(t), x, y});
    ++records;
  }
  if (records == 0) throw ParseError(line_no, "no trajectory records");
  return dataset;
}

Dataset load_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  try {
    return parse_trajectories(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path.string(), e.detail()));
  }
}

void write_trajectories(std::ostream& out, const Dataset& dataset) {
  for (const auto& traj : dataset.trajectories) {
    for (const auto& p : traj.points) {
      out << fmt::format("{} {} {} {}\n", traj.id.value, p.t, p.x, p.y);
    }
  }
}

Registry parse_registry(std::istream& in) {
  Registry registry;
  std::string line;
  std::size_t line_no = 0;
  bool have_aggregator = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    if (!have_aggregator) {
      if (tokens.size() != 1) throw ParseError(line_no, "expected the aggregator id alone");
      registry.aggregator = Rfid{detail::parse_uint<std::uint32_t>(tokens[0], line_no, "id")};
      have_aggregator = true;
      continue;
    }
    if (tokens.size() > 2) throw ParseError(line_no, "expected \"officer_id [zone_id]\"");
    const Rfid officer{detail::parse_uint<std::uint32_t>(tokens[0], line_no, "officer id")};
    const int zone_id =
        tokens.size() == 2 ? detail::parse_uint<int>(tokens[1], line_no, "zone id") : 0;
    registry.officers.insert(officer);
    auto& zone = registry.zones[zone_id];
    zone.zone_id = zone_id;
    zone.officer_ids.insert(officer);
  }
  if (!have_aggregator) throw ParseError(line_no, "missing aggregator id");
  return registry;
}

Registry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  return parse_registry(in);
}

Classification classify_ids(std::span<const Rfid> requesting, const Registry& registry) {
  Classification out;
  for (const Rfid id : requesting) {
    (registry.is_officer(id) ? out.officers : out.criminals).push_back(id);
  }
  return out;
}

Point position_at(const Trajectory& trajectory, Tick t) {
  const auto& pts = trajectory.points;
  if (pts.empty() || t < pts.front().t || t > pts.back().t) {
    throw RangeError(fmt::format("tick {} outside trajectory {} span", t, trajectory.id.value));
  }
  const auto hi = std::lower_bound(pts.begin(), pts.end(), t,
                                   [](const TrajPoint& p, Tick tick) { return p.t < tick; });
  if (hi->t == t) return hi->position();
  const auto lo = std::prev(hi);
  const double f = static_cast<double>(t - lo->t) / static_cast<double>(hi->t - lo->t);
  return {lo->x + f * (hi->x - lo->x), lo->y + f * (hi->y - lo->y)};
}

double traj_distance(const Trajectory& a, const Trajectory& b, Tick t0, Tick t1) {
  if (t0 > t1) throw RangeError(fmt::format("empty window [{}, {}]", t0, t1));
  if (!a.covers(t0, t1) || !b.covers(t0, t1)) {
    throw RangeError(fmt::format("trajectories {} and {} do not both cover [{}, {}]",
                                 a.id.value, b.id.value, t0, t1));
  }
  double worst = 0.0;
  for (Tick t = t0; t <= t1; ++t) {
    worst = std::max(worst, distance(position_at(a, t), position_at(b, t)));
  }
  return worst;
}

Trajectory trim(const Trajectory& trajectory, Tick t0, Tick t1) {
  Trajectory out{trajectory.id, {}};
  const Point first = position_at(trajectory, t0);
  const Point last = position_at(trajectory, t1);
  out.points.push_back({t0, first.x, first.y});
  for (const auto& p : trajectory.points) {
    if (p.t > t0 && p.t < t1) out.points.push_back(p);
  }
  if (t1 > t0) out.points.push_back({t1, last.x, last.y});
  return out;
}

}  // namespace patrolnet

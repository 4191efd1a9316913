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

#ifndef PATROLNET_MODEL_HPP
#define PATROLNET_MODEL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace patrolnet {

/// Integer timestamp. Trajectory files carry ticks, never fractional time.
using Tick = std::int64_t;

/// RFID tag identity of an officer, a criminal or the commissioner.
struct Rfid {
  std::uint32_t value = 0;

  friend auto operator<=>(const Rfid&, const Rfid&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

struct TrajPoint {
  Tick t = 0;
  double x = 0.0;
  double y = 0.0;

  Point position() const { return {x, y}; }
  friend bool operator==(const TrajPoint&, const TrajPoint&) = default;
};

/// Time-ordered track of one tag. Points are strictly increasing in `t`.
struct Trajectory {
  Rfid id;
  std::vector<TrajPoint> points;

  Tick start_tick() const { return points.front().t; }
  Tick end_tick() const { return points.back().t; }
  bool covers(Tick t0, Tick t1) const {
    return !points.empty() && start_tick() <= t0 && t1 <= end_tick();
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Trajectories keyed by unique id, kept in first-appearance order.
struct Dataset {
  std::vector<Trajectory> trajectories;

  std::size_t point_count() const;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Headline numbers printed when a dataset is loaded. `diameter` is the
/// diagonal of the bounding box of every point.
struct DatasetSummary {
  std::size_t trajectories = 0;
  std::size_t points = 0;
  double diameter = 0.0;
};

DatasetSummary summarize(const Dataset& dataset);

struct Zone {
  int zone_id = 0;
  std::set<Rfid> officer_ids;
};

/// Officers known to the commissioner in advance, grouped into zones.
struct Registry {
  Rfid aggregator;
  std::set<Rfid> officers;
  std::map<int, Zone> zones;

  bool is_officer(Rfid id) const { return officers.contains(id); }
};

struct Classification {
  std::vector<Rfid> officers;
  std::vector<Rfid> criminals;
};

/// Reads "ID timestamp X Y" lines. '#' lines and blank lines are skipped.
/// Throws ParseError on a bad token count, bad number, duplicate (id, t)
/// or an input with no records.
Dataset parse_trajectories(std::istream& in);
Dataset load_trajectories(const std::filesystem::path& path);
void write_trajectories(std::ostream& out, const Dataset& dataset);

/// First non-comment line is the aggregator id; every later line is
/// "officer_id [zone_id]" with zone 0 when omitted.
Registry parse_registry(std::istream& in);
Registry load_registry(const std::filesystem::path& path);

/// Splits ids into registered officers and everyone else, preserving order.
Classification classify_ids(std::span<const Rfid> requesting,
                            const Registry& registry);

/// Linear interpolation between the samples bracketing `t`.
/// Throws RangeError outside [start_tick, end_tick].
Point position_at(const Trajectory& trajectory, Tick t);

/// Largest Euclidean gap between the two tracks over every integer tick of
/// [t0, t1]. Throws RangeError unless both cover the window.
double traj_distance(const Trajectory& a, const Trajectory& b, Tick t0,
                     Tick t1);

/// Restricts a trajectory to [t0, t1], inserting interpolated endpoints
/// when the bounds are not sampled.
Trajectory trim(const Trajectory& trajectory, Tick t0, Tick t1);

}  // namespace patrolnet

#endif  // PATROLNET_MODEL_HPP

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

#include "patrolnet/aggregator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>

#include "patrolnet/errors.hpp"
#include "text_util.hpp"

namespace patrolnet {
namespace {

Trajectory as_trajectory(const Report& r) { return Trajectory{r.criminal, r.segment}; }

// Worst synchronized distance on the shared ticks; nullopt when the spans
// do not overlap.
std::optional<double> overlap_distance(const Report& a, const Report& b) {
  const Tick lo = std::max(a.segment.front().t, b.segment.front().t);
  const Tick hi = std::min(a.segment.back().t, b.segment.back().t);
  if (lo > hi) return std::nullopt;
  return traj_distance(as_trajectory(a), as_trajectory(b), lo, hi);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool segments_merge(const Report& a, const Report& b, const DedupParams& params) {
  const Report& early = a.segment.front().t <= b.segment.front().t ? a : b;
  const Report& late = &early == &a ? b : a;
  const Tick gap = late.segment.front().t - early.segment.back().t;
  if (gap > params.tau) return false;
  if (const auto d = overlap_distance(a, b)) return *d <= params.epsilon;
  return distance(early.segment.back().position(), late.segment.front().position()) <=
         params.epsilon;
}

std::vector<SummarySegment> dedupe(std::span<const Report> reports, const DedupParams& params) {
  std::map<std::pair<int, Rfid>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].segment.empty()) throw Error("report with an empty segment");
    groups[{reports[i].zone_id, reports[i].criminal}].push_back(i);
  }

  std::vector<SummarySegment> out;
  for (const auto& [key, members] : groups) {
    DisjointSets sets(members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (segments_merge(reports[members[a]], reports[members[b]], params)) sets.unite(a, b);
      }
    }
    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t a = 0; a < members.size(); ++a) components[sets.find(a)].push_back(members[a]);

    for (const auto& [root, component] : components) {
      std::size_t medoid = component.front();
      double best = std::numeric_limits<double>::infinity();
      for (const std::size_t c : component) {
        double worst = 0.0;
        for (const std::size_t o : component) {
          if (o == c) continue;
          if (const auto d = overlap_distance(reports[c], reports[o])) worst = std::max(worst, *d);
        }
        if (worst < best) {
          best = worst;
          medoid = c;
        }
      }

      SummarySegment summary;
      summary.criminal = key.second;
      summary.zone_id = key.first;
      summary.representative = reports[medoid].segment;
      summary.support = component.size();
      summary.first_tick = std::numeric_limits<Tick>::max();
      summary.last_tick = std::numeric_limits<Tick>::min();
      for (const std::size_t c : component) {
        summary.officers.insert(reports[c].officer);
        summary.first_tick = std::min(summary.first_tick, reports[c].segment.front().t);
        summary.last_tick = std::max(summary.last_tick, reports[c].segment.back().t);
      }
      out.push_back(std::move(summary));
    }
  }
  return out;
}

std::vector<SummarySegment> aggregate_zone(const Zone& zone, std::span<const Report> reports,
                                           const DedupParams& params) {
  std::vector<std::string> foreign;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].zone_id != zone.zone_id) {
      foreign.push_back(fmt::format("#{} (officer {}, zone {})", i, reports[i].officer.value,
                                    reports[i].zone_id));
    }
  }
  if (!foreign.empty()) {
    throw ForeignZoneError(fmt::format("reports outside zone {}: {}", zone.zone_id,
                                       fmt::join(foreign, ", ")));
  }
  auto summaries = dedupe(reports, params);
  std::stable_sort(summaries.begin(), summaries.end(),
                   [](const SummarySegment& a, const SummarySegment& b) {
                     return std::pair(a.criminal, a.first_tick) < std::pair(b.criminal, b.first_tick);
                   });
  return summaries;
}

std::vector<Report> reports_from_upload(const Dataset& upload, const Registry& registry,
                                        int zone_id, Tick received_tick) {
  const auto zone = registry.zones.find(zone_id);
  std::optional<Rfid> officer;
  for (const auto& traj : upload.trajectories) {
    if (zone != registry.zones.end() && zone->second.officer_ids.contains(traj.id)) {
      officer = traj.id;
      break;
    }
  }
  if (!officer) throw Error(fmt::format("upload carries no officer of zone {}", zone_id));

  std::vector<Report> out;
  for (const auto& traj : upload.trajectories) {
    if (registry.is_officer(traj.id) || traj.id == registry.aggregator) continue;
    out.push_back(Report{*officer, zone_id, traj.id, traj.points, received_tick});
  }
  return out;
}

std::string serialize_report(const Report& report) {
  std::string out = fmt::format("{} {} {}\n", report.officer.value, report.zone_id,
                                report.criminal.value);
  for (const auto& p : report.segment) {
    out += fmt::format("{} {} {} {}\n", report.criminal.value, p.t, p.x, p.y);
  }
  return out;
}

Report parse_report(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  Report report;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 3) throw ParseError(line_no, "expected \"officer zone criminal\"");
      report.officer = Rfid{detail::parse_uint<std::uint32_t>(tokens[0], line_no, "officer")};
      report.zone_id = detail::parse_uint<int>(tokens[1], line_no, "zone");
      report.criminal = Rfid{detail::parse_uint<std::uint32_t>(tokens[2], line_no, "criminal")};
      have_header = true;
      continue;
    }
    if (tokens.size() != 4) throw ParseError(line_no, "expected \"ID timestamp X Y\"");
    const auto id = detail::parse_uint<std::uint32_t>(tokens[0], line_no, "id");
    if (id != report.criminal.value) throw ParseError(line_no, "segment id differs from header");
    const Tick t = detail::parse_uint<std::uint32_t>(tokens[1], line_no, "timestamp");
    if (!report.segment.empty() && t <= report.segment.back().t) {
      throw ParseError(line_no, "segment ticks must increase");
    }
    report.segment.push_back({t, detail::parse_real(tokens[2], line_no, "x"),
                              detail::parse_real(tokens[3], line_no, "y")});
  }
  if (!have_header) throw ParseError(line_no, "empty report");
  if (report.segment.empty()) throw ParseError(line_no, "report has no segment points");
  return report;
}

}  // namespace patrolnet

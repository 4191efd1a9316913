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

#ifndef PATROLNET_AGGREGATOR_HPP
#define PATROLNET_AGGREGATOR_HPP

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patrolnet/model.hpp"

namespace patrolnet {

/// An officer's sighting of one criminal.
struct Report {
  Rfid officer;
  int zone_id = 0;
  Rfid criminal;
  std::vector<TrajPoint> segment;  ///< non-empty, strictly increasing ticks
  Tick received_tick = 0;

  friend bool operator==(const Report&, const Report&) = default;
};

/// One retained copy standing for a group of nearly overlapping reports.
struct SummarySegment {
  Rfid criminal;
  int zone_id = 0;
  std::vector<TrajPoint> representative;
  std::size_t support = 0;
  std::set<Rfid> officers;
  Tick first_tick = 0;  ///< earliest tick over every merged report
  Tick last_tick = 0;   ///< latest tick over every merged report
};

struct DedupParams {
  double epsilon = 0.001;  ///< spatial tolerance
  Tick tau = 5;            ///< temporal tolerance in ticks
};

/// Merge predicate for two reports of the same criminal. Their tick spans
/// must lie within tau of each other. Where the spans overlap, the largest
/// synchronized distance on the overlap must be at most epsilon; where they
/// do not, the end of the earlier segment and the start of the later one
/// must be within epsilon.
bool segments_merge(const Report& a, const Report& b, const DedupParams& params);

/// Groups reports by (zone, criminal), merges them by the transitive
/// closure of segments_merge and keeps one summary per merge group. The
/// representative is the group's medoid: the member segment whose worst
/// synchronized distance to the other members is smallest.
std::vector<SummarySegment> dedupe(std::span<const Report> reports, const DedupParams& params);

/// dedupe restricted to one zone, sorted by criminal id then first tick.
/// Throws ForeignZoneError naming every report filed under another zone.
std::vector<SummarySegment> aggregate_zone(const Zone& zone, std::span<const Report> reports,
                                           const DedupParams& params);

/// Builds one report per unregistered id found in an officer's upload. The
/// uploading officer is the first registered id of the zone in the file.
/// Throws Error when the file carries no officer of the zone.
std::vector<Report> reports_from_upload(const Dataset& upload, const Registry& registry,
                                        int zone_id, Tick received_tick);

/// Wire text: "officer zone criminal" then "ID timestamp X Y" lines.
std::string serialize_report(const Report& report);
/// Throws ParseError on a malformed header or segment line.
Report parse_report(std::string_view text);

}  // namespace patrolnet

#endif  // PATROLNET_AGGREGATOR_HPP

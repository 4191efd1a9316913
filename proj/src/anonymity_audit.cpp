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

#include "patrolnet/anonymity_audit.hpp"

#include <fmt/format.h>

#include <map>
#include <set>

namespace patrolnet {

std::vector<std::string> audit_anonymity(const AnonymizedDataset& result,
                                         const AnonParams& params) {
  std::vector<std::string> issues;
  std::set<Rfid> seen;
  std::size_t clustered = 0;

  for (const auto& cluster : result.clusters) {
    const auto& w = cluster.window;
    const auto tag = fmt::format("cluster pivot {} [{}, {}]", cluster.pivot.value, w.begin, w.end);
    if (cluster.members.size() < params.k) {
      issues.push_back(fmt::format("{}: {} members < k={}", tag, cluster.members.size(), params.k));
    }
    if (w.begin % params.pi != 0 || w.end % params.pi != 0 || w.begin >= w.end) {
      issues.push_back(fmt::format("{}: window not aligned to pi={}", tag, params.pi));
    }
    bool shape_ok = true;
    for (const auto& m : cluster.members) {
      ++clustered;
      if (!seen.insert(m.id).second) issues.push_back(fmt::format("{}: id {} published twice", tag, m.id.value));
      if (m.points.size() != static_cast<std::size_t>(w.ticks())) {
        shape_ok = false;
      } else {
        for (std::size_t i = 0; i < m.points.size(); ++i) {
          if (m.points[i].t != w.begin + static_cast<Tick>(i)) shape_ok = false;
        }
      }
    }
    if (!shape_ok) {
      issues.push_back(fmt::format("{}: member points do not match window ticks", tag));
      continue;
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(w.ticks()); ++i) {
      for (std::size_t a = 0; a < cluster.members.size(); ++a) {
        for (std::size_t b = a + 1; b < cluster.members.size(); ++b) {
          const double d = distance(cluster.members[a].points[i].position(),
                                    cluster.members[b].points[i].position());
          if (d > params.delta + kAuditTolerance) {
            issues.push_back(fmt::format("{}: ids {} and {} are {} apart at tick {} (> delta {})",
                                         tag, cluster.members[a].id.value,
                                         cluster.members[b].id.value, d,
                                         w.begin + static_cast<Tick>(i), params.delta));
          }
        }
      }
    }
  }

  const std::size_t classed = clustered + result.trash.size();
  if (classed > 0) {
    const double fraction = static_cast<double>(result.trash.size()) / static_cast<double>(classed);
    if (fraction > params.trash_max + kAuditTolerance) {
      issues.push_back(fmt::format("trash fraction {:.4f} exceeds trash_max {:.4f}", fraction,
                                   params.trash_max));
    }
  }
  return issues;
}

std::vector<std::string> audit_displacement(const AnonymizedDataset& result,
                                            const Dataset& original, const AnonParams& params) {
  std::vector<std::string> issues;
  std::map<Rfid, const Trajectory*> by_id;
  for (const auto& t : original.trajectories) by_id[t.id] = &t;

  for (const auto& cluster : result.clusters) {
    const double allowed = cluster.radius + params.delta / 2.0 + kAuditTolerance;
    for (const auto& m : cluster.members) {
      const auto it = by_id.find(m.id);
      if (it == by_id.end()) {
        issues.push_back(fmt::format("published id {} not in the input", m.id.value));
        continue;
      }
      for (const auto& p : m.points) {
        const double d = distance(p.position(), position_at(*it->second, p.t));
        if (d > allowed) {
          issues.push_back(fmt::format("id {} tick {} displaced {} > {}", m.id.value, p.t, d,
                                       allowed));
        }
      }
    }
  }
  return issues;
}

}  // namespace patrolnet

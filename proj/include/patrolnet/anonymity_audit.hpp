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

#ifndef PATROLNET_ANONYMITY_AUDIT_HPP
#define PATROLNET_ANONYMITY_AUDIT_HPP

#include <string>
#include <vector>

#include "patrolnet/anonymizer.hpp"
#include "patrolnet/model.hpp"

namespace patrolnet {

/// Slack allowed on distance comparisons after floating-point jitter.
inline constexpr double kAuditTolerance = 1e-9;

/// Checks published output against the anonymity guarantees using nothing
/// but the output itself (and, for displacement, the original input):
///  - each cluster has at least k members and aligned window ends,
///  - every member has exactly one point per window tick,
///  - at every tick all members lie within distance delta of each other,
///  - the clustering discard fraction respects trash_max,
///  - published ids are unique.
/// Returns human-readable violations; empty means the output passed.
std::vector<std::string> audit_anonymity(const AnonymizedDataset& result,
                                         const AnonParams& params);

/// Every published point lies within (cluster radius + delta / 2) of the
/// original member's interpolated position at that tick.
std::vector<std::string> audit_displacement(const AnonymizedDataset& result,
                                            const Dataset& original, const AnonParams& params);

}  // namespace patrolnet

#endif  // PATROLNET_ANONYMITY_AUDIT_HPP

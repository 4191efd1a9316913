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

#ifndef PATROLNET_PATTERN_REPO_HPP
#define PATROLNET_PATTERN_REPO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "patrolnet/aggregator.hpp"
#include "patrolnet/model.hpp"

namespace patrolnet {

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(const Point& p) const {
    return min_x <= p.x && p.x <= max_x && min_y <= p.y && p.y <= max_y;
  }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Summarized incident: who, which occurrence, where and when.
struct PatternRecord {
  Rfid criminal;
  std::size_t crime_number = 0;
  int zone_id = 0;
  Tick first_tick = 0;
  Tick last_tick = 0;
  BoundingBox region;
  Point centroid;

  friend bool operator==(const PatternRecord&, const PatternRecord&) = default;
};

/// Append-only record store with per-criminal and per-zone indices.
///
/// When bound to a file, every store rewrites the file through a temporary
/// and a rename, so a batch is either fully persisted or not at all. A
/// failed write leaves the in-memory state untouched. Writers are
/// serialized; readers take a shared lock and receive copies.
class Repository {
 public:
  /// In-memory only.
  Repository();
  /// Bound to `path`; loads it when it exists. Throws ParseError naming
  /// the first corrupt line.
  explicit Repository(std::filesystem::path path);

  Repository(Repository&&) noexcept;
  Repository& operator=(Repository&&) noexcept;
  ~Repository();

  /// Appends a batch. crime_numbers must continue each criminal's count
  /// without gaps (ParameterError otherwise). `batch_hash`, when given, is
  /// persisted for replay detection. Throws PersistenceError when the file
  /// cannot be written.
  void store(std::span<const PatternRecord> records,
             std::optional<std::uint64_t> batch_hash = std::nullopt);

  std::vector<PatternRecord> records() const;
  std::size_t size() const;
  std::size_t crime_count(Rfid criminal) const;
  bool has_batch(std::uint64_t batch_hash) const;
  const std::optional<std::filesystem::path>& path() const { return path_; }

  std::vector<PatternRecord> by_criminal(Rfid criminal) const;
  std::vector<PatternRecord> by_zone(int zone_id) const;
  std::vector<PatternRecord> in_window(Tick t0, Tick t1) const;

 private:
  void index(const PatternRecord& record, std::size_t position);
  void persist(const std::vector<PatternRecord>& records,
               const std::vector<std::pair<std::size_t, std::uint64_t>>& batches) const;

  std::optional<std::filesystem::path> path_;
  std::vector<PatternRecord> records_;
  std::map<Rfid, std::vector<std::size_t>> by_criminal_;
  std::map<int, std::vector<std::size_t>> by_zone_;
  // (record count when the batch landed, hash)
  std::vector<std::pair<std::size_t, std::uint64_t>> batches_;
  std::unique_ptr<std::shared_mutex> mutex_;
};

/// One record per summary, numbering each criminal's incidents on from the
/// count already stored.
std::vector<PatternRecord> identify_pattern(const Zone& zone,
                                            std::span<const SummarySegment> summaries,
                                            const Repository& repo);

struct ByCriminal {
  Rfid id;
};
struct ByZone {
  int zone_id = 0;
};
struct CountCrimes {
  Rfid id;
};
/// Records whose [first_tick, last_tick] intersects [t0, t1].
struct InWindow {
  Tick t0 = 0;
  Tick t1 = 0;
};

using Query = std::variant<ByCriminal, ByZone, CountCrimes, InWindow>;
using QueryResult = std::variant<std::vector<PatternRecord>, std::size_t>;

/// Answers from the repository indices alone. Record lists are ordered by
/// crime_number, then criminal id, then storage order.
QueryResult query(const Repository& repo, const Query& q);

/// FNV-1a over the given byte strings, each followed by a 0 separator.
std::uint64_t batch_fingerprint(std::span<const std::string> parts);

}  // namespace patrolnet

#endif  // PATROLNET_PATTERN_REPO_HPP

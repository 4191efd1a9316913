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

#include "patrolnet/pattern_repo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <limits>
#include <mutex>
#include <system_error>

#include "patrolnet/errors.hpp"
#include "text_util.hpp"

namespace patrolnet {
namespace {

constexpr std::string_view kHeader = "# patrolnet pattern repository";

std::string format_record(const PatternRecord& r) {
  return fmt::format("{} {} {} {} {} {} {} {} {} {} {}", r.criminal.value, r.crime_number,
                     r.zone_id, r.first_tick, r.last_tick, r.region.min_x, r.region.min_y,
                     r.region.max_x, r.region.max_y, r.centroid.x, r.centroid.y);
}

std::vector<PatternRecord> sorted(std::vector<PatternRecord> records,
                                  const std::vector<std::size_t>& positions) {
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (record, position)
  for (std::size_t i = 0; i < records.size(); ++i) order.emplace_back(i, positions[i]);
  std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    const auto& ra = records[a.first];
    const auto& rb = records[b.first];
    return std::tie(ra.crime_number, ra.criminal, a.second) <
           std::tie(rb.crime_number, rb.criminal, b.second);
  });
  std::vector<PatternRecord> out;
  out.reserve(records.size());
  for (const auto& [i, pos] : order) out.push_back(std::move(records[i]));
  return out;
}

}  // namespace

Repository::Repository() : mutex_(std::make_unique<std::shared_mutex>()) {}

Repository::Repository(std::filesystem::path path)
    : path_(std::move(path)), mutex_(std::make_unique<std::shared_mutex>()) {
  std::ifstream in(*path_);
  if (!in) return;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    if (tokens.front() == "batch") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected \"batch HASH\"");
      std::uint64_t hash = 0;
      const auto [ptr, ec] =
          std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), hash, 16);
      if (ec != std::errc{} || ptr != tokens[1].data() + tokens[1].size()) {
        throw ParseError(line_no, fmt::format("bad batch hash \"{}\"", tokens[1]));
      }
      batches_.emplace_back(records_.size(), hash);
      continue;
    }
    if (tokens.size() != 11) {
      throw ParseError(line_no, fmt::format("expected 11 record fields, got {}", tokens.size()));
    }
    PatternRecord r;
    r.criminal = Rfid{detail::parse_uint<std::uint32_t>(tokens[0], line_no, "criminal")};
    r.crime_number = detail::parse_uint<std::size_t>(tokens[1], line_no, "crime_number");
    r.zone_id = detail::parse_uint<int>(tokens[2], line_no, "zone");
    r.first_tick = detail::parse_uint<Tick>(tokens[3], line_no, "first tick");
    r.last_tick = detail::parse_uint<Tick>(tokens[4], line_no, "last tick");
    r.region = {detail::parse_real(tokens[5], line_no, "min_x"),
                detail::parse_real(tokens[6], line_no, "min_y"),
                detail::parse_real(tokens[7], line_no, "max_x"),
                detail::parse_real(tokens[8], line_no, "max_y")};
    r.centroid = {detail::parse_real(tokens[9], line_no, "centroid x"),
                  detail::parse_real(tokens[10], line_no, "centroid y")};
    if (r.first_tick > r.last_tick) throw ParseError(line_no, "window ends before it starts");
    const auto known = by_criminal_.find(r.criminal);
    const std::size_t expected = known == by_criminal_.end() ? 1 : known->second.size() + 1;
    if (r.crime_number != expected) {
      throw ParseError(line_no, fmt::format("crime_number {} for criminal {}, expected {}",
                                            r.crime_number, r.criminal.value, expected));
    }
    index(r, records_.size());
    records_.push_back(r);
  }
}

Repository::Repository(Repository&&) noexcept = default;
Repository& Repository::operator=(Repository&&) noexcept = default;
Repository::~Repository() = default;

void Repository::index(const PatternRecord& record, std::size_t position) {
  by_criminal_[record.criminal].push_back(position);
  by_zone_[record.zone_id].push_back(position);
}

void Repository::persist(const std::vector<PatternRecord>& records,
                         const std::vector<std::pair<std::size_t, std::uint64_t>>& batches) const {
  const std::filesystem::path tmp = path_->string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw PersistenceError(fmt::format("cannot write {}", tmp.string()));
    out << kHeader << '\n';
    std::size_t next_batch = 0;
    for (std::size_t i = 0; i <= records.size(); ++i) {
      while (next_batch < batches.size() && batches[next_batch].first == i) {
        out << fmt::format("batch {:016x}\n", batches[next_batch].second);
        ++next_batch;
      }
      if (i < records.size()) out << format_record(records[i]) << '\n';
    }
    out.flush();
    if (!out) throw PersistenceError(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, *path_, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw PersistenceError(fmt::format("cannot replace {}", path_->string()));
  }
}

void Repository::store(std::span<const PatternRecord> records,
                       std::optional<std::uint64_t> batch_hash) {
  std::unique_lock lock(*mutex_);
  std::map<Rfid, std::size_t> counts;
  for (const auto& r : records) {
    auto [it, inserted] = counts.try_emplace(r.criminal, 0);
    if (inserted) {
      const auto known = by_criminal_.find(r.criminal);
      it->second = known == by_criminal_.end() ? 0 : known->second.size();
    }
    if (r.crime_number != ++it->second) {
      throw ParameterError(fmt::format("crime_number {} for criminal {}, expected {}",
                                       r.crime_number, r.criminal.value, it->second));
    }
  }

  auto next_records = records_;
  next_records.insert(next_records.end(), records.begin(), records.end());
  auto next_batches = batches_;
  if (batch_hash) next_batches.emplace_back(next_records.size(), *batch_hash);
  if (path_) persist(next_records, next_batches);

  for (std::size_t i = records_.size(); i < next_records.size(); ++i) index(next_records[i], i);
  records_ = std::move(next_records);
  batches_ = std::move(next_batches);
}

std::vector<PatternRecord> Repository::records() const {
  std::shared_lock lock(*mutex_);
  return records_;
}

std::size_t Repository::size() const {
  std::shared_lock lock(*mutex_);
  return records_.size();
}

std::size_t Repository::crime_count(Rfid criminal) const {
  std::shared_lock lock(*mutex_);
  const auto it = by_criminal_.find(criminal);
  return it == by_criminal_.end() ? 0 : it->second.size();
}

bool Repository::has_batch(std::uint64_t batch_hash) const {
  std::shared_lock lock(*mutex_);
  return std::any_of(batches_.begin(), batches_.end(),
                     [&](const auto& b) { return b.second == batch_hash; });
}

std::vector<PatternRecord> Repository::by_criminal(Rfid criminal) const {
  std::shared_lock lock(*mutex_);
  const auto it = by_criminal_.find(criminal);
  if (it == by_criminal_.end()) return {};
  std::vector<PatternRecord> out;
  for (const std::size_t pos : it->second) out.push_back(records_[pos]);
  return sorted(std::move(out), it->second);
}

std::vector<PatternRecord> Repository::by_zone(int zone_id) const {
  std::shared_lock lock(*mutex_);
  const auto it = by_zone_.find(zone_id);
  if (it == by_zone_.end()) return {};
  std::vector<PatternRecord> out;
  for (const std::size_t pos : it->second) out.push_back(records_[pos]);
  return sorted(std::move(out), it->second);
}

std::vector<PatternRecord> Repository::in_window(Tick t0, Tick t1) const {
  std::shared_lock lock(*mutex_);
  std::vector<PatternRecord> out;
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].first_tick <= t1 && t0 <= records_[i].last_tick) {
      out.push_back(records_[i]);
      positions.push_back(i);
    }
  }
  return sorted(std::move(out), positions);
}

std::vector<PatternRecord> identify_pattern(const Zone& zone,
                                            std::span<const SummarySegment> summaries,
                                            const Repository& repo) {
  std::map<Rfid, std::size_t> counts;
  std::vector<PatternRecord> out;
  for (const auto& s : summaries) {
    auto [it, inserted] = counts.try_emplace(s.criminal, 0);
    if (inserted) it->second = repo.crime_count(s.criminal);

    PatternRecord r;
    r.criminal = s.criminal;
    r.crime_number = ++it->second;
    r.zone_id = zone.zone_id;
    r.first_tick = s.first_tick;
    r.last_tick = s.last_tick;
    r.region = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
    for (const auto& p : s.representative) {
      r.region.min_x = std::min(r.region.min_x, p.x);
      r.region.min_y = std::min(r.region.min_y, p.y);
      r.region.max_x = std::max(r.region.max_x, p.x);
      r.region.max_y = std::max(r.region.max_y, p.y);
      r.centroid.x += p.x;
      r.centroid.y += p.y;
    }
    const auto n = static_cast<double>(s.representative.size());
    r.centroid.x /= n;
    r.centroid.y /= n;
    out.push_back(r);
  }
  return out;
}

QueryResult query(const Repository& repo, const Query& q) {
  return std::visit(
      [&](const auto& v) -> QueryResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ByCriminal>) {
          return repo.by_criminal(v.id);
        } else if constexpr (std::is_same_v<T, ByZone>) {
          return repo.by_zone(v.zone_id);
        } else if constexpr (std::is_same_v<T, CountCrimes>) {
          return repo.crime_count(v.id);
        } else {
          return repo.in_window(v.t0, v.t1);
        }
      },
      q);
}

std::uint64_t batch_fingerprint(std::span<const std::string> parts) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](unsigned char byte) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  };
  for (const auto& part : parts) {
    for (const char c : part) feed(static_cast<unsigned char>(c));
    feed(0);
  }
  return hash;
}

}  // namespace patrolnet

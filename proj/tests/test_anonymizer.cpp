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


#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "doctest.h"
#include "oracles.hpp"
#include "patrolnet/anonymity_audit.hpp"
#include "patrolnet/anonymizer.hpp"
#include "patrolnet/errors.hpp"

using namespace patrolnet;

namespace {

const std::filesystem::path kData = PATROLNET_DATA_DIR;

Trajectory track(std::uint32_t id, Tick t0, Tick t1, double x, double y, double vx = 0.01) {
  Trajectory t{Rfid{id}, {}};
  for (Tick s = t0; s <= t1; ++s) t.points.push_back({s, x + vx * double(s), y});
  return t;
}

AnonParams params_k(std::size_t k) {
  AnonParams p;
  p.k = k;
  return p;
}

// Header "# micro k=K kind=..." of a bundled micro-instance.
std::size_t micro_k(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  const auto at = line.find("k=");
  return std::stoul(line.substr(at + 2));
}

}  // namespace

TEST_CASE("partition aligns windows to pi") {
  Dataset d;
  d.trajectories.push_back(track(1, 2, 13, 0, 0));
  d.trajectories.push_back(track(2, 6, 9, 0, 0));
  d.trajectories.push_back(track(3, 0, 10, 0, 0));
  d.trajectories.push_back(track(4, 0, 10, 1, 1));
  const auto r = partition(d, 5);
  CHECK(r.removed == std::vector<Rfid>{Rfid{2}});
  REQUIRE(r.classes.size() == 2);
  CHECK(r.classes[0].window == Window{0, 10});
  CHECK(r.classes[0].members.size() == 2);
  CHECK(r.classes[1].window == Window{5, 10});
  const auto& trimmed = r.classes[1].members.front();
  CHECK(trimmed.start_tick() == 5);
  CHECK(trimmed.end_tick() == 10);
  // ticks 2-4 and 11-13 of track 1, plus all of track 2
  CHECK(r.removed_points == 6 + 4);
  CHECK_THROWS_AS(partition(d, 0), ParameterError);
}

TEST_CASE("partition interpolates boundary points") {
  Dataset d;
  d.trajectories.push_back(Trajectory{Rfid{1}, {{3, 0.0, 0.0}, {7, 4.0, 0.0}, {12, 9.0, 0.0}}});
  const auto r = partition(d, 5);
  REQUIRE(r.classes.size() == 1);
  const auto& m = r.classes[0].members[0];
  CHECK(m.points.front() == TrajPoint{5, 2.0, 0.0});
  CHECK(m.points.back() == TrajPoint{10, 7.0, 0.0});
}

TEST_CASE("cluster_class: identical tracks pair up with radius 0") {
  EquivalenceClass eq{{0, 10}, {}};
  for (std::uint32_t i = 1; i <= 4; ++i) eq.members.push_back(track(i, 0, 10, 0.5, 0.5));
  const auto r = cluster_class(eq, params_k(2));
  CHECK(r.clusters.size() == 2);
  CHECK(r.trash.empty());
  for (const auto& c : r.clusters) {
    CHECK(c.members.size() == 2);
    CHECK(c.radius == 0.0);
    CHECK(c.members.front().id == c.pivot.id);
  }
}

TEST_CASE("cluster_class: too few members is infeasible") {
  EquivalenceClass eq{{0, 10}, {track(1, 0, 10, 0, 0), track(2, 0, 10, 0, 0)}};
  CHECK_THROWS_AS(cluster_class(eq, params_k(3)), InfeasibleAnonymity);
  try {
    cluster_class(eq, params_k(3));
  } catch (const InfeasibleAnonymity& e) {
    CHECK(e.trash_fraction() == 1.0);
  }
}

TEST_CASE("cluster_class: two tight groups of three match the exhaustive 3+3 split") {
  EquivalenceClass eq{{0, 10}, {}};
  const double offs[] = {0.0, 0.0004, -0.0003};
  std::uint32_t id = 1;
  for (const double base : {0.2, 0.8})
    for (const double o : offs) eq.members.push_back(track(id++, 0, 10, base + o, base));
  AnonParams p = params_k(3);
  const auto r = cluster_class(eq, p);
  REQUIRE(r.clusters.size() == 2);
  CHECK(r.trash.empty());
  for (const auto& c : r.clusters) {
    std::set<std::uint32_t> ids;
    for (const auto& m : c.members) ids.insert(m.id.value);
    const bool first = ids == std::set<std::uint32_t>{1, 2, 3};
    const bool second = ids == std::set<std::uint32_t>{4, 5, 6};
    CHECK((first || second));
  }

  // exhaustive search agrees that a 3+3 split is the only feasible shape
  std::vector<std::vector<double>> dist(6, std::vector<double>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      dist[a][b] = oracle::sync_distance(eq.members[a].points, eq.members[b].points, 0, 10);
  CHECK(oracle::partition_feasible(dist, 3, p.delta_max, 0));
  CHECK_FALSE(oracle::partition_feasible(dist, 6, p.delta_max, 0));
}

TEST_CASE("cluster_class relaxes the radius bound up to delta_max") {
  EquivalenceClass eq{{0, 5}, {track(1, 0, 5, 0, 0), track(2, 0, 5, 0.0035, 0)}};
  AnonParams p = params_k(2);
  p.max_radius = 0.001;
  p.delta_max = 0.008;
  const auto r = cluster_class(eq, p);
  REQUIRE(r.clusters.size() == 1);
  CHECK(r.radius_bound == doctest::Approx(0.004));
  p.delta_max = 0.003;
  CHECK_THROWS_AS(cluster_class(eq, p), InfeasibleAnonymity);
}

TEST_CASE("micro-instances: greedy agrees with the exhaustive partition oracle") {
  int feasible = 0, infeasible = 0;
  for (int n = 0; n < 18; ++n) {
    const auto path = kData / fmt::format("micro6_{:02d}.txt", n);
    CAPTURE(path.string());
    const Dataset d = load_trajectories(path);
    const std::size_t k = micro_k(path);
    const auto parts = partition(d, 5);
    REQUIRE(parts.classes.size() == 1);
    const auto& eq = parts.classes[0];
    AnonParams p = params_k(k);
    std::vector<std::vector<double>> dist(6, std::vector<double>(6));
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        dist[a][b] = oracle::sync_distance(eq.members[a].points, eq.members[b].points,
                                           eq.window.begin, eq.window.end);
    const std::size_t max_trash = static_cast<std::size_t>(p.trash_max * 6.0);
    const bool exists = oracle::partition_feasible(dist, k, p.delta_max, max_trash);
    try {
      const auto r = cluster_class(eq, p);
      for (const auto& c : r.clusters) {
        CHECK(c.members.size() >= k);
        CHECK(c.radius <= p.delta_max);
        for (const auto& m : c.members)
          CHECK(oracle::sync_distance(c.pivot.points, m.points, eq.window.begin,
                                      eq.window.end) <= c.radius + 1e-12);
      }
      CHECK(r.trash.size() <= max_trash);
      CHECK(exists);
      ++feasible;
    } catch (const InfeasibleAnonymity&) {
      CHECK_FALSE(exists);
      ++infeasible;
    }
  }
  // the bundled set exercises both outcomes
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("translate: delta 0 publishes the pivot track") {
  EquivalenceClass eq{{0, 10}, {track(1, 0, 10, 0, 0), track(2, 0, 10, 0.001, 0)}};
  const auto r = cluster_class(eq, params_k(2));
  std::mt19937_64 rng(1);
  const auto out = translate(r.clusters, 0.0, rng);
  REQUIRE(out.clusters.size() == 1);
  const auto& pivot = r.clusters[0].pivot;
  for (const auto& m : out.clusters[0].members)
    for (const auto& p : m.points) CHECK(p.position() == position_at(pivot, p.t));
}

TEST_CASE("translate: points stay within delta/2 of the pivot and are seeded") {
  EquivalenceClass eq{{0, 20}, {}};
  for (std::uint32_t i = 1; i <= 6; ++i) eq.members.push_back(track(i, 0, 20, 0.0001 * i, 0));
  const auto r = cluster_class(eq, params_k(3));
  std::mt19937_64 a(9), b(9);
  const auto x = translate(r.clusters, 0.001, a);
  const auto y = translate(r.clusters, 0.001, b);
  for (std::size_t c = 0; c < x.clusters.size(); ++c) {
    const auto& pivot = r.clusters[c].pivot;
    CHECK(x.clusters[c].members == y.clusters[c].members);
    for (const auto& m : x.clusters[c].members)
      for (const auto& p : m.points)
        CHECK(distance(p.position(), position_at(pivot, p.t)) <= 0.0005 + 1e-15);
  }
}

TEST_CASE("anonymize: empty and trivial datasets") {
  const auto empty = anonymize(Dataset{}, params_k(2), 42);
  CHECK(empty.clusters.empty());
  CHECK(empty.stats == AnonStats{});

  Dataset d;
  for (std::uint32_t i = 1; i <= 3; ++i) d.trajectories.push_back(track(i, 0, 10, 0.3, 0.3));
  const auto r = anonymize(d, params_k(3), 42);
  CHECK(r.clusters.size() == 1);
  CHECK(r.trash.empty());
  CHECK(r.stats.input_trajectories == 3);
}

TEST_CASE("anonymize: 40-track patrol set at k=4 passes the audit") {
  const Dataset d = load_trajectories(kData / "patrol40.txt");
  AnonParams p = params_k(4);
  const auto r = anonymize(d, p, 42);
  CHECK(r.stats.equivalence_classes == 2);
  CHECK(audit_anonymity(r, p).empty());
  CHECK(audit_displacement(r, d, p).empty());
  const auto again = anonymize(d, p, 42);
  CHECK(again.published() == r.published());
  const auto other = anonymize(d, p, 43);
  CHECK_FALSE(other.published() == r.published());
}

TEST_CASE("audit flags a broken cluster") {
  Dataset d;
  for (std::uint32_t i = 1; i <= 2; ++i) d.trajectories.push_back(track(i, 0, 10, 0.3, 0.3));
  AnonParams p = params_k(2);
  auto r = anonymize(d, p, 1);
  CHECK(audit_anonymity(r, p).empty());
  r.clusters[0].members[1].points[3].x += 0.01;
  CHECK_FALSE(audit_anonymity(r, p).empty());
  r.clusters[0].members.pop_back();
  CHECK_FALSE(audit_anonymity(r, p).empty());
}

TEST_CASE("write_anonymized emits a parseable dataset") {
  const Dataset d = load_trajectories(kData / "patrol40.txt");
  AnonParams p = params_k(2);
  const auto r = anonymize(d, p, 7);
  std::ostringstream out;
  write_anonymized(out, r, p, 7);
  std::istringstream in(out.str());
  CHECK(parse_trajectories(in) == r.published());
}

TEST_CASE("parameter validation") {
  AnonParams p;
  p.k = 1;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = AnonParams{};
  p.delta = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = AnonParams{};
  p.delta_max = p.max_radius / 2;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = AnonParams{};
  p.trash_max = 1.5;
  CHECK_THROWS_AS(p.validate(), ParameterError);
}

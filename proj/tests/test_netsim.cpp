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


#include <random>
#include <sstream>

#include <fmt/format.h>

#include "doctest.h"
#include "oracles.hpp"
#include "patrolnet/comparison.hpp"
#include "patrolnet/errors.hpp"
#include "patrolnet/simulator.hpp"
#include "patrolnet/topology.hpp"

using namespace patrolnet;

namespace {

const std::filesystem::path kData = PATROLNET_DATA_DIR;

std::vector<NodeSpec> scatter(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({NodeId(i + 1), u(rng), u(rng)});
  return nodes;
}

// A - B - C spaced 1.0 apart.
Topology path3(NodeId aggregator) {
  return build_topology({{1, 0.0, 0.0}, {2, 1.0, 0.0}, {3, 2.0, 0.0}}, 1.0, aggregator);
}

std::vector<std::uint8_t> text(const std::string& s) { return {s.begin(), s.end()}; }

Packet share_packet(std::uint64_t report, const Share& s) {
  Packet p;
  p.report_id = report;
  p.share = s;
  return p;
}

}  // namespace

TEST_CASE("build_topology: path graph and range 0") {
  const auto t = path3(3);
  CHECK(t.neighbors(0) == std::vector<std::size_t>{1});
  CHECK(t.neighbors(1) == std::vector<std::size_t>{0, 2});
  CHECK(t.neighbors(2) == std::vector<std::size_t>{1});
  CHECK(t.connected());

  const auto none = build_topology({{1, 0, 0}, {2, 1, 0}}, 0.0, 1);
  CHECK(none.neighbors(0).empty());
  CHECK_FALSE(none.connected());
}

TEST_CASE("build_topology errors") {
  CHECK_THROWS_AS(build_topology({{1, 0, 0}}, 1.0, 1), TopologyError);
  CHECK_THROWS_AS(build_topology({{1, 0, 0}, {1, 1, 0}}, 1.0, 1), TopologyError);
  CHECK_THROWS_AS(build_topology({{1, 0, 0}, {2, 1, 0}}, 1.0, 9), TopologyError);
  CHECK_THROWS_AS(build_topology({{1, 0, 0}, {2, 1, 0}}, -1.0, 1), TopologyError);
}

TEST_CASE("connectivity flag matches a union-find oracle") {
  const auto seven = scatter(7, 50);
  CHECK(build_topology(seven, 0.25, 1).connected() == oracle::connected(seven, 0.25));
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto nodes = scatter(seed, 30);
    const double range = 0.12 + 0.005 * double(seed % 20);
    CHECK(build_topology(nodes, range, 1).connected() == oracle::connected(nodes, range));
  }
}

TEST_CASE("adjacency is symmetric and exactly the in-range pairs") {
  const auto nodes = scatter(3, 40);
  const auto t = build_topology(nodes, 0.2, 1);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const auto& n = t.neighbors(i);
      const bool edge = std::find(n.begin(), n.end(), j) != n.end();
      CHECK(edge == (i != j && oracle::in_range(nodes[i], nodes[j], 0.2)));
    }
}

TEST_CASE("compute_minhop: path graph") {
  const auto t = path3(3);
  const auto mh = compute_minhop(t);
  CHECK(mh.hops == std::vector<int>{2, 1, 0});
  CHECK(mh.next_hops[0] == std::vector<std::size_t>{1});
  CHECK(mh.next_hops[1] == std::vector<std::size_t>{2});
  CHECK(mh.next_hops[2].empty());
}

TEST_CASE("compute_minhop matches Floyd-Warshall on random graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto nodes = scatter(seed, 35);
    const auto t = build_topology(nodes, 0.22, 1);
    const auto mh = compute_minhop(t);
    const auto d = oracle::hop_matrix(nodes, 0.22);
    std::size_t unreachable = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(mh.hops[i] == d[i][0]);
      if (d[i][0] == kUnreachable) ++unreachable;
      for (const std::size_t n : mh.next_hops[i]) CHECK(d[n][0] == d[i][0] - 1);
      std::size_t closer = 0;
      for (const std::size_t n : t.neighbors(i))
        if (d[i][0] != kUnreachable && d[n][0] == d[i][0] - 1) ++closer;
      CHECK(mh.next_hops[i].size() == closer);
    }
    CHECK(mh.unreachable_count() == unreachable);
  }
}

TEST_CASE("topology file round-trip and errors") {
  const auto t = load_topology(kData / "topology50.txt");
  CHECK(t.size() == 50);
  CHECK(t.aggregator_id() == 900);
  CHECK(t.connected());
  std::stringstream buf;
  write_topology(buf, t);
  const auto back = parse_topology(buf);
  CHECK(back.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(back.node(i).id == t.node(i).id);
    CHECK(back.node(i).x == t.node(i).x);
    CHECK(back.neighbors(i) == t.neighbors(i));
  }

  std::istringstream no_range("aggregator 1\n1 0 0\n2 1 0\n");
  CHECK_THROWS_AS(parse_topology(no_range), ParseError);
  std::istringstream no_agg("range 1\n1 0 0\n2 1 0\n");
  CHECK_THROWS_AS(parse_topology(no_agg), ParseError);
  std::istringstream bad_line("range 1\naggregator 1\n1 0\n");
  CHECK_THROWS_AS(parse_topology(bad_line), ParseError);
  std::istringstream bad_source("range 1\naggregator 1\nsources 7\n1 0 0\n2 1 0\n");
  CHECK_THROWS_AS(parse_topology(bad_source), TopologyError);
}

TEST_CASE("inject_report: share and packet counts") {
  const auto t = path3(3);
  SimConfig cfg;
  cfg.threshold = 3;
  cfg.shares = 4;
  Simulator sim(t, cfg);
  const auto id = sim.inject_report(1, text("hello"));
  CHECK(sim.node(0).mac_queue.size() == 4);
  for (const auto& p : sim.node(0).mac_queue) {
    CHECK(p.report_id == id);
    CHECK(p.ttl == cfg.ttl_init);
    CHECK(p.phase == Phase::RandomWalk);
  }

  cfg.mode = RoutingMode::ShortestPath;
  Simulator sp(t, cfg);
  sp.inject_report(1, text("hello"));
  REQUIRE(sp.node(0).mac_queue.size() == 1);
  CHECK(sp.node(0).mac_queue.front().phase == Phase::MinHop);
  CHECK(sp.node(0).mac_queue.front().share.payload == text("hello"));

  CHECK_THROWS_AS(sp.inject_report(42, text("x")), InjectionError);
  const auto lonely = build_topology({{1, 0, 0}, {2, 1, 0}, {3, 5, 5}}, 1.0, 1);
  cfg.allow_disconnected = true;
  Simulator iso(lonely, cfg);
  CHECK_THROWS_AS(iso.inject_report(3, text("x")), InjectionError);
}

TEST_CASE("disconnected topologies are refused unless allowed") {
  const auto t = build_topology({{1, 0, 0}, {2, 1, 0}, {3, 5, 5}}, 1.0, 1);
  CHECK_THROWS_AS(Simulator(t, SimConfig{}), TopologyError);
  SimConfig cfg;
  cfg.allow_disconnected = true;
  CHECK_NOTHROW(Simulator(t, cfg));
}

TEST_CASE("config validation") {
  SimConfig c;
  c.threshold = 4;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = SimConfig{};
  c.mac_service_rate = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = SimConfig{};
  c.duration = c.traffic_ticks - 1;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = SimConfig{};
  c.ttl_init = -1;
  CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("a MinHop packet advances one hop per tick") {
  const auto t = path3(3);
  SimConfig cfg;
  cfg.mode = RoutingMode::ShortestPath;
  Simulator sim(t, cfg);
  sim.inject_report(1, text("abc"));
  sim.step();
  CHECK(sim.node(1).mac_queue.size() == 1);
  CHECK(sim.deliveries().empty());
  sim.step();
  REQUIRE(sim.deliveries().size() == 1);
  CHECK(sim.deliveries()[0].latency() == 2);
  CHECK(sim.deliveries()[0].payload == text("abc"));
  CHECK(sim.absorbed()[0].hop_trace == std::vector<NodeId>{1, 2, 3});
}

TEST_CASE("random relay falls back to the previous hop when it is the only neighbour") {
  // L - M - A, aggregator A; a walk of 3 must bounce off A and come back
  const auto t = path3(3);
  SimConfig cfg;
  cfg.ttl_init = 3;
  cfg.threshold = 1;
  cfg.shares = 1;
  Simulator sim(t, cfg);
  sim.inject_report(1, text("z"));
  for (int i = 0; i < 6; ++i) sim.step();
  REQUIRE(sim.absorbed().size() == 1);
  CHECK(sim.absorbed()[0].hop_trace == std::vector<NodeId>{1, 2, 3, 2, 3});

  cfg.exclude_previous_hop = false;
  Simulator loose(t, cfg);
  loose.inject_report(1, text("z"));
  for (int i = 0; i < 20; ++i) loose.step();
  CHECK(loose.census().conserved());
}

TEST_CASE("share collector: threshold, duplicates, late shares, bad pools") {
  std::mt19937_64 rng(4);
  const auto shares = split_secret(text("secret"), 3, 4, rng);
  ShareCollector c;
  CHECK_FALSE(c.collect(share_packet(0, shares[0]), 1));
  CHECK_FALSE(c.collect(share_packet(0, shares[0]), 2));
  CHECK(c.ignored_shares() == 1);
  CHECK_FALSE(c.collect(share_packet(0, shares[2]), 2));
  const auto done = c.collect(share_packet(0, shares[3]), 3);
  REQUIRE(done);
  CHECK(done->payload == text("secret"));
  CHECK(done->delivered_at == 3);
  CHECK(c.delivered(0));
  CHECK_FALSE(c.collect(share_packet(0, shares[1]), 4));
  CHECK(c.ignored_shares() == 2);

  auto broken = shares;
  broken[1].payload.pop_back();
  CHECK_FALSE(c.collect(share_packet(1, broken[0]), 1));
  CHECK_FALSE(c.collect(share_packet(1, broken[1]), 1));
  CHECK_FALSE(c.collect(share_packet(1, broken[2]), 1));
  CHECK(c.failed(1));
  CHECK_FALSE(c.delivered(1));
}

TEST_CASE("only t-1 shares arriving leaves the report failed") {
  std::mt19937_64 rng(4);
  const auto shares = split_secret(text("secret"), 3, 4, rng);
  ShareCollector c;
  c.collect(share_packet(0, shares[0]), 1);
  c.collect(share_packet(0, shares[1]), 2);
  CHECK_FALSE(c.delivered(0));
}

TEST_CASE("a report survives one share stuck behind a congested queue") {
  // S reaches the aggregator through four relays; leaves X1..X3 flood R1.
  const auto t = build_topology({{100, 0.0, 0.0},
                                 {1, 1.0, -0.3},
                                 {2, 1.0, -0.1},
                                 {3, 1.0, 0.1},
                                 {4, 1.0, 0.3},
                                 {10, 2.0, 0.0},
                                 {21, 1.0, -1.3},
                                 {22, 1.5, -1.2},
                                 {23, 0.5, -1.2}},
                                1.05, 100);
  REQUIRE(t.connected());
  const std::size_t r1 = t.index_of(1);
  bool seen = false;
  for (std::uint64_t seed = 0; seed < 64 && !seen; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.ttl_init = 1;
    cfg.threshold = 3;
    cfg.shares = 4;
    Simulator sim(t, cfg);
    for (int tick = 0; tick < 12; ++tick) {
      for (const NodeId leaf : {21, 22, 23})
        for (int r = 0; r < 4; ++r) sim.inject_report(leaf, text("flood"));
      sim.step();
    }
    const auto target = sim.inject_report(10, text("the report that matters"));
    for (int tick = 0; tick < 6; ++tick) sim.step();

    bool stuck = false;
    for (const auto& p : sim.node(r1).mac_queue) stuck = stuck || p.report_id == target;
    const bool delivered =
        std::any_of(sim.deliveries().begin(), sim.deliveries().end(),
                    [&](const DeliveredReport& d) { return d.report_id == target; });
    if (!stuck) continue;
    seen = true;
    CHECK(sim.node(r1).mac_queue.size() > 3);
    CHECK(delivered);
    CHECK(sim.metrics().corrupted_reports == 0);
  }
  CHECK(seen);
}

TEST_CASE("conservation, walk length and min-hop monotonicity on the bundled topology") {
  const auto t = load_topology(kData / "topology50.txt");
  const auto mh = compute_minhop(t);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    Simulator sim(t, cfg);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeId> node(1, 49);
    for (Tick tick = 0; tick < 120; ++tick) {
      if (tick < 60) sim.inject_report(node(rng), text(fmt::format("r{}", tick)));
      sim.step();
      REQUIRE(sim.census().conserved());
    }
    const auto m = sim.metrics();
    CHECK(m.delivered_reports == 60);
    CHECK(m.corrupted_reports == 0);
    CHECK(m.delivered_reports + m.failed_reports == m.injected_reports);
    for (const auto& p : sim.absorbed()) {
      REQUIRE(p.hop_trace.size() >= std::size_t(cfg.ttl_init) + 1);
      const auto walk_end = t.index_of(p.hop_trace[cfg.ttl_init]);
      CHECK(p.hop_trace.size() - 1 == std::size_t(cfg.ttl_init + mh.hops[walk_end]));
      for (std::size_t h = cfg.ttl_init + 1; h < p.hop_trace.size(); ++h)
        CHECK(mh.hops[t.index_of(p.hop_trace[h])] == mh.hops[t.index_of(p.hop_trace[h - 1])] - 1);
    }
    for (const auto& d : sim.deliveries()) CHECK(d.payload == sim.injected_payload(d.report_id));
  }
}

TEST_CASE("run is a pure function of topology and config") {
  const auto t = load_topology(kData / "topology50.txt");
  SimConfig cfg;
  cfg.seed = 11;
  cfg.load = 0.5;
  cfg.traffic_ticks = 100;
  cfg.duration = 100;
  Simulator a(t, cfg), b(t, cfg);
  a.run();
  b.run();
  CHECK(a.metrics() == b.metrics());
  cfg.seed = 12;
  Simulator c(t, cfg);
  c.run();
  CHECK_FALSE(a.metrics() == c.metrics());
}

TEST_CASE("sources restrict where reports start") {
  const auto t = load_topology(kData / "topology50.txt");
  SimConfig cfg;
  cfg.load = 1.0;
  cfg.sources = {5, 6};
  Simulator sim(t, cfg);
  sim.run();
  for (const auto& d : sim.deliveries()) CHECK((d.source == 5 || d.source == 6));
}

TEST_CASE("comparison: repeatable, shortest path wins at low load, plot data") {
  const auto t = load_topology(kData / "topology50.txt");
  ComparisonGrid g;
  g.base.traffic_ticks = 60;
  g.base.duration = 120;
  g.loads = {0.05, 0.5};
  g.seeds = {0, 1, 2};
  const auto a = run_comparison(t, g);
  const auto b = run_comparison(t, g);
  REQUIRE(a.rows.size() == 4);
  for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(a.cells[i].metrics == b.cells[i].metrics);
  CHECK(a.rows[0].mode == RoutingMode::Randomized);
  CHECK(a.rows[1].mean_latency <= a.rows[0].mean_latency);
  CHECK(&a.cell(0.5, RoutingMode::ShortestPath, 2) != nullptr);
  CHECK_THROWS_AS(a.cell(0.7, RoutingMode::ShortestPath, 2), std::out_of_range);

  std::ostringstream plot;
  write_plot_data(plot, a);
  std::istringstream lines(plot.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "load\tmode\tmean_latency\tdelivery_ratio");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  CHECK(rows == 4);

  ComparisonGrid idle = g;
  idle.loads = {0.0};
  std::ostringstream na;
  write_plot_data(na, run_comparison(t, idle));
  CHECK(na.str().find("NA") != std::string::npos);
}

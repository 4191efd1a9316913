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

#ifndef PATROLNET_SIMULATOR_HPP
#define PATROLNET_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "patrolnet/model.hpp"
#include "patrolnet/secret_sharing.hpp"
#include "patrolnet/topology.hpp"

namespace patrolnet {

enum class RoutingMode { Randomized, ShortestPath };
enum class Phase { RandomWalk, MinHop };

std::string_view to_string(RoutingMode mode);

struct SimConfig {
  std::uint64_t seed = 0;
  int ttl_init = 3;
  int threshold = 2;
  int shares = 3;
  int mac_service_rate = 1;   ///< packets each node transmits per tick
  double load = 0.1;          ///< mean reports generated per tick
  Tick traffic_ticks = 100;   ///< reports are generated during [0, traffic_ticks)
  Tick duration = 200;        ///< total simulated ticks
  RoutingMode mode = RoutingMode::Randomized;
  bool exclude_previous_hop = true;
  bool allow_disconnected = false;
  std::vector<NodeId> sources;  ///< empty: every node except the aggregator

  /// Throws ParameterError on non-positive rates, t > m and similar.
  void validate() const;
};

struct Packet {
  std::uint64_t packet_id = 0;
  std::uint64_t report_id = 0;
  NodeId source = 0;
  Share share;
  int ttl = 0;
  Phase phase = Phase::RandomWalk;
  Tick injected_at = 0;
  std::vector<NodeId> hop_trace;  ///< source first, one entry per hop
};

/// A report the aggregator reconstructed.
struct DeliveredReport {
  std::uint64_t report_id = 0;
  NodeId source = 0;
  std::vector<std::uint8_t> payload;
  Tick injected_at = 0;
  Tick delivered_at = 0;

  Tick latency() const { return delivered_at - injected_at; }
};

/// Share pool at the aggregator. Shares are grouped by report; the first
/// time a report holds `threshold` distinct indices it is reconstructed and
/// returned. Later and duplicate shares are ignored.
class ShareCollector {
 public:
  std::optional<DeliveredReport> collect(const Packet& packet, Tick now);

  bool delivered(std::uint64_t report_id) const;
  bool failed(std::uint64_t report_id) const;
  std::size_t ignored_shares() const { return ignored_; }

 private:
  struct Pool {
    std::vector<Share> shares;
    bool done = false;
    bool failed = false;
  };
  std::map<std::uint64_t, Pool> pools_;
  std::size_t ignored_ = 0;
};

/// One row of a node's sensor table: a reading the application layer
/// handed down for transport.
struct SensorReading {
  std::uint64_t report_id = 0;
  Tick tick = 0;
  std::size_t bytes = 0;
};

/// Per-node layer state: sensor table, MAC FIFO and routing table.
struct LayeredNode {
  NodeId id = 0;
  std::vector<std::size_t> neighbors;
  std::map<std::size_t, int> routing_table;  ///< neighbour index -> hops to aggregator
  std::vector<SensorReading> sensor_table;
  std::deque<Packet> mac_queue;
  std::size_t queue_peak = 0;
};

struct Metrics {
  std::size_t injected_reports = 0;
  std::size_t delivered_reports = 0;
  std::size_t failed_reports = 0;
  double mean_delivery_ticks = 0.0;  ///< 0 when nothing was delivered
  std::vector<Tick> latencies;       ///< per delivered report, in delivery order
  std::vector<std::size_t> queue_peak;
  std::size_t injected_packets = 0;
  std::size_t absorbed_packets = 0;
  std::size_t stranded_packets = 0;  ///< reached a node with no route onward
  std::size_t expired_packets = 0;   ///< still queued when the run ended
  std::size_t corrupted_reports = 0; ///< reconstructed bytes differ from the injected payload

  double delivery_ratio() const {
    return injected_reports == 0 ? 0.0
                                 : static_cast<double>(delivered_reports) /
                                       static_cast<double>(injected_reports);
  }
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Where every injected packet currently is. Between ticks nothing is in
/// flight.
struct PacketCensus {
  std::size_t queued = 0;
  std::size_t in_flight = 0;
  std::size_t absorbed = 0;
  std::size_t stranded = 0;
  std::size_t injected = 0;
  bool ids_unique = true;  ///< no packet id appears in two places

  bool conserved() const { return ids_unique && queued + in_flight + absorbed + stranded == injected; }
};

/// Synchronous-tick simulator of share transport toward the aggregator.
///
/// Each tick every node, in index order, serves up to mac_service_rate
/// packets from the head of its FIFO. A packet with TTL left goes to a
/// uniformly drawn neighbour (the previous hop is skipped when another
/// choice exists) and its TTL drops by one; once the TTL is zero it
/// follows a uniformly drawn next hop of the min-hop table. Transmissions
/// land in the receivers' queues at the start of the next tick; a
/// min-hop-phase packet landing on the aggregator is absorbed there.
class Simulator {
 public:
  /// Throws TopologyError for a disconnected topology unless the config
  /// allows it, and ParameterError for an invalid config.
  Simulator(const Topology& topology, SimConfig config);

  /// Splits the payload (or, in ShortestPath mode, wraps it whole) and
  /// queues the packets at `node`. Throws InjectionError for an unknown or
  /// isolated node.
  std::uint64_t inject_report(NodeId node, std::span<const std::uint8_t> payload);

  /// Serves every MAC queue once and advances the clock by one tick.
  void step();

  /// Generates traffic for traffic_ticks and steps until `duration`.
  void run();

  Tick now() const { return now_; }
  PacketCensus census() const;
  Metrics metrics() const;
  const std::vector<DeliveredReport>& deliveries() const { return deliveries_; }
  const std::vector<Packet>& absorbed() const { return absorbed_; }
  const LayeredNode& node(std::size_t index) const { return nodes_[index]; }
  const MinHopTable& minhop() const { return minhop_; }
  const std::vector<std::uint8_t>& injected_payload(std::uint64_t report_id) const;

 private:
  std::optional<std::size_t> next_hop(const Packet& packet, std::size_t at);
  void arrive(std::size_t at, Packet packet);

  const Topology& topology_;
  SimConfig config_;
  MinHopTable minhop_;
  std::vector<LayeredNode> nodes_;
  std::vector<std::size_t> sources_;
  std::mt19937_64 traffic_rng_;
  std::mt19937_64 routing_rng_;
  std::mt19937_64 sharing_rng_;
  ShareCollector collector_;
  Tick now_ = 0;
  std::uint64_t next_packet_id_ = 0;
  std::vector<std::vector<std::uint8_t>> payloads_;  ///< by report id
  std::vector<Packet> absorbed_;
  std::vector<Packet> stranded_;
  std::vector<DeliveredReport> deliveries_;
  std::size_t corrupted_ = 0;
};

}  // namespace patrolnet

#endif  // PATROLNET_SIMULATOR_HPP

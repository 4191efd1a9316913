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

#include "patrolnet/simulator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <iterator>

#include "patrolnet/errors.hpp"

namespace patrolnet {
namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    purpose};
  return std::mt19937_64(seq);
}

template <typename T>
const T& pick(const std::vector<T>& options, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
  return options[d(rng)];
}

}  // namespace

std::string_view to_string(RoutingMode mode) {
  return mode == RoutingMode::Randomized ? "randomized" : "shortest";
}

void SimConfig::validate() const {
  if (ttl_init < 0) throw ParameterError("ttl_init must be >= 0");
  if (threshold < 1 || threshold > shares || shares > 255) {
    throw ParameterError(
        fmt::format("need 1 <= threshold <= shares <= 255, got ({}, {})", threshold, shares));
  }
  if (mac_service_rate < 1) throw ParameterError("mac_service_rate must be >= 1");
  if (!(load >= 0.0)) throw ParameterError("load must be >= 0");
  if (traffic_ticks < 0 || duration < traffic_ticks) {
    throw ParameterError("need 0 <= traffic_ticks <= duration");
  }
}

std::optional<DeliveredReport> ShareCollector::collect(const Packet& packet, Tick now) {
  Pool& pool = pools_[packet.report_id];
  if (pool.done || pool.failed) {
    ++ignored_;
    return std::nullopt;
  }
  const bool duplicate = std::any_of(pool.shares.begin(), pool.shares.end(), [&](const Share& s) {
    return s.index == packet.share.index;
  });
  if (duplicate) {
    ++ignored_;
    return std::nullopt;
  }
  pool.shares.push_back(packet.share);
  if (pool.shares.size() < packet.share.threshold) return std::nullopt;

  try {
    DeliveredReport report;
    report.report_id = packet.report_id;
    report.source = packet.source;
    report.payload = reconstruct_secret(pool.shares);
    report.injected_at = packet.injected_at;
    report.delivered_at = now;
    pool.done = true;
    pool.shares.clear();
    return report;
  } catch (const Error&) {
    pool.failed = true;
    pool.shares.clear();
    return std::nullopt;
  }
}

bool ShareCollector::delivered(std::uint64_t report_id) const {
  const auto it = pools_.find(report_id);
  return it != pools_.end() && it->second.done;
}

bool ShareCollector::failed(std::uint64_t report_id) const {
  const auto it = pools_.find(report_id);
  return it != pools_.end() && it->second.failed;
}

Simulator::Simulator(const Topology& topology, SimConfig config)
    : topology_(topology),
      config_(std::move(config)),
      minhop_(compute_minhop(topology)),
      traffic_rng_(stream(config_.seed, 1)),
      routing_rng_(stream(config_.seed, 2)),
      sharing_rng_(stream(config_.seed, 3)) {
  config_.validate();
  if (!topology.connected() && !config_.allow_disconnected) {
    throw TopologyError(fmt::format("topology is disconnected ({} nodes cannot reach the aggregator)",
                                    minhop_.unreachable_count()));
  }
  nodes_.resize(topology.size());
  for (std::size_t i = 0; i < topology.size(); ++i) {
    nodes_[i].id = topology.node(i).id;
    nodes_[i].neighbors = topology.neighbors(i);
    for (const std::size_t n : nodes_[i].neighbors) nodes_[i].routing_table[n] = minhop_.hops[n];
  }
  const auto& wanted = config_.sources.empty() ? topology.sources : config_.sources;
  if (wanted.empty()) {
    for (std::size_t i = 0; i < topology.size(); ++i) {
      if (i != topology.aggregator_index()) sources_.push_back(i);
    }
  } else {
    for (const NodeId id : wanted) sources_.push_back(topology.index_of(id));
  }
}

const std::vector<std::uint8_t>& Simulator::injected_payload(std::uint64_t report_id) const {
  return payloads_.at(report_id);
}

std::uint64_t Simulator::inject_report(NodeId node, std::span<const std::uint8_t> payload) {
  if (!topology_.contains(node)) throw InjectionError(fmt::format("unknown node {}", node));
  const std::size_t at = topology_.index_of(node);
  if (nodes_[at].neighbors.empty()) {
    throw InjectionError(fmt::format("node {} has no neighbours", node));
  }

  const std::uint64_t report_id = payloads_.size();
  payloads_.emplace_back(payload.begin(), payload.end());
  nodes_[at].sensor_table.push_back({report_id, now_, payload.size()});

  std::vector<Share> shares;
  int ttl = 0;
  if (config_.mode == RoutingMode::Randomized) {
    shares = split_secret(payload, config_.threshold, config_.shares, sharing_rng_);
    ttl = config_.ttl_init;
  } else {
    shares.push_back(Share{1, 1, {payload.begin(), payload.end()}});
  }
  for (auto& share : shares) {
    Packet packet;
    packet.packet_id = next_packet_id_++;
    packet.report_id = report_id;
    packet.source = node;
    packet.share = std::move(share);
    packet.ttl = ttl;
    packet.phase = ttl > 0 ? Phase::RandomWalk : Phase::MinHop;
    packet.injected_at = now_;
    packet.hop_trace.push_back(node);
    arrive(at, std::move(packet));
  }
  return report_id;
}

std::optional<std::size_t> Simulator::next_hop(const Packet& packet, std::size_t at) {
  if (packet.phase == Phase::RandomWalk) {
    const auto& all = nodes_[at].neighbors;
    if (all.empty()) return std::nullopt;
    if (config_.exclude_previous_hop && packet.hop_trace.size() >= 2) {
      const std::size_t prev = topology_.index_of(packet.hop_trace[packet.hop_trace.size() - 2]);
      std::vector<std::size_t> others;
      std::copy_if(all.begin(), all.end(), std::back_inserter(others),
                   [&](std::size_t n) { return n != prev; });
      if (!others.empty()) return pick(others, routing_rng_);
    }
    return pick(all, routing_rng_);
  }
  const auto& closer = minhop_.next_hops[at];
  if (closer.empty()) return std::nullopt;
  return pick(closer, routing_rng_);
}

void Simulator::arrive(std::size_t at, Packet packet) {
  if (at == topology_.aggregator_index() && packet.phase == Phase::MinHop) {
    if (auto report = collector_.collect(packet, now_)) {
      if (report->payload != payloads_[report->report_id]) ++corrupted_;
      deliveries_.push_back(std::move(*report));
    }
    absorbed_.push_back(std::move(packet));
    return;
  }
  auto& node = nodes_[at];
  node.mac_queue.push_back(std::move(packet));
  node.queue_peak = std::max(node.queue_peak, node.mac_queue.size());
}

void Simulator::step() {
  std::vector<std::pair<std::size_t, Packet>> in_flight;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& queue = nodes_[i].mac_queue;
    for (int served = 0; served < config_.mac_service_rate && !queue.empty(); ++served) {
      Packet packet = std::move(queue.front());
      queue.pop_front();
      const auto next = next_hop(packet, i);
      if (!next) {
        stranded_.push_back(std::move(packet));
        continue;
      }
      if (packet.ttl > 0 && --packet.ttl == 0) packet.phase = Phase::MinHop;
      packet.hop_trace.push_back(nodes_[*next].id);
      in_flight.emplace_back(*next, std::move(packet));
    }
  }
  ++now_;
  for (auto& [to, packet] : in_flight) arrive(to, std::move(packet));
}

void Simulator::run() {
  std::poisson_distribution<int> arrivals(config_.load);
  std::uniform_int_distribution<std::size_t> source(0, sources_.size() - 1);
  while (now_ < config_.duration) {
    if (now_ < config_.traffic_ticks && config_.load > 0.0) {
      const int n = arrivals(traffic_rng_);
      for (int r = 0; r < n; ++r) {
        const std::size_t at = sources_[source(traffic_rng_)];
        const auto text = fmt::format("report {} from node {} at tick {}", payloads_.size(),
                                      nodes_[at].id, now_);
        inject_report(nodes_[at].id,
                      std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
      }
    }
    step();
  }
}

PacketCensus Simulator::census() const {
  PacketCensus c;
  c.injected = next_packet_id_;
  std::vector<bool> seen(next_packet_id_, false);
  auto mark = [&](const Packet& p) {
    if (p.packet_id >= seen.size() || seen[p.packet_id]) {
      c.ids_unique = false;
    } else {
      seen[p.packet_id] = true;
    }
  };
  for (const auto& node : nodes_) {
    c.queued += node.mac_queue.size();
    for (const auto& p : node.mac_queue) mark(p);
  }
  c.absorbed = absorbed_.size();
  for (const auto& p : absorbed_) mark(p);
  c.stranded = stranded_.size();
  for (const auto& p : stranded_) mark(p);
  return c;
}

Metrics Simulator::metrics() const {
  Metrics m;
  m.injected_reports = payloads_.size();
  m.delivered_reports = deliveries_.size();
  m.failed_reports = m.injected_reports - m.delivered_reports;
  for (const auto& d : deliveries_) m.latencies.push_back(d.latency());
  if (!m.latencies.empty()) {
    double total = 0.0;
    for (const Tick l : m.latencies) total += static_cast<double>(l);
    m.mean_delivery_ticks = total / static_cast<double>(m.latencies.size());
  }
  for (const auto& node : nodes_) {
    m.queue_peak.push_back(node.queue_peak);
    m.expired_packets += node.mac_queue.size();
  }
  m.injected_packets = next_packet_id_;
  m.absorbed_packets = absorbed_.size();
  m.stranded_packets = stranded_.size();
  m.corrupted_reports = corrupted_;
  return m;
}

}  // namespace patrolnet

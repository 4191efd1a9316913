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

#ifndef PATROLNET_TOPOLOGY_HPP
#define PATROLNET_TOPOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

namespace patrolnet {

using NodeId = std::uint32_t;

struct NodeSpec {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
};

/// Unit-disk radio graph: nodes are adjacent iff their distance is at most
/// the radio range. Internally nodes are addressed by their position in
/// `nodes()`; neighbour lists hold those indices in ascending order.
class Topology {
 public:
  /// Throws TopologyError for fewer than two nodes, duplicate ids, a
  /// negative range or an unknown aggregator.
  Topology(std::vector<NodeSpec> nodes, double radio_range, NodeId aggregator);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const NodeSpec& node(std::size_t index) const { return nodes_[index]; }
  const std::vector<std::size_t>& neighbors(std::size_t index) const { return adjacency_[index]; }
  double radio_range() const { return radio_range_; }
  std::size_t aggregator_index() const { return aggregator_; }
  NodeId aggregator_id() const { return nodes_[aggregator_].id; }
  bool connected() const { return connected_; }

  /// Throws TopologyError for an unknown id.
  std::size_t index_of(NodeId id) const;
  bool contains(NodeId id) const;

  /// Optional default report sources carried by the topology file.
  std::vector<NodeId> sources;

 private:
  std::vector<NodeSpec> nodes_;
  double radio_range_;
  std::size_t aggregator_;
  std::vector<std::vector<std::size_t>> adjacency_;
  bool connected_ = false;
};

inline Topology build_topology(std::vector<NodeSpec> nodes, double radio_range,
                               NodeId aggregator) {
  return Topology(std::move(nodes), radio_range, aggregator);
}

/// Header lines "range R" and "aggregator ID", an optional
/// "sources ID ID ..." line, then one "id x y" line per node.
Topology parse_topology(std::istream& in);
Topology load_topology(const std::filesystem::path& path);
void write_topology(std::ostream& out, const Topology& topology);

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Breadth-first hop counts toward the aggregator. `next_hops[i]` lists the
/// neighbours of i exactly one hop closer; empty for the aggregator and for
/// unreachable nodes (hop count kUnreachable).
struct MinHopTable {
  std::vector<int> hops;
  std::vector<std::vector<std::size_t>> next_hops;

  std::size_t unreachable_count() const;
};

MinHopTable compute_minhop(const Topology& topology);

/// Longest shortest path in hops between any two nodes; kUnreachable when
/// the graph is disconnected.
int hop_diameter(const Topology& topology);

}  // namespace patrolnet

#endif  // PATROLNET_TOPOLOGY_HPP

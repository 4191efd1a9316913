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

#include "patrolnet/topology.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "patrolnet/errors.hpp"
#include "text_util.hpp"

namespace patrolnet {
namespace {

std::vector<int> bfs(const Topology& topology, std::size_t origin) {
  std::vector<int> dist(topology.size(), kUnreachable);
  std::deque<std::size_t> frontier{origin};
  dist[origin] = 0;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (const std::size_t v : topology.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

Topology::Topology(std::vector<NodeSpec> nodes, double radio_range, NodeId aggregator)
    : nodes_(std::move(nodes)), radio_range_(radio_range), aggregator_(0) {
  if (nodes_.size() < 2) throw TopologyError("a topology needs at least two nodes");
  if (!(radio_range >= 0.0)) throw TopologyError("radio range must be non-negative");
  std::set<NodeId> ids;
  for (const auto& n : nodes_) {
    if (!ids.insert(n.id).second) throw TopologyError(fmt::format("duplicate node id {}", n.id));
  }
  aggregator_ = index_of(aggregator);

  adjacency_.resize(nodes_.size());
  for (std::size_t a = 0; a < nodes_.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes_.size(); ++b) {
      if (std::hypot(nodes_[a].x - nodes_[b].x, nodes_[a].y - nodes_[b].y) <= radio_range_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
      }
    }
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());

  const auto dist = bfs(*this, aggregator_);
  connected_ = std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; });
}

std::size_t Topology::index_of(NodeId id) const {
  const auto it =
      std::find_if(nodes_.begin(), nodes_.end(), [&](const NodeSpec& n) { return n.id == id; });
  if (it == nodes_.end()) throw TopologyError(fmt::format("unknown node id {}", id));
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool Topology::contains(NodeId id) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const NodeSpec& n) { return n.id == id; });
}

Topology parse_topology(std::istream& in) {
  std::vector<NodeSpec> nodes;
  std::vector<NodeId> sources;
  double range = -1.0;
  bool have_aggregator = false;
  NodeId aggregator = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    if (tokens[0] == "range") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected \"range R\"");
      range = detail::parse_real(tokens[1], line_no, "range");
    } else if (tokens[0] == "aggregator") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected \"aggregator ID\"");
      aggregator = detail::parse_uint<NodeId>(tokens[1], line_no, "aggregator id");
      have_aggregator = true;
    } else if (tokens[0] == "sources") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        sources.push_back(detail::parse_uint<NodeId>(tokens[i], line_no, "source id"));
      }
    } else {
      if (tokens.size() != 3) throw ParseError(line_no, "expected \"id x y\"");
      nodes.push_back({detail::parse_uint<NodeId>(tokens[0], line_no, "node id"),
                       detail::parse_real(tokens[1], line_no, "x"),
                       detail::parse_real(tokens[2], line_no, "y")});
    }
  }
  if (range < 0.0) throw ParseError(line_no, "missing \"range R\" header");
  if (!have_aggregator) throw ParseError(line_no, "missing \"aggregator ID\" header");
  Topology topology(std::move(nodes), range, aggregator);
  for (const NodeId s : sources) topology.index_of(s);
  topology.sources = std::move(sources);
  return topology;
}

Topology load_topology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  return parse_topology(in);
}

void write_topology(std::ostream& out, const Topology& topology) {
  out << fmt::format("range {}\naggregator {}\n", topology.radio_range(), topology.aggregator_id());
  if (!topology.sources.empty()) out << fmt::format("sources {}\n", fmt::join(topology.sources, " "));
  for (const auto& n : topology.nodes()) out << fmt::format("{} {} {}\n", n.id, n.x, n.y);
}

std::size_t MinHopTable::unreachable_count() const {
  return static_cast<std::size_t>(std::count(hops.begin(), hops.end(), kUnreachable));
}

MinHopTable compute_minhop(const Topology& topology) {
  MinHopTable table;
  table.hops = bfs(topology, topology.aggregator_index());
  table.next_hops.resize(topology.size());
  for (std::size_t u = 0; u < topology.size(); ++u) {
    if (table.hops[u] == kUnreachable || table.hops[u] == 0) continue;
    for (const std::size_t v : topology.neighbors(u)) {
      if (table.hops[v] == table.hops[u] - 1) table.next_hops[u].push_back(v);
    }
  }
  return table;
}

int hop_diameter(const Topology& topology) {
  int worst = 0;
  for (std::size_t u = 0; u < topology.size(); ++u) {
    for (const int d : bfs(topology, u)) worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace patrolnet

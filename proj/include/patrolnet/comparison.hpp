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

#ifndef PATROLNET_COMPARISON_HPP
#define PATROLNET_COMPARISON_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "patrolnet/simulator.hpp"
#include "patrolnet/topology.hpp"

namespace patrolnet {

/// Loads x seeds x {Randomized, ShortestPath}. Both modes see the same
/// seed per cell, hence the same report arrival times and sources.
struct ComparisonGrid {
  SimConfig base;
  std::vector<double> loads;
  std::vector<std::uint64_t> seeds;
};

struct ComparisonCell {
  double load = 0.0;
  RoutingMode mode = RoutingMode::Randomized;
  std::uint64_t seed = 0;
  Metrics metrics;
};

/// Pooled over seeds. `mean_latency` averages every delivered report of
/// every seed; a row with no deliveries is unmeasurable.
struct ComparisonRow {
  double load = 0.0;
  RoutingMode mode = RoutingMode::Randomized;
  bool measurable = false;
  double mean_latency = 0.0;
  double delivery_ratio = 0.0;
};

struct ComparisonTable {
  std::vector<ComparisonCell> cells;  ///< load-major, then seed, then mode
  std::vector<ComparisonRow> rows;    ///< load-major, randomized first

  /// Metrics of one cell; throws std::out_of_range when absent.
  const Metrics& cell(double load, RoutingMode mode, std::uint64_t seed) const;
};

ComparisonTable run_comparison(const Topology& topology, const ComparisonGrid& grid);

/// Tab-separated "load mode mean_latency delivery_ratio" with a header
/// line; unmeasurable latencies print as NA.
void write_plot_data(std::ostream& out, const ComparisonTable& table);

}  // namespace patrolnet

#endif  // PATROLNET_COMPARISON_HPP

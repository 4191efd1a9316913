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

#include "patrolnet/comparison.hpp"

#include <fmt/format.h>

#include <ostream>
#include <stdexcept>

namespace patrolnet {

const Metrics& ComparisonTable::cell(double load, RoutingMode mode, std::uint64_t seed) const {
  for (const auto& c : cells) {
    if (c.load == load && c.mode == mode && c.seed == seed) return c.metrics;
  }
  throw std::out_of_range(fmt::format("no cell for load {} mode {} seed {}", load,
                                      to_string(mode), seed));
}

ComparisonTable run_comparison(const Topology& topology, const ComparisonGrid& grid) {
  ComparisonTable table;
  for (const double load : grid.loads) {
    for (const std::uint64_t seed : grid.seeds) {
      for (const RoutingMode mode : {RoutingMode::Randomized, RoutingMode::ShortestPath}) {
        SimConfig config = grid.base;
        config.load = load;
        config.seed = seed;
        config.mode = mode;
        Simulator sim(topology, config);
        sim.run();
        table.cells.push_back({load, mode, seed, sim.metrics()});
      }
    }
    for (const RoutingMode mode : {RoutingMode::Randomized, RoutingMode::ShortestPath}) {
      ComparisonRow row{load, mode, false, 0.0, 0.0};
      double latency_sum = 0.0;
      std::size_t delivered = 0;
      std::size_t injected = 0;
      for (const auto& c : table.cells) {
        if (c.load != load || c.mode != mode) continue;
        for (const Tick l : c.metrics.latencies) latency_sum += static_cast<double>(l);
        delivered += c.metrics.delivered_reports;
        injected += c.metrics.injected_reports;
      }
      row.measurable = delivered > 0;
      if (row.measurable) row.mean_latency = latency_sum / static_cast<double>(delivered);
      if (injected > 0) row.delivery_ratio = static_cast<double>(delivered) / static_cast<double>(injected);
      table.rows.push_back(row);
    }
  }
  return table;
}

void write_plot_data(std::ostream& out, const ComparisonTable& table) {
  out << "load\tmode\tmean_latency\tdelivery_ratio\n";
  for (const auto& row : table.rows) {
    const std::string latency = row.measurable ? fmt::format("{:.4f}", row.mean_latency) : "NA";
    out << fmt::format("{}\t{}\t{}\t{:.4f}\n", row.load, to_string(row.mode), latency,
                       row.delivery_ratio);
  }
}

}  // namespace patrolnet

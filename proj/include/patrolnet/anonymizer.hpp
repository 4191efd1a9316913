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

#ifndef PATROLNET_ANONYMIZER_HPP
#define PATROLNET_ANONYMIZER_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "patrolnet/model.hpp"

namespace patrolnet {

/// Knobs of the partition / cluster / translate pipeline. Spatial values
/// share the units of the input coordinates.
struct AnonParams {
  std::size_t k = 2;         ///< trajectories per published cluster
  double delta = 0.001;      ///< uncertainty disk diameter
  Tick pi = 5;               ///< window alignment granularity in ticks
  double max_radius = 0.0025;  ///< first radius bound tried by clustering
  double delta_max = 0.010;  ///< radius bound never exceeded when relaxing
  double trash_max = 0.10;   ///< tolerated discard fraction per class

  /// Throws ParameterError when a field is out of range.
  void validate() const;
};

/// Closed tick interval [begin, end].
struct Window {
  Tick begin = 0;
  Tick end = 0;

  Tick ticks() const { return end - begin + 1; }
  friend auto operator<=>(const Window&, const Window&) = default;
};

/// Trajectories sharing one pi-aligned window, each trimmed to exactly it.
struct EquivalenceClass {
  Window window;
  std::vector<Trajectory> members;
};

struct PartitionResult {
  std::vector<EquivalenceClass> classes;  ///< ordered by window
  std::vector<Rfid> removed;              ///< no aligned window fits
  std::size_t removed_points = 0;         ///< dropped by removal or trimming
};

/// Assigns every trajectory to the widest pi-aligned window inside its span.
PartitionResult partition(const Dataset& dataset, Tick pi);

struct TrajectoryCluster {
  Window window;
  Trajectory pivot;
  std::vector<Trajectory> members;  ///< k entries, pivot first
  double radius = 0.0;              ///< max distance from pivot to a member
};

struct ClusterResult {
  std::vector<TrajectoryCluster> clusters;
  std::vector<Rfid> trash;
  double radius_bound = 0.0;  ///< bound in force when clustering settled
};

/// Greedy farthest-pivot k-member clustering of one class.
///
/// The first pivot is the member farthest from the class mean trajectory,
/// later pivots are the active member farthest from the previous pivot. A
/// pivot and its k-1 nearest active neighbours form a cluster when the
/// cluster radius fits the current bound; otherwise the pivot alone is set
/// aside. Whatever is left when fewer than k members remain active is
/// retried with a doubled bound (capped at delta_max) while the discarded
/// fraction exceeds trash_max. Ties break toward the earlier member, so the
/// result is a pure function of the class.
///
/// Throws InfeasibleAnonymity when the discard fraction still exceeds
/// trash_max at delta_max.
ClusterResult cluster_class(const EquivalenceClass& eq, const AnonParams& params);

/// A cluster after translation. Every member carries one point per tick of
/// the window.
struct PublishedCluster {
  Window window;
  Rfid pivot;
  double radius = 0.0;
  std::vector<Trajectory> members;
};

struct AnonStats {
  std::size_t input_trajectories = 0;
  std::size_t input_points = 0;
  double diameter = 0.0;
  std::size_t removed_trajectories = 0;  ///< by partitioning
  std::size_t removed_points = 0;        ///< by partitioning and trimming
  std::size_t trashed_trajectories = 0;  ///< by clustering
  std::size_t trashed_points = 0;
  std::size_t equivalence_classes = 0;
  std::size_t clusters = 0;

  friend bool operator==(const AnonStats&, const AnonStats&) = default;
};

struct AnonymizedDataset {
  std::vector<PublishedCluster> clusters;
  std::vector<Rfid> removed;
  std::vector<Rfid> trash;
  AnonStats stats;

  /// Every published member trajectory, cluster by cluster.
  Dataset published() const;
};

/// Moves every member onto its pivot's track and displaces each point by an
/// independent uniform draw from the disk of radius delta / 2.
AnonymizedDataset translate(std::span<const TrajectoryCluster> clusters, double delta,
                            std::mt19937_64& rng);

/// partition -> cluster_class -> translate. Each class draws its jitter
/// from a generator seeded by (seed, window), so the output depends only on
/// the dataset, the parameters and the seed.
AnonymizedDataset anonymize(const Dataset& dataset, const AnonParams& params,
                            std::uint64_t seed);

/// Writes the published trajectories in trajectory-file format behind a
/// comment header that records the parameters and seed.
void write_anonymized(std::ostream& out, const AnonymizedDataset& result,
                      const AnonParams& params, std::uint64_t seed);

}  // namespace patrolnet

#endif  // PATROLNET_ANONYMIZER_HPP

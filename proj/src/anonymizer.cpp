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

#include "patrolnet/anonymizer.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "patrolnet/errors.hpp"

namespace patrolnet {
namespace {

Tick ceil_multiple(Tick t, Tick pi) {
  const Tick r = ((t % pi) + pi) % pi;
  return r == 0 ? t : t + (pi - r);
}

Tick floor_multiple(Tick t, Tick pi) {
  const Tick r = ((t % pi) + pi) % pi;
  return t - r;
}

// Positions of every member at every tick of the class window, plus the
// pairwise max-distance matrix over them.
class SampledClass {
 public:
  explicit SampledClass(const EquivalenceClass& eq)
      : n_(eq.members.size()), ticks_(static_cast<std::size_t>(eq.window.ticks())) {
    samples_.reserve(n_ * ticks_);
    for (const auto& member : eq.members) {
      for (Tick t = eq.window.begin; t <= eq.window.end; ++t) {
        samples_.push_back(position_at(member, t));
      }
    }
    dist_.assign(n_ * n_, 0.0);
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        double worst = 0.0;
        for (std::size_t t = 0; t < ticks_; ++t) {
          worst = std::max(worst, distance(at(a, t), at(b, t)));
        }
        dist_[a * n_ + b] = dist_[b * n_ + a] = worst;
      }
    }
  }

  const Point& at(std::size_t member, std::size_t tick) const {
    return samples_[member * ticks_ + tick];
  }
  double dist(std::size_t a, std::size_t b) const { return dist_[a * n_ + b]; }
  std::size_t ticks() const { return ticks_; }

  // Member of `pool` farthest from the pointwise mean of `pool`.
  std::size_t farthest_from_mean(const std::vector<std::size_t>& pool) const {
    std::vector<Point> mean(ticks_);
    for (std::size_t t = 0; t < ticks_; ++t) {
      for (const std::size_t m : pool) {
        mean[t].x += at(m, t).x;
        mean[t].y += at(m, t).y;
      }
      mean[t].x /= static_cast<double>(pool.size());
      mean[t].y /= static_cast<double>(pool.size());
    }
    std::size_t best = pool.front();
    double best_dist = -1.0;
    for (const std::size_t m : pool) {
      double worst = 0.0;
      for (std::size_t t = 0; t < ticks_; ++t) worst = std::max(worst, distance(at(m, t), mean[t]));
      if (worst > best_dist) {
        best_dist = worst;
        best = m;
      }
    }
    return best;
  }

  // Member of `pool` farthest from `from`; pool is kept in index order so
  // ties go to the earlier member.
  std::size_t farthest_from(std::size_t from, const std::vector<std::size_t>& pool) const {
    std::size_t best = pool.front();
    double best_dist = -1.0;
    for (const std::size_t m : pool) {
      if (dist(from, m) > best_dist) {
        best_dist = dist(from, m);
        best = m;
      }
    }
    return best;
  }

 private:
  std::size_t n_;
  std::size_t ticks_;
  std::vector<Point> samples_;
  std::vector<double> dist_;
};

struct Round {
  std::vector<std::vector<std::size_t>> groups;  // pivot first
  std::vector<double> radii;
  std::vector<std::size_t> leftover;
};

Round greedy_round(const SampledClass& sampled, std::vector<std::size_t> active, std::size_t k,
                   double bound) {
  Round round;
  if (active.size() < k) {
    round.leftover = std::move(active);
    return round;
  }
  std::size_t pivot = sampled.farthest_from_mean(active);
  while (active.size() >= k) {
    std::vector<std::size_t> others;
    others.reserve(active.size() - 1);
    for (const std::size_t m : active) {
      if (m != pivot) others.push_back(m);
    }
    std::stable_sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
      return sampled.dist(pivot, a) < sampled.dist(pivot, b);
    });
    others.resize(k - 1);
    const double radius = k > 1 ? sampled.dist(pivot, others.back()) : 0.0;

    std::vector<std::size_t> taken{pivot};
    if (radius <= bound) {
      taken.insert(taken.end(), others.begin(), others.end());
      round.groups.push_back(taken);
      round.radii.push_back(radius);
    } else {
      round.leftover.push_back(pivot);
    }
    std::erase_if(active, [&](std::size_t m) {
      return std::find(taken.begin(), taken.end(), m) != taken.end();
    });
    if (active.empty()) break;
    pivot = sampled.farthest_from(pivot, active);
  }
  round.leftover.insert(round.leftover.end(), active.begin(), active.end());
  std::sort(round.leftover.begin(), round.leftover.end());
  return round;
}

Point disk_offset(double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

void AnonParams::validate() const {
  if (k < 2) throw ParameterError(fmt::format("k must be at least 2, got {}", k));
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ParameterError(fmt::format("delta must be positive, got {}", delta));
  }
  if (pi < 1) throw ParameterError(fmt::format("pi must be at least 1, got {}", pi));
  if (!(max_radius > 0.0)) {
    throw ParameterError(fmt::format("max_radius must be positive, got {}", max_radius));
  }
  if (!(delta_max >= max_radius)) {
    throw ParameterError(
        fmt::format("delta_max ({}) must not be below max_radius ({})", delta_max, max_radius));
  }
  if (!(trash_max >= 0.0 && trash_max <= 1.0)) {
    throw ParameterError(fmt::format("trash_max must lie in [0, 1], got {}", trash_max));
  }
}

Dataset AnonymizedDataset::published() const {
  Dataset out;
  for (const auto& cluster : clusters) {
    out.trajectories.insert(out.trajectories.end(), cluster.members.begin(),
                            cluster.members.end());
  }
  return out;
}

PartitionResult partition(const Dataset& dataset, Tick pi) {
  if (pi < 1) throw ParameterError(fmt::format("pi must be at least 1, got {}", pi));
  PartitionResult result;
  std::map<Window, std::vector<Trajectory>> by_window;

  for (const auto& traj : dataset.trajectories) {
    const Tick begin = ceil_multiple(traj.start_tick(), pi);
    const Tick end = floor_multiple(traj.end_tick(), pi);
    if (begin >= end) {
      result.removed.push_back(traj.id);
      result.removed_points += traj.points.size();
      continue;
    }
    result.removed_points += static_cast<std::size_t>(std::count_if(
        traj.points.begin(), traj.points.end(),
        [&](const TrajPoint& p) { return p.t < begin || p.t > end; }));
    by_window[Window{begin, end}].push_back(trim(traj, begin, end));
  }
  for (auto& [window, members] : by_window) {
    result.classes.push_back(EquivalenceClass{window, std::move(members)});
  }
  return result;
}

ClusterResult cluster_class(const EquivalenceClass& eq, const AnonParams& params) {
  params.validate();
  const std::size_t n = eq.members.size();
  const SampledClass sampled(eq);

  ClusterResult result;
  double bound = params.max_radius;
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;

  for (;;) {
    Round round = greedy_round(sampled, std::move(pool), params.k, bound);
    for (std::size_t g = 0; g < round.groups.size(); ++g) {
      TrajectoryCluster cluster;
      cluster.window = eq.window;
      cluster.pivot = eq.members[round.groups[g].front()];
      cluster.radius = round.radii[g];
      for (const std::size_t m : round.groups[g]) cluster.members.push_back(eq.members[m]);
      result.clusters.push_back(std::move(cluster));
    }
    const double fraction =
        n == 0 ? 0.0 : static_cast<double>(round.leftover.size()) / static_cast<double>(n);
    if (fraction <= params.trash_max) {
      for (const std::size_t m : round.leftover) result.trash.push_back(eq.members[m].id);
      result.radius_bound = bound;
      return result;
    }
    if (bound >= params.delta_max) {
      throw InfeasibleAnonymity(
          fmt::format("class [{}, {}]: {} of {} trajectories unclustered ({:.1f}% > {:.1f}%) "
                      "at radius {}",
                      eq.window.begin, eq.window.end, round.leftover.size(), n, 100.0 * fraction,
                      100.0 * params.trash_max, bound),
          fraction);
    }
    bound = std::min(2.0 * bound, params.delta_max);
    pool = std::move(round.leftover);
  }
}

AnonymizedDataset translate(std::span<const TrajectoryCluster> clusters, double delta,
                            std::mt19937_64& rng) {
  if (!(delta >= 0.0)) throw ParameterError(fmt::format("delta must be >= 0, got {}", delta));
  const double radius = delta / 2.0;
  AnonymizedDataset out;
  for (const auto& cluster : clusters) {
    PublishedCluster published{cluster.window, cluster.pivot.id, cluster.radius, {}};
    std::vector<Point> centre;
    for (Tick t = cluster.window.begin; t <= cluster.window.end; ++t) {
      centre.push_back(position_at(cluster.pivot, t));
    }
    for (const auto& member : cluster.members) {
      Trajectory moved{member.id, {}};
      moved.points.reserve(centre.size());
      for (std::size_t i = 0; i < centre.size(); ++i) {
        const Point off = radius > 0.0 ? disk_offset(radius, rng) : Point{};
        moved.points.push_back(
            {cluster.window.begin + static_cast<Tick>(i), centre[i].x + off.x, centre[i].y + off.y});
      }
      published.members.push_back(std::move(moved));
    }
    out.clusters.push_back(std::move(published));
  }
  out.stats.clusters = out.clusters.size();
  return out;
}

AnonymizedDataset anonymize(const Dataset& dataset, const AnonParams& params,
                            std::uint64_t seed) {
  params.validate();
  AnonymizedDataset out;
  const DatasetSummary summary = summarize(dataset);
  out.stats.input_trajectories = summary.trajectories;
  out.stats.input_points = summary.points;
  out.stats.diameter = summary.diameter;
  if (dataset.trajectories.empty()) return out;

  PartitionResult parts = partition(dataset, params.pi);
  out.removed = std::move(parts.removed);
  out.stats.removed_trajectories = out.removed.size();
  out.stats.removed_points = parts.removed_points;
  out.stats.equivalence_classes = parts.classes.size();

  for (const auto& eq : parts.classes) {
    ClusterResult clustered = cluster_class(eq, params);
    for (const Rfid id : clustered.trash) {
      const auto it = std::find_if(eq.members.begin(), eq.members.end(),
                                   [&](const Trajectory& m) { return m.id == id; });
      out.stats.trashed_points += it->points.size();
    }
    out.trash.insert(out.trash.end(), clustered.trash.begin(), clustered.trash.end());

    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(eq.window.begin),
                      static_cast<std::uint32_t>(eq.window.end)};
    std::mt19937_64 rng(seq);
    AnonymizedDataset part = translate(clustered.clusters, params.delta, rng);
    for (auto& c : part.clusters) out.clusters.push_back(std::move(c));
  }
  out.stats.trashed_trajectories = out.trash.size();
  out.stats.clusters = out.clusters.size();
  return out;
}

void write_anonymized(std::ostream& out, const AnonymizedDataset& result,
                      const AnonParams& params, std::uint64_t seed) {
  out << fmt::format("# anonymized k={} delta={} pi={} max_radius={} delta_max={} trash_max={} "
                     "seed={}\n",
                     params.k, params.delta, params.pi, params.max_radius, params.delta_max,
                     params.trash_max, seed);
  out << fmt::format("# clusters={} removed={} trashed={}\n", result.clusters.size(),
                     result.removed.size(), result.trash.size());
  write_trajectories(out, result.published());
}

}  // namespace patrolnet

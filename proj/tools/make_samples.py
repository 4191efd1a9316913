#!/usr/bin/env python3
# Copyright 2026 The patrolnet Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled sample files under data/.

Usage: tools/make_samples.py [OUTDIR]   (default: data/ next to this script)
"""

import math
import pathlib
import random
import sys


def fmt(v):
    return repr(round(v, 6))


def walk(rng, start, end, origin, speed=1.0):
    """Smooth random walk sampled at every tick of [start, end]."""
    x, y = origin
    heading = rng.uniform(0, 2 * math.pi)
    out = []
    for t in range(start, end + 1):
        out.append((t, x, y))
        heading += rng.gauss(0, 0.3)
        x += speed * math.cos(heading)
        y += speed * math.sin(heading)
    return out


def follow(rng, path, start, end, jitter):
    """A companion track: the path restricted to [start, end], offset by a
    fixed small displacement plus per-point noise."""
    dx, dy = rng.uniform(-jitter, jitter), rng.uniform(-jitter, jitter)
    pts = [p for p in path if start <= p[0] <= end]
    out = []
    for t, x, y in pts:
        out.append((t, x + dx + rng.uniform(-jitter, jitter) * 0.1,
                    y + dy + rng.uniform(-jitter, jitter) * 0.1))
    return out


def write_traj(path, header, trajectories):
    with open(path, "w") as f:
        for line in header:
            f.write(f"# {line}\n")
        for tid, pts in trajectories:
            for t, x, y in pts:
                f.write(f"{tid} {t} {fmt(x)} {fmt(y)}\n")


def grouped_dataset(rng, groups_per_window, group_size, jitter, outliers, shorts, first_id):
    """Groups of co-moving tracks. Members of a group start and stop at
    slightly different ticks that all align to the same window."""
    trajectories = []
    tid = first_id
    for (w0, w1), n_groups in groups_per_window:
        for _ in range(n_groups):
            origin = (rng.uniform(0, 100), rng.uniform(0, 100))
            path = walk(rng, max(0, w0 - 4), w1 + 4, origin)
            for _ in range(group_size):
                start = rng.randint(max(0, w0 - 4), w0)
                end = rng.randint(w1, w1 + 4)
                trajectories.append((tid, follow(rng, path, start, end, jitter)))
                tid += 1
        for _ in range(outliers.get((w0, w1), 0)):
            origin = (rng.uniform(200, 300), rng.uniform(200, 300))
            trajectories.append((tid, walk(rng, w0, w1, origin)))
            tid += 1
    for _ in range(shorts):
        start = rng.randint(1, 40)
        origin = (rng.uniform(0, 100), rng.uniform(0, 100))
        trajectories.append((tid, walk(rng, start, start + 3, origin)))
        tid += 1
    rng.shuffle(trajectories)
    return trajectories


def micro_instances(rng, outdir):
    kinds = []
    for i in range(6):
        kinds.append(("two-groups", 3))
    for i in range(6):
        kinds.append(("three-pairs", 2))
    for i in range(6):
        kinds.append(("scattered", 3 if i % 2 == 0 else 2))
    for n, (kind, k) in enumerate(kinds):
        trajs = []
        if kind == "two-groups":
            centres = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(2)]
            members = [centres[0]] * 3 + [centres[1]] * 3
            spread = 0.004
        elif kind == "three-pairs":
            centres = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(3)]
            members = [c for c in centres for _ in range(2)]
            spread = 0.004
        else:
            members = [(0.5, 0.5)] * 6
            spread = 0.03
        for tid, (cx, cy) in enumerate(members, start=1):
            ox, oy = rng.uniform(-spread, spread), rng.uniform(-spread, spread)
            pts = [(t, cx + ox + 0.01 * t, cy + oy) for t in range(0, 11)]
            trajs.append((tid, pts))
        rng.shuffle(trajs)
        write_traj(outdir / f"micro6_{n:02d}.txt",
                   [f"micro k={k} kind={kind}"], trajs)


def officer_uploads(rng, outdir):
    # Criminal 701 seen by three officers of zone 0 at one location.
    crime = [(t, 40.0 + 0.5 * t, 25.0 + 0.25 * t) for t in range(10, 21)]
    for n, officer in enumerate((501, 502, 503), start=1):
        own = walk(rng, 0, 30, (35.0 + n, 20.0 + n))
        seen = [(t, x + rng.uniform(-2e-4, 2e-4), y + rng.uniform(-2e-4, 2e-4))
                for (t, x, y) in crime]
        write_traj(outdir / f"p{n}.txt",
                   [f"upload of officer {officer}, zone 0: own track and sightings"],
                   [(officer, own), (701, seen)])


def topology(rng, outdir):
    # 49 officers/criminals scattered over the unit square, commissioner at centre.
    with open(outdir / "topology50.txt", "w") as f:
        f.write("# 50 nodes in the unit square, commissioner 900 at the centre\n")
        f.write("range 0.25\naggregator 900\n900 0.5 0.5\n")
        for i in range(1, 50):
            f.write(f"{i} {fmt(rng.random())} {fmt(rng.random())}\n")


def main():
    here = pathlib.Path(__file__).resolve().parent
    outdir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else here.parent / "data"
    outdir.mkdir(parents=True, exist_ok=True)

    with open(outdir / "registry.txt", "w") as f:
        f.write("# first line: commissioner (aggregator) id; then officer [zone]\n")
        f.write("900\n501 0\n502 0\n503 0\n504 1\n505 1\n506 1\n")

    officer_uploads(random.Random(5), outdir)

    rng = random.Random(40)
    trajs = grouped_dataset(rng, [((0, 50), 5), ((5, 45), 4)], 4, 0.0008,
                            {(0, 50): 1, (5, 45): 1}, 2, 1001)
    write_traj(outdir / "patrol40.txt",
               ["40 patrol tracks: 9 co-moving groups of 4, 2 loners, 2 short tracks"], trajs)

    rng = random.Random(200)
    trajs = grouped_dataset(
        rng, [((0, 60), 10), ((5, 55), 10), ((10, 70), 9), ((20, 80), 9)], 5, 0.002,
        {(0, 60): 1, (5, 55): 1, (10, 70): 1, (20, 80): 1}, 6, 2001)
    write_traj(outdir / "synthetic200.txt",
               ["200 tracks: 38 co-moving groups of 5, 4 loners, 6 short tracks"], trajs)

    micro_instances(random.Random(6), outdir)
    topology(random.Random(7), outdir)


if __name__ == "__main__":
    main()

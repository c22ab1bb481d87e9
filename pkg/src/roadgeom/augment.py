"""Grid augmentation by axis-ray shortcuts, and the two locality diagnostics.

A shortcut points from a vertex to an endpoint of the first non-incident
base edge hit by one of the four axis rays (the endpoint nearer the hit
point, lower id on ties).  Shortcuts are analysis devices: they cap the hop
distance between centers of intersecting disks, which the neighborly check
measures, but they never participate in routing.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .crossings import PlanarizedGraph
from .disks import DiskSystem
from .errors import ConfigError
from .graphs import GeometricGraph

_DIRECTIONS = ("up", "down", "left", "right")


@dataclass(frozen=True)
class MixedAugmentedGraph:
    base: GeometricGraph
    shortcuts: tuple  # (origin, target, direction)

    def out_neighbors(self):
        """Per-vertex out-neighbor lists: undirected base edges plus
        directed shortcuts."""
        out = [[] for _ in range(self.base.n)]
        for e in self.base.edges():
            out[e.u].append(e.v)
            out[e.v].append(e.u)
        for origin, target, _ in self.shortcuts:
            out[origin].append(target)
        return out


@dataclass(frozen=True)
class NeighborlyReport:
    max_hops_augmented: int
    max_hops_plain: int
    augmented_truncated: bool
    plain_truncated: bool
    worst_pairs: tuple  # ((v, w), augmented hops) sorted worst-first


@dataclass(frozen=True)
class ClusteringReport:
    component_counts: np.ndarray
    max_components: int


class _SlabIndex:
    """1-D uniform slabs over an interval coordinate; an edge registers in
    every slab its interval overlaps."""

    def __init__(self, lo, hi):
        self.lo = lo
        self.hi = hi
        spans = hi - lo
        positive = spans[spans > 0]
        self.width = max(float(np.median(positive)) if len(positive) else 1.0, 1e-12)
        self.buckets: dict[int, list[int]] = {}
        for e in range(len(lo)):
            for s in range(
                int(math.floor(lo[e] / self.width)),
                int(math.floor(hi[e] / self.width)) + 1,
            ):
                self.buckets.setdefault(s, []).append(e)
        self.buckets = {k: np.asarray(v, dtype=np.int64) for k, v in self.buckets.items()}

    def candidates(self, q):
        return self.buckets.get(int(math.floor(q / self.width)))


def _first_hit(g, xs1, ys1, xs2, ys2, slab, v, vx, vy, direction):
    """First non-incident edge hit by the axis ray from v; returns
    (edge, hit point) or None."""
    vertical = direction in ("up", "down")
    cand = slab.candidates(vx if vertical else vy)
    if cand is None:
        return None
    cand = cand[(g.edge_u[cand] != v) & (g.edge_v[cand] != v)]
    if len(cand) == 0:
        return None
    if vertical:
        a1, a2, b1, b2, q_axis, q_ray = xs1[cand], xs2[cand], ys1[cand], ys2[cand], vx, vy
    else:
        a1, a2, b1, b2, q_axis, q_ray = ys1[cand], ys2[cand], xs1[cand], xs2[cand], vy, vx
    inside = (np.minimum(a1, a2) <= q_axis) & (q_axis <= np.maximum(a1, a2))
    cand, a1, a2, b1, b2 = cand[inside], a1[inside], a2[inside], b1[inside], b2[inside]
    if len(cand) == 0:
        return None

    degenerate = a1 == a2  # edge collinear with the ray's axis line
    with np.errstate(invalid="ignore", divide="ignore"):
        t = (q_axis - a1) / (a2 - a1)
    hit = b1 + t * (b2 - b1)
    if degenerate.any():
        fwd = direction in ("up", "right")
        lo = np.minimum(b1, b2)
        hi = np.maximum(b1, b2)
        # First edge point along the ray: the origin itself if the edge
        # straddles it, else the nearer endpoint; NaN when behind the ray.
        straddle = (lo <= q_ray) & (q_ray <= hi)
        along = np.where(straddle, q_ray, lo if fwd else hi)
        along = np.where((hi < q_ray) if fwd else (lo > q_ray), np.nan, along)
        hit = np.where(degenerate, along, hit)

    if direction in ("up", "right"):
        ok = hit >= q_ray
    else:
        ok = hit <= q_ray
    ok &= np.isfinite(hit)
    if not ok.any():
        return None
    cand, hit = cand[ok], hit[ok]
    distance = np.abs(hit - q_ray)
    order = np.lexsort((cand, distance))
    e = int(cand[order[0]])
    h = float(hit[order[0]])
    return (e, (vx, h) if vertical else (h, vy))


def grid_augment(p: PlanarizedGraph) -> MixedAugmentedGraph:
    """Shortcuts for every base vertex along the four axis rays.

    Rays shoot against the base edge set; targets are base-edge endpoints,
    so each vertex's out-degree grows by at most four.  Rays that pass
    exactly through a vertex of a non-incident edge hit that edge there;
    an edge collinear with the ray is hit at the ray origin itself when it
    straddles it, else at its nearer endpoint.  First-hit ties break to the
    lower edge index.
    """
    g = p.base
    xs1, ys1, xs2, ys2 = g.segment_arrays()
    slab_x = _SlabIndex(np.minimum(xs1, xs2), np.maximum(xs1, xs2))
    slab_y = _SlabIndex(np.minimum(ys1, ys2), np.maximum(ys1, ys2))
    shortcuts = []
    for v in range(g.n):
        vx, vy = float(g.xy[v, 0]), float(g.xy[v, 1])
        for direction in _DIRECTIONS:
            slab = slab_x if direction in ("up", "down") else slab_y
            found = _first_hit(g, xs1, ys1, xs2, ys2, slab, v, vx, vy, direction)
            if found is None:
                continue
            e, (hx, hy) = found
            du = (xs1[e] - hx) ** 2 + (ys1[e] - hy) ** 2
            dv = (xs2[e] - hx) ** 2 + (ys2[e] - hy) ** 2
            if du < dv or (du == dv and g.edge_u[e] < g.edge_v[e]):
                target = int(g.edge_u[e])
            else:
                target = int(g.edge_v[e])
            shortcuts.append((v, target, direction))
    return MixedAugmentedGraph(g, tuple(shortcuts))


def _bfs_hops(out, start, goal, cutoff):
    """Hop count of the shortest out-edge path, or None past the cutoff."""
    if start == goal:
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        u, d = frontier.popleft()
        if d == cutoff:
            continue
        for w in out[u]:
            if w == goal:
                return d + 1
            if w not in seen:
                seen.add(w)
                frontier.append((w, d + 1))
    return None


def neighborly_check(
    a: MixedAugmentedGraph, s: DiskSystem, cutoff: int = 250
) -> NeighborlyReport:
    """Max hop distance between centers of intersecting disks, both ways.

    Measured on the augmented out-graph and on the plain base graph;
    searches are cut off at ``cutoff`` hops and truncation is flagged
    (truncated pairs count as ``cutoff`` in the max).
    """
    if cutoff < 1:
        raise ConfigError("cutoff must be >= 1")
    if len(s) != a.base.n:
        raise ConfigError("disk system and graph vertex sets differ")
    out_aug = a.out_neighbors()
    out_plain = MixedAugmentedGraph(a.base, ()).out_neighbors()

    max_aug = max_plain = 0
    trunc_aug = trunc_plain = False
    per_pair = []
    for i, j in s.pairs:
        v, w = int(s.vertices[i]), int(s.vertices[j])
        worst_pair_aug = 0
        for start, goal in ((v, w), (w, v)):
            hops = _bfs_hops(out_aug, start, goal, cutoff)
            if hops is None:
                trunc_aug = True
                hops = cutoff
            max_aug = max(max_aug, hops)
            worst_pair_aug = max(worst_pair_aug, hops)
            hops_p = _bfs_hops(out_plain, start, goal, cutoff)
            if hops_p is None:
                trunc_plain = True
                hops_p = cutoff
            max_plain = max(max_plain, hops_p)
        per_pair.append(((v, w), worst_pair_aug))
    per_pair.sort(key=lambda item: (-item[1], item[0]))
    return NeighborlyReport(
        max_aug, max_plain, trunc_aug, trunc_plain, tuple(per_pair[:10])
    )


def clustering_check(s: DiskSystem) -> ClusteringReport:
    """Connected components among each disk's not-larger intersecting
    neighbors, ordered by (radius, position)."""
    n = len(s)
    indptr, nbr = s.pair_adjacency()
    counts = np.zeros(n, dtype=np.int64)
    stamp = np.full(n, -1, dtype=np.int64)
    slot = np.zeros(n, dtype=np.int64)
    for v in range(n):
        members = [
            int(w)
            for w in nbr[indptr[v] : indptr[v + 1]]
            if (s.radii[w], int(w)) < (s.radii[v], v)
        ]
        if not members:
            counts[v] = 0
            continue
        for pos, w in enumerate(members):
            stamp[w] = v
            slot[w] = pos
        parent = list(range(len(members)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for pos, w in enumerate(members):
            for x in nbr[indptr[w] : indptr[w + 1]]:
                if stamp[x] == v and slot[x] > pos:
                    ra, rb = find(pos), find(int(slot[x]))
                    if ra != rb:
                        parent[ra] = rb
        counts[v] = len({find(i) for i in range(len(members))})
    return ClusteringReport(counts, int(counts.max()) if n else 0)

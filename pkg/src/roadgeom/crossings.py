"""Pairwise edge-crossing detection, classification, and planarization.

Candidate pairs come from a uniform grid keyed by the cells each segment
passes through; classification uses float orientation tests with an exact
rational fallback, so the output matches an all-pairs oracle exactly.
Contacts are kinded: proper interior crossings, endpoint touches, and
collinear overlaps (reported, never planarized).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import DegeneracyError, InvariantViolation
from .geometry import COLLINEAR_OVERLAP, PROPER
from .graphs import GeometricGraph

_EPS = geometry._ORIENT_EPS


@dataclass(frozen=True)
class CrossingRecord:
    e1: int
    e2: int
    point: tuple[float, float]
    level_pair: tuple[int, int]
    kind: str


def proper_only(records) -> list[CrossingRecord]:
    return [r for r in records if r.kind == PROPER]


def crossing_histogram(records) -> dict[tuple[int, int], int]:
    """Counts by unordered hierarchy-level pair; totals match the input."""
    return dict(Counter(r.level_pair for r in records))


def _cell_candidates(g: GeometricGraph):
    """(a, b) edge-index arrays of deduplicated same-cell pairs."""
    m = g.m
    x1, y1, x2, y2 = g.segment_arrays()
    xmin = np.minimum(x1, x2)
    xmax = np.maximum(x1, x2)
    ymin = np.minimum(y1, y2)
    ymax = np.maximum(y1, y2)

    spans = np.maximum(xmax - xmin, ymax - ymin)
    positive = spans[spans > 0]
    if len(positive):
        h = float(np.median(positive))
    else:
        h = 1.0
    h = max(h, 1e-12)

    cx0 = np.floor(xmin / h).astype(np.int64)
    cx1 = np.floor(xmax / h).astype(np.int64)
    cy0 = np.floor(ymin / h).astype(np.int64)
    cy1 = np.floor(ymax / h).astype(np.int64)

    wide = ((cx1 - cx0) > 1) | ((cy1 - cy0) > 1)
    narrow = ~wide

    shift_y = int(cy0.min()) - 1 if m else 0
    width_y = int(cy1.max()) - shift_y + 3 if m else 1

    def key(cx, cy):
        return cx * width_y + (cy - shift_y)

    cells = []
    owners = []
    ids = np.arange(m, dtype=np.int64)
    for take_x, take_y, mask in (
        (cx0, cy0, narrow),
        (cx1, cy0, narrow & (cx1 > cx0)),
        (cx0, cy1, narrow & (cy1 > cy0)),
        (cx1, cy1, narrow & (cx1 > cx0) & (cy1 > cy0)),
    ):
        cells.append(key(take_x[mask], take_y[mask]))
        owners.append(ids[mask])

    # Long segments walk their grid columns; only the rows the segment
    # actually spans inside each column are registered.
    for i in np.flatnonzero(wide):
        a = (x1[i], y1[i])
        b = (x2[i], y2[i])
        if a[0] > b[0]:
            a, b = b, a
        col_lo, col_hi = int(cx0[i]), int(cx1[i])
        ccells = []
        if a[0] == b[0]:
            for cy in range(int(cy0[i]), int(cy1[i]) + 1):
                ccells.append((col_lo, cy))
        else:
            slope = (b[1] - a[1]) / (b[0] - a[0])
            for cx in range(col_lo, col_hi + 1):
                lo_x = max(a[0], cx * h)
                hi_x = min(b[0], (cx + 1) * h)
                ya = a[1] + slope * (lo_x - a[0])
                yb = a[1] + slope * (hi_x - a[0])
                if ya > yb:
                    ya, yb = yb, ya
                # One row of padding absorbs the rounding in ya/yb, so the
                # registered cells always cover the exact segment.
                for cy in range(int(np.floor(ya / h)) - 1, int(np.floor(yb / h)) + 2):
                    ccells.append((cx, cy))
        arr = np.asarray(ccells, dtype=np.int64)
        cells.append(arr[:, 0] * width_y + (arr[:, 1] - shift_y))
        owners.append(np.full(len(arr), i, dtype=np.int64))

    cell_keys = np.concatenate(cells) if cells else np.empty(0, dtype=np.int64)
    owner_ids = np.concatenate(owners) if owners else np.empty(0, dtype=np.int64)
    order = np.lexsort((owner_ids, cell_keys))
    cell_keys = cell_keys[order]
    owner_ids = owner_ids[order]

    pair_a = []
    pair_b = []
    boundaries = np.flatnonzero(np.diff(cell_keys)) + 1
    starts = np.concatenate([[0], boundaries]) if len(cell_keys) else np.empty(0, np.int64)
    stops = np.concatenate([boundaries, [len(cell_keys)]]) if len(cell_keys) else starts
    counts = stops - starts
    # Batch pair generation over all cells of equal occupancy at once.
    for k in np.unique(counts):
        if k < 2:
            continue
        sel = starts[counts == k]
        members = owner_ids[sel[:, None] + np.arange(k)[None, :]]
        ii, jj = np.triu_indices(int(k), k=1)
        pair_a.append(members[:, ii].ravel())
        pair_b.append(members[:, jj].ravel())
    if not pair_a:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    a = np.concatenate(pair_a)
    b = np.concatenate(pair_b)
    a, b = np.minimum(a, b), np.maximum(a, b)
    keys = np.unique(a * np.int64(m) + b)
    return keys // m, keys % m


def find_crossings(g: GeometricGraph) -> list[CrossingRecord]:
    """All pairwise segment contacts, canonically ordered with e1 < e2.

    Proper crossings are pairs whose open segments intersect at a single
    interior point; pairs sharing a graph vertex are never proper and are
    reported only when they overlap collinearly (a data error).
    """
    if g.m < 2:
        return []
    a, b = _cell_candidates(g)
    if len(a) == 0:
        return []
    x1, y1, x2, y2 = g.segment_arrays()
    ax, ay, bx, by = x1[a], y1[a], x2[a], y2[a]
    cx, cy, dx, dy = x1[b], y1[b], x2[b], y2[b]

    overlap = (
        (np.maximum(ax, bx) >= np.minimum(cx, dx))
        & (np.maximum(cx, dx) >= np.minimum(ax, bx))
        & (np.maximum(ay, by) >= np.minimum(cy, dy))
        & (np.maximum(cy, dy) >= np.minimum(ay, by))
    )
    a, b = a[overlap], b[overlap]
    if len(a) == 0:
        return []
    ax, ay, bx, by = x1[a], y1[a], x2[a], y2[a]
    cx, cy, dx, dy = x1[b], y1[b], x2[b], y2[b]

    def cross_terms(px, py, qx, qy, rx, ry):
        t1 = (qx - px) * (ry - py)
        t2 = (qy - py) * (rx - px)
        return t1 - t2, _EPS * (np.abs(t1) + np.abs(t2))

    d1, b1 = cross_terms(ax, ay, bx, by, cx, cy)
    d2, b2 = cross_terms(ax, ay, bx, by, dx, dy)
    d3, b3 = cross_terms(cx, cy, dx, dy, ax, ay)
    d4, b4 = cross_terms(cx, cy, dx, dy, bx, by)

    sure1 = np.abs(d1) > b1
    sure2 = np.abs(d2) > b2
    sure3 = np.abs(d3) > b3
    sure4 = np.abs(d4) > b4

    opposite_ab = sure1 & sure2 & (np.sign(d1) != np.sign(d2))
    opposite_cd = sure3 & sure4 & (np.sign(d3) != np.sign(d4))
    same_ab = sure1 & sure2 & (np.sign(d1) == np.sign(d2))
    same_cd = sure3 & sure4 & (np.sign(d3) == np.sign(d4))

    proper_fast = opposite_ab & opposite_cd
    separated = same_ab | same_cd
    ambiguous = ~(proper_fast | separated)

    shared = (
        (g.edge_u[a] == g.edge_u[b])
        | (g.edge_u[a] == g.edge_v[b])
        | (g.edge_v[a] == g.edge_u[b])
        | (g.edge_v[a] == g.edge_v[b])
    )
    # A shared graph vertex rules out a proper crossing; only collinear
    # overlap is still possible there.  Filter those cheaply: all four
    # orientations must be (possibly) zero and the 1-D projections must
    # overlap in more than a point, otherwise the pair is a plain junction.
    proper_fast &= ~shared
    maybe_zero = ~(sure1 | sure2 | sure3 | sure4)
    use_x = np.abs(bx - ax) >= np.abs(by - ay)
    p_lo = np.where(use_x, np.minimum(ax, bx), np.minimum(ay, by))
    p_hi = np.where(use_x, np.maximum(ax, bx), np.maximum(ay, by))
    q_lo = np.where(use_x, np.minimum(cx, dx), np.minimum(cy, dy))
    q_hi = np.where(use_x, np.maximum(cx, dx), np.maximum(cy, dy))
    positive_overlap = np.minimum(p_hi, q_hi) > np.maximum(p_lo, q_lo)
    shared_suspect = shared & maybe_zero & positive_overlap
    ambiguous = (ambiguous & ~shared) | shared_suspect

    records = []
    idx = np.flatnonzero(proper_fast)
    if len(idx):
        rx = bx[idx] - ax[idx]
        ry = by[idx] - ay[idx]
        sx = dx[idx] - cx[idx]
        sy = dy[idx] - cy[idx]
        denom = rx * sy - ry * sx
        t = ((cx[idx] - ax[idx]) * sy - (cy[idx] - ay[idx]) * sx) / denom
        px = ax[idx] + t * rx
        py = ay[idx] + t * ry
        for k, row in enumerate(idx):
            e1, e2 = int(a[row]), int(b[row])
            lv = tuple(sorted((int(g.edge_level[e1]), int(g.edge_level[e2]))))
            records.append(
                CrossingRecord(e1, e2, (float(px[k]), float(py[k])), lv, PROPER)
            )

    for row in np.flatnonzero(ambiguous):
        e1, e2 = int(a[row]), int(b[row])
        kind, point = geometry.segment_contact(
            float(ax[row]), float(ay[row]), float(bx[row]), float(by[row]),
            float(cx[row]), float(cy[row]), float(dx[row]), float(dy[row]),
        )
        if kind is None:
            continue
        if shared[row] and kind != COLLINEAR_OVERLAP:
            continue  # planned junction, not a crossing
        lv = tuple(sorted((int(g.edge_level[e1]), int(g.edge_level[e2]))))
        records.append(CrossingRecord(e1, e2, point, lv, kind))

    records.sort(key=lambda r: (r.e1, r.e2))
    return records


@dataclass(frozen=True)
class PlanarizedGraph:
    """Input graph with every proper crossing promoted to a degree-4 vertex."""

    graph: GeometricGraph
    base: GeometricGraph
    crossing_vertices: tuple
    split_edges: dict


def planarize(g: GeometricGraph, records, verify: bool = True) -> PlanarizedGraph:
    """Split edges at their proper crossing points.

    Crossing vertices get fresh ids n, n+1, ... in record order; each split
    edge becomes a chain of collinear sub-edges whose weights divide the
    original weight proportionally to arc length.  Collinear overlaps are
    unsupported degeneracies.
    """
    for r in records:
        if r.kind == COLLINEAR_OVERLAP:
            raise DegeneracyError(
                f"collinear overlapping edges ({r.e1}, {r.e2}) cannot be planarized"
            )
    proper = sorted(proper_only(records), key=lambda r: (r.e1, r.e2))

    n = g.n
    points = [tuple(p) for p in g.xy]
    crossing_vertices = []
    cuts: dict[int, list[tuple[float, int]]] = {}
    for i, r in enumerate(proper):
        vid = n + i
        crossing_vertices.append((vid, r.point, r.e1, r.e2))
        points.append(r.point)
        for e in (r.e1, r.e2):
            ux, uy = g.xy[g.edge_u[e]]
            vx, vy = g.xy[g.edge_v[e]]
            ln2 = (vx - ux) ** 2 + (vy - uy) ** 2
            t = ((r.point[0] - ux) * (vx - ux) + (r.point[1] - uy) * (vy - uy)) / ln2
            if not 0.0 < t < 1.0:
                raise DegeneracyError(
                    f"crossing ({r.e1}, {r.e2}) lies numerically on an endpoint"
                )
            cuts.setdefault(e, []).append((t, vid))

    eu, ev, ew, el = [], [], [], []
    split_edges = {}
    for e in range(g.m):
        u, v = int(g.edge_u[e]), int(g.edge_v[e])
        w, lv = float(g.edge_weight[e]), int(g.edge_level[e])
        if e not in cuts:
            split_edges[e] = (len(eu),)
            eu.append(u)
            ev.append(v)
            ew.append(w)
            el.append(lv)
            continue
        chain = sorted(cuts[e])
        ts = [t for t, _ in chain]
        if len(set(ts)) != len(ts):
            raise DegeneracyError(f"concurrent crossings on edge {e}")
        stops = [(0.0, u)] + chain + [(1.0, v)]
        ids = []
        for (t0, a), (t1, b) in zip(stops, stops[1:]):
            ids.append(len(eu))
            eu.append(a)
            ev.append(b)
            ew.append(w * (t1 - t0))
            el.append(lv)
        split_edges[e] = tuple(ids)

    graph = GeometricGraph(
        np.asarray(points, dtype=np.float64), eu, ev, ew, el,
        meta={"planarized_from": g.meta.get("source", "graph")},
    )
    out = PlanarizedGraph(graph, g, tuple(crossing_vertices), split_edges)
    if verify:
        leftover = proper_only(find_crossings(graph))
        if leftover:
            raise InvariantViolation(
                f"planarization left {len(leftover)} proper crossings"
            )
    return out

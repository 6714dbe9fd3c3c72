"""Simplicity and weak simplicity of open polylines.

Weak simplicity is decided combinatorially.  Proper crossings are fatal.  All
other contacts between edges happen at polyline vertices, so the polyline's
image is planarized by splitting every edge at the vertices lying on it.  Each
piece of an edge is a *strand* on an *arc* of the image graph.  A simple
perturbation exists iff every arc can be given a left-to-right order of its
strands such that, around every image vertex, the passages of the polyline
(pairs of strand ends joined at that vertex) form a non-crossing chord
diagram.  Chain endpoints are unconstrained.

Contacts split into independent clusters, and inside a cluster the arcs that
carry more than one strand are solved by backtracking over permutations.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from .geometry import Point, SegmentRelation, cross, on_segment, orientation, segment_relation


def _pt(p) -> Point:
    return p if isinstance(p, Point) else Point(*p)


# ---------------------------------------------------------------------------
# simplicity


def is_simple(points: Sequence) -> bool:
    pts = [_pt(p) for p in points]
    if len(set(pts)) != len(pts):
        return False
    n = len(pts) - 1
    for i in range(n):
        for j in range(i + 1, n):
            rel = segment_relation((pts[i], pts[i + 1]), (pts[j], pts[j + 1]))
            if j == i + 1:
                if rel is SegmentRelation.OVERLAP:
                    return False
            elif rel is not SegmentRelation.DISJOINT:
                return False
    return True


# ---------------------------------------------------------------------------
# weak simplicity


class _Failure(Exception):
    def __init__(self, edges: Iterable[int]):
        super().__init__()
        self.edges = frozenset(edges)


def _angle_cmp(u, v) -> int:
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _noncrossing(labels: Sequence) -> bool:
    """Chords given as a cyclic label sequence (None = unpaired) are nested."""
    stack = []
    open_ = set()
    for lab in labels:
        if lab is None:
            continue
        if lab in open_:
            if not stack or stack[-1] != lab:
                return False
            stack.pop()
            open_.discard(lab)
        else:
            open_.add(lab)
            stack.append(lab)
    return True


def _contract(pts: Sequence[Point]):
    """Drop consecutive duplicates.  Returns (points, runs) where runs[k] lists
    the original indices collapsed into contracted vertex k."""
    out: list[Point] = []
    runs: list[list[int]] = []
    for i, p in enumerate(pts):
        if out and out[-1] == p:
            runs[-1].append(i)
        else:
            out.append(p)
            runs.append([i])
    return out, runs


_BOX_SLACK = 1e-7


def _box(a: Point, b: Point) -> tuple:
    """Float bounding box, widened so that exact contact is never missed."""
    ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
    return (min(ax, bx) - _BOX_SLACK, min(ay, by) - _BOX_SLACK,
            max(ax, bx) + _BOX_SLACK, max(ay, by) + _BOX_SLACK)


def _boxes_meet(u: tuple, v: tuple) -> bool:
    return u[0] <= v[2] and v[0] <= u[2] and u[1] <= v[3] and v[1] <= u[3]


def _edge_contacts(q: Sequence[Point], i: int, j: int):
    """Classify the pair of contracted edges i < j.

    Returns None for no relevant contact, 'contact' for a touch/overlap, and
    raises _Failure for a proper crossing.
    """
    rel = segment_relation((q[i], q[i + 1]), (q[j], q[j + 1]))
    if j == i + 1:
        return "contact" if rel is SegmentRelation.OVERLAP else None
    if rel is SegmentRelation.PROPER_CROSS:
        raise _Failure((i, j))
    if rel is SegmentRelation.DISJOINT:
        return None
    return "contact"


def _solve_cluster(q: Sequence[Point], edges: Sequence[int]) -> None:
    """Raise _Failure if the strands of ``edges`` admit no consistent order."""
    edge_set = set(edges)
    verts = sorted({q[e] for e in edges} | {q[e + 1] for e in edges})

    # split edges into strands along arcs
    arcs: dict[tuple, list] = {}       # (u, w) with u < w -> list of strand ids
    strand_arc: dict[tuple, tuple] = {}
    ends: dict[Point, list] = {v: [] for v in verts}  # v -> [(strand, chord label)]
    for e in edges:
        a, b = q[e], q[e + 1]
        inner = [v for v in verts if v != a and v != b and on_segment(v, a, b)]
        key = (lambda v: v[0]) if a[0] != b[0] else (lambda v: v[1])
        inner.sort(key=key, reverse=key(a) > key(b))
        chain = [a] + inner + [b]
        for k in range(len(chain) - 1):
            u, w = chain[k], chain[k + 1]
            arc = (u, w) if u < w else (w, u)
            sid = (e, k)
            arcs.setdefault(arc, []).append(sid)
            strand_arc[sid] = arc
            # chord labels: interior passage of edge e at chain[k+1]
            if k + 1 < len(chain) - 1:
                ends[w].append((sid, ("thru", e, k)))
            if k > 0:
                ends[u].append((sid, ("thru", e, k - 1)))
        last = (e, len(chain) - 2)
        first = (e, 0)
        # polyline vertex passages
        ends[b].append((last, ("vtx", e + 1) if (e + 1) in edge_set else None))
        ends[a].append((first, ("vtx", e) if (e - 1) in edge_set else None))

    # incident arcs per vertex in ccw order
    incident: dict[Point, list] = {v: [] for v in verts}
    for arc in arcs:
        incident[arc[0]].append(arc)
        incident[arc[1]].append(arc)
    for v, lst in incident.items():
        lst.sort(key=cmp_to_key(lambda A, B, v=v: _angle_cmp(
            _other(A, v) - v, _other(B, v) - v)))

    label_at: dict[Point, dict] = {v: {} for v in verts}
    for v, lst in ends.items():
        for sid, lab in lst:
            label_at[v][sid] = lab

    multi = [a for a, s in arcs.items() if len(s) > 1]
    multi_set = set(multi)

    def vertex_ok(v, order) -> bool:
        seq = []
        for arc in incident[v]:
            strands = order[arc] if arc in multi_set else arcs[arc]
            # at the arc's smaller endpoint the ccw order is the reversed list
            it = reversed(strands) if arc[0] == v else strands
            seq.extend(label_at[v][s] for s in it)
        return _noncrossing(seq)

    def vertex_edges(v):
        return {sid[0] for sid in label_at[v]}

    # vertices touching no multi-strand arc are checked outright
    vert_multis = {v: [a for a in incident[v] if a in multi_set] for v in verts}
    for v in verts:
        if not vert_multis[v] and not vertex_ok(v, {}):
            raise _Failure(vertex_edges(v))

    # components of multi-strand arcs linked through shared vertices
    seen: set = set()
    for start in multi:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            arc = stack.pop()
            comp.append(arc)
            for v in arc:
                for other in vert_multis[v]:
                    if other not in seen:
                        seen.add(other)
                        stack.append(other)
        # BFS-like order keeps checks close to assignments
        comp = _bfs_order(comp, vert_multis)
        pos = {a: i for i, a in enumerate(comp)}
        check_after: list[list] = [[] for _ in comp]
        comp_verts = set()
        for arc in comp:
            comp_verts.update(arc)
        for v in comp_verts:
            last = max(pos[a] for a in vert_multis[v])
            check_after[last].append(v)
        order: dict = {}
        if not _search(0, comp, arcs, order, check_after, vertex_ok):
            bad = set()
            for v in comp_verts:
                bad |= vertex_edges(v)
            raise _Failure(bad)


def _fails(q: Sequence[Point], edges: Sequence[int]) -> bool:
    edges = sorted(edges)
    try:
        for a in range(len(edges)):
            for b in range(a + 1, len(edges)):
                _edge_contacts(q, edges[a], edges[b])
        _solve_cluster(q, edges)
    except _Failure:
        return True
    return False


def _shrink(q: Sequence[Point], edges, keep: int) -> frozenset:
    """Deletion filter: drop edges whose removal still leaves a failing set.

    Sub-collections of a weakly simple polyline are weakly simple, so any
    failing subset is a valid explanation; smaller ones let the search jump
    further back.  Newest edges are tried first, so the surviving explanation
    leans on early choices and the backjump target moves as far up as it can.
    """
    cur = set(edges)
    for e in sorted(edges, reverse=True):
        if e == keep or e not in cur or len(cur) <= 2:
            continue
        cur.discard(e)
        if not _fails(q, cur):
            cur.add(e)
    return frozenset(cur)


def _other(arc, v):
    return arc[1] if arc[0] == v else arc[0]


def _bfs_order(comp, vert_multis):
    comp_set = set(comp)
    start = min(comp)
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        arc = order[i]
        i += 1
        for v in arc:
            for other in sorted(vert_multis[v]):
                if other in comp_set and other not in seen:
                    seen.add(other)
                    order.append(other)
    return order


def _search(i, comp, arcs, order, check_after, vertex_ok) -> bool:
    if i == len(comp):
        return True
    arc = comp[i]
    for perm in itertools.permutations(arcs[arc]):
        order[arc] = perm
        if all(vertex_ok(v, order) for v in check_after[i]):
            if _search(i + 1, comp, arcs, order, check_after, vertex_ok):
                return True
    del order[arc]
    return False


class _Clusters:
    """Union-find over contracted edge indices."""

    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self):
        out: dict[int, list] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return [sorted(g) for g in out.values()]


def weak_simplicity_conflict(points: Sequence) -> frozenset | None:
    """None if the polyline is weakly simple, otherwise a set of vertex indices
    whose positions alone already rule weak simplicity out."""
    pts = [_pt(p) for p in points]
    q, runs = _contract(pts)
    m = len(q) - 1
    uf = _Clusters()
    boxes = [_box(q[i], q[i + 1]) for i in range(m)]
    by_x = sorted(range(m), key=lambda i: boxes[i][0])
    try:
        # sweep in x; only box-overlapping pairs get the exact test
        for a, i in enumerate(by_x):
            bi = boxes[i]
            for j in by_x[a + 1:]:
                bj = boxes[j]
                if bj[0] > bi[2]:
                    break
                if bj[1] <= bi[3] and bi[1] <= bj[3]:
                    lo, hi = (i, j) if i < j else (j, i)
                    if _edge_contacts(q, lo, hi):
                        uf.union(lo, hi)
        for group in uf.groups():
            _solve_cluster(q, group)
    except _Failure as f:
        idx = set()
        for e in f.edges:
            idx.update(runs[e])
            idx.update(runs[e + 1])
        return frozenset(idx)
    return None


def is_weakly_simple(points: Sequence) -> bool:
    return weak_simplicity_conflict(points) is None


class IncrementalChecker:
    """Weak-simplicity test for a growing prefix, used by depth-first search.

    ``push`` appends a vertex and returns None when the prefix is still weakly
    simple, else a conflict set of vertex indices.  ``pop`` undoes a push.
    Only the contact cluster containing the newly added edge is re-solved.
    """

    def __init__(self, shrink: bool = True):
        self.shrink = shrink
        self.pts: list[Point] = []
        self.q: list[Point] = []
        self.runs: list[list[int]] = []
        self.contacts: list[list[int]] = []   # per contracted edge: earlier edges in contact
        self.boxes: list[tuple] = []          # float bounding box per contracted edge
        self._log: list[str] = []

    def push(self, p) -> frozenset | None:
        p = _pt(p)
        idx = len(self.pts)
        self.pts.append(p)
        if self.q and self.q[-1] == p:
            self.runs[-1].append(idx)
            self._log.append("dup")
            return None
        self.q.append(p)
        self.runs.append([idx])
        self._log.append("new")
        m = len(self.q) - 1
        if m == 0:
            return None
        e = m - 1
        q = self.q
        touched = []
        box = _box(q[e], q[e + 1])
        self.boxes.append(box)
        boxes = self.boxes
        try:
            for j in range(e):
                if _boxes_meet(boxes[j], box) and _edge_contacts(q, j, e):
                    touched.append(j)
        except _Failure as f:
            self.contacts.append([])
            return self._conflict(f.edges)
        self.contacts.append(touched)
        if not touched:
            return None
        group = self._cluster_of(e)
        try:
            _solve_cluster(q, group)
        except _Failure as f:
            edges = f.edges
            if self.shrink and len(edges) > 2:
                edges = _shrink(q, edges, e)
            return self._conflict(edges)
        return None

    def _cluster_of(self, e):
        adj: dict[int, set] = {}
        for k, lst in enumerate(self.contacts):
            for j in lst:
                adj.setdefault(k, set()).add(j)
                adj.setdefault(j, set()).add(k)
        seen = {e}
        stack = [e]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def _conflict(self, edges):
        idx = set()
        for e in edges:
            idx.update(self.runs[e])
            idx.update(self.runs[e + 1])
        return frozenset(idx)

    def pop(self) -> None:
        kind = self._log.pop()
        self.pts.pop()
        if kind == "dup":
            self.runs[-1].pop()
            return
        self.q.pop()
        self.runs.pop()
        if self.q:
            self.contacts.pop()
            self.boxes.pop()


# ---------------------------------------------------------------------------
# order type


class Side(enum.Enum):
    ABOVE = "above"
    ON = "on"
    BELOW = "below"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class OrderType:
    """entries[v][e]: side of vertex v relative to the supporting line of edge e.

    "Above" means to the left of the edge's direction (counterclockwise side);
    for an edge pointing in +x this is the usual meaning.
    """

    entries: tuple

    def __getitem__(self, key):
        v, e = key
        return self.entries[v][e]


def order_type(points: Sequence) -> OrderType:
    pts = [_pt(p) for p in points]
    rows = []
    for v in pts:
        row = []
        for e in range(len(pts) - 1):
            a, b = pts[e], pts[e + 1]
            if a == b:
                row.append(Side.DEGENERATE)
                continue
            o = orientation(a, b, v)
            row.append(Side.ABOVE if o > 0 else Side.BELOW if o < 0 else Side.ON)
        rows.append(tuple(row))
    return OrderType(tuple(rows))


# ---------------------------------------------------------------------------
# brute-force perturbation oracle


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)


def _offsets(grid: int):
    return [(i, j) for i in range(-grid, grid + 1) for j in range(-grid, grid + 1)
            if i * i + j * j <= grid * grid]


def _extension_mask(X, Y, cx, cy) -> np.ndarray:
    """(rows, K) mask: appending candidate k to prefix row r keeps it simple.

    X, Y hold one column per placed vertex; the prefixes are already simple.
    """
    k = len(X)
    nx = cx[None, :]
    ny = cy[None, :]
    ok = np.ones((len(X[0]) if k else 1, len(cx)), dtype=bool)
    for i in range(k):
        ok &= (X[i][:, None] != nx) | (Y[i][:, None] != ny)
    if k == 0:
        return ok
    ax = X[k - 1][:, None]
    ay = Y[k - 1][:, None]
    if k >= 2:
        # adjacent edges fold back onto each other
        ux = X[k - 2][:, None] - ax
        uy = Y[k - 2][:, None] - ay
        wx = nx - ax
        wy = ny - ay
        ok &= ~(((ux * wy - uy * wx) == 0) & ((ux * wx + uy * wy) > 0))
    for j in range(k - 2):
        ok &= ~_segments_meet(ax, ay, nx, ny, X[j][:, None], Y[j][:, None],
                              X[j + 1][:, None], Y[j + 1][:, None])
    return ok


def _orient(px, py, qx, qy, rx, ry):
    return np.sign((qx - px) * (ry - py) - (qy - py) * (rx - px))


def _segments_meet(ax, ay, bx, by, cx, cy, dx, dy) -> np.ndarray:
    o1 = _orient(ax, ay, bx, by, cx, cy)
    o2 = _orient(ax, ay, bx, by, dx, dy)
    o3 = _orient(cx, cy, dx, dy, ax, ay)
    o4 = _orient(cx, cy, dx, dy, bx, by)
    general = (o1 * o2 <= 0) & (o3 * o4 <= 0)
    collinear = (o1 == 0) & (o2 == 0) & (o3 == 0) & (o4 == 0)
    box = ((np.maximum(np.minimum(ax, bx), np.minimum(cx, dx))
            <= np.minimum(np.maximum(ax, bx), np.maximum(cx, dx)))
           & (np.maximum(np.minimum(ay, by), np.minimum(cy, dy))
              <= np.minimum(np.maximum(ay, by), np.maximum(cy, dy))))
    return np.where(collinear, box, general)


def perturbation_oracle(points: Sequence, radius, grid: int) -> list[Point] | None:
    """Exhaustively search grid perturbations for a simple one.

    Each vertex may move by ``(i, j) * radius / grid`` for integers with
    ``i^2 + j^2 <= grid^2``.  Returns the lexicographically first simple
    perturbation (offsets enumerated in row-major order) or None.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    pts = [_pt(p) for p in points]
    if not pts:
        return None
    radius = Fraction(radius)
    step = radius / grid
    denom = step.denominator
    for p in pts:
        denom = _lcm(denom, Fraction(p.x).denominator)
        denom = _lcm(denom, Fraction(p.y).denominator)
    ints = [(int(Fraction(p.x) * denom), int(Fraction(p.y) * denom)) for p in pts]
    s = int(step * denom)
    offs = np.array(_offsets(grid), dtype=np.int64) * s
    bound = max([abs(c) for xy in ints for c in xy] + [1]) + abs(int(radius * denom))
    dtype = np.int64 if bound < 2 ** 28 else object
    offs = offs.astype(dtype)
    base = np.array(ints, dtype=dtype)
    cands = [(bx + offs[:, 0], by + offs[:, 1]) for bx, by in base]
    hit = _first_extension([], [], cands)
    if hit is None:
        return None
    return [Point(Fraction(int(x), denom), Fraction(int(y), denom)) for x, y in hit]


_CHUNK = 4096


def _first_extension(X, Y, cands):
    """Depth-first over blocks of prefixes; rows stay in row-major order so
    the first hit is the lexicographically first simple perturbation."""
    k = len(X)
    cx, cy = cands[k]
    mask = _extension_mask(X, Y, cx, cy)
    rows, cols = np.nonzero(mask)
    if len(rows) == 0:
        return None
    if k == len(cands) - 1:
        r, c = int(rows[0]), int(cols[0])
        return [(X[i][r], Y[i][r]) for i in range(k)] + [(cx[c], cy[c])]
    for lo in range(0, len(rows), _CHUNK):
        rr, cc = rows[lo:lo + _CHUNK], cols[lo:lo + _CHUNK]
        hit = _first_extension([col[rr] for col in X] + [cx[cc]],
                               [col[rr] for col in Y] + [cy[cc]], cands)
        if hit is not None:
            return hit
    return None

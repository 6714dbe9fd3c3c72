"""Compile a monotone 3CNF formula with a rectilinear layout into one imprecise
polyline, and turn satisfying assignments into weakly simple realisations.

Geometry of the top half (the bottom half is built the same way in a mirrored
frame, then reflected in the x-axis and traversed in reverse):

* Variables sit on the x-axis, left to right, chained region 6 -> region 1.
  Wire feet sit on the horizontal 5-6 edge; when the variable is false that
  edge lies at y = +1 and pins every top foot to its topmost point.
* Every wire is drawn as a spur: foot, bend region(s), literal, then the same
  regions back to the foot.  Each hop of a wire is forced through a pivot.
* A single *walker* visits everything else.  Per clause it climbs on the
  right, draws the clause cup, hugs the right wire's outer side down to its
  foot, crosses under the spur into the right pocket, hugs the pocket side of
  the right and middle wires (visiting their pivot components), handles the
  nested clauses of that pocket, crosses the middle spur, does the same for
  the left pocket and finally leaves along the left wire's outer side.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .gadgets import (CLAUSE_DISK_CORNERS, CLAUSE_DISK_FALSE, CLAUSE_DISK_LITERALS,
                      CLAUSE_DISK_TRUE, CLAUSE_VSEG_CORNERS, CLAUSE_VSEG_FALSE,
                      CLAUSE_VSEG_LITERALS, CLAUSE_VSEG_PIVOTS, CLAUSE_VSEG_TRUE,
                      ROT0, ROT90, ROT180, ROT270, GadgetError, PivotParams, Rotation,
                      X2_Y, build_variable, VariableParams, pivot_components,
                      pivot_top_local, snap, uncovered_positions,
                      validate_pivot_placement, variable_state)
from .geometry import Point, P, on_segment
from .instance import (ImprecisePolyline, Realisation, Region, ShapeKind,
                       extreme_points, format_rat, EXTREMES_AND_CENTER)
from .sat import Formula, Layout, Polarity, _padded

F = Fraction


class CompileError(ValueError):
    """Inputs that cannot be compiled."""


class AssignmentError(ValueError):
    """The assignment does not satisfy the formula."""


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class Stop:
    """One region of the compiled polyline, tagged with its role."""
    center: Point
    key: tuple          # ("conn",) | ("var", v, k) | ("wire", name, k) | ("corner", cid, k)
                        # | ("pivot", pid, comp, k)


@dataclass
class Placement:
    kind: str
    name: str
    origin: Point
    rotation: Rotation
    params: dict
    splice: int = -1                                  # order of first appearance
    slots: list = field(default_factory=list)        # region index ranges (start, stop)


@dataclass
class Wire:
    name: str
    points: list                 # foot ... literal (region centers)
    pivots: list                 # one pivot id per hop


@dataclass
class ClauseGeom:
    cid: int
    half: str                    # "top" | "bottom"
    legs: tuple
    origin: Point                # top-left corner region, half frame
    cy: Fraction
    wires: dict                  # "l" / "m" / "r" -> Wire
    corners: list
    literals: list
    pivots: list                 # clause pivot ids (vertical segments)
    left: list = field(default_factory=list)        # child clause ids, right to left
    right: list = field(default_factory=list)


@dataclass
class CompiledInstance:
    instance: ImprecisePolyline
    placements: list
    anchors: dict                # anchor name -> region index
    formula: Formula
    layout: Layout
    shape: ShapeKind
    stops: list = field(default_factory=list, repr=False)
    clauses: dict = field(default_factory=dict, repr=False)
    pivots: dict = field(default_factory=dict, repr=False)     # pid -> (PivotParams, half)
    var_origins: dict = field(default_factory=dict, repr=False)
    var_l: dict = field(default_factory=dict, repr=False)
    eps: Fraction = F(0)
    bottom_start: int = 0        # index of the first stop of the mirrored half
    source_shape: Optional[ShapeKind] = None     # set by to_square_or_diamond

    def sidecar(self) -> str:
        """Structured text mapping anchors to region indices, plus placements."""
        lines = [f"shape {self.instance.shape.value}", f"regions {len(self.instance)}",
                 f"eps {format_rat(self.eps)}"]
        for name in sorted(self.anchors, key=_natural):
            lines.append(f"anchor {name} {self.anchors[name]}")
        for pl in self.placements:
            slots = " ".join(f"{a}:{b}" for a, b in pl.slots)
            params = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(pl.params.items()))
            lines.append(f"placement {pl.splice} {pl.kind} {pl.name} "
                         f"origin={format_rat(pl.origin[0])},{format_rat(pl.origin[1])} "
                         f"rot={format_rat(pl.rotation.c)},{format_rat(pl.rotation.s)} "
                         f"{params} slots={slots}".rstrip())
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, (int, Fraction)):
        return format_rat(v)
    if isinstance(v, (tuple, list)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


def _natural(name: str):
    import re
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


# ---------------------------------------------------------------------------
# float helpers for connector placement (never used for gadget coordinates)


def _unit(a, b):
    dx, dy = float(b[0] - a[0]), float(b[1] - a[1])
    h = (dx * dx + dy * dy) ** 0.5
    return dx / h, dy / h


def _left(d):
    return -d[1], d[0]


def _sp(p, *terms) -> Point:
    """p + sum(k * v) snapped to the quarter grid."""
    x, y = 0.0, 0.0
    for k, v in terms:
        x += k * v[0]
        y += k * v[1]
    return Point(F(p[0]) + snap(x), F(p[1]) + snap(y))


def _dot(u, v) -> float:
    return float(u[0]) * float(v[0]) + float(u[1]) * float(v[1])


OUTER = 7          # extra offset from inner to outer portal
LANE = 20          # offset of climb/descent lanes from a wire


# ---------------------------------------------------------------------------
# compiler


class _Compiler:
    def __init__(self, f: Formula, lay: Layout, shape: ShapeKind):
        if shape not in (ShapeKind.DISK, ShapeKind.VSEG):
            raise CompileError("compile supports disk and vseg; use to_square_or_diamond "
                               "for squares")
        self.f, self.lay, self.shape = f, lay, shape
        self.vseg = shape is ShapeKind.VSEG
        self.pos = {v: i for i, v in enumerate(lay.order)}
        self.pivots: dict = {}          # pid -> [center, rot, end_a, end_b, half]
        self.clauses: dict = {}
        self.eps = None

    # -- combinatorics ----------------------------------------------------

    def _legs(self, cid):
        return self.lay.clause_layout(cid).legs

    def _span(self, cid):
        legs = self._legs(cid)
        return self.pos[legs[0]], self.pos[legs[1]], self.pos[legs[2]]

    def _sorted(self, cids):
        # right to left
        return sorted(cids, key=lambda c: (-self._span(c)[2], -self._span(c)[0], c))

    def _pockets(self, cid, side):
        lo, mo, ro = self._span(cid)
        left, right = [], []
        for ch in self.lay.children(cid, side):
            li, _, ri = self._span(ch.clause)
            if lo <= li and ri <= mo:
                left.append(ch.clause)
            else:
                right.append(ch.clause)
        return self._sorted(left), self._sorted(right)

    def _walk_feet(self, roots, side, out):
        for cid in roots:
            legs = self._legs(cid)
            left, right = self._pockets(cid, side)
            out.append((cid, "r", legs[2]))
            self._walk_feet(right, side, out)
            out.append((cid, "m", legs[1]))
            self._walk_feet(left, side, out)
            out.append((cid, "l", legs[0]))

    def _height(self, cid, side) -> Fraction:
        left, right = self._pockets(cid, side)
        kids = [self._height(c, side) + 21 for c in left + right]
        base, k = (F(80), F(80)) if self.vseg else (F(60), F(60))
        return max([base] + [2 * t + k for t in kids])

    # -- layout -----------------------------------------------------------

    def build(self) -> CompiledInstance:
        lay = self.lay
        roots = {s: self._sorted([c.clause for c in lay.children(None, s)])
                 for s in ("top", "bottom")}
        feet_order = {}
        for s in ("top", "bottom"):
            seq = []
            self._walk_feet(roots[s], s, seq)
            feet_order[s] = seq
        heights = {}
        for s in ("top", "bottom"):
            for cid, _, _ in feet_order[s]:
                if cid not in heights:
                    heights[cid] = self._height(cid, s)
        cy_max = max(heights.values(), default=F(0))
        S = (2 * cy_max + 60) if self.vseg else F(60)
        self.S = S
        counts = {v: {"top": 0, "bottom": 0} for v in lay.order}
        for s in ("top", "bottom"):
            for _, _, v in feet_order[s]:
                counts[v][s] += 1
        # variable origins and lengths
        x = F(0)
        self.var_origin, self.var_l = {}, {}
        for v in lay.order:
            n = counts[v]["top"] + counts[v]["bottom"]
            self.var_l[v] = 9 + S * (n + 1)
            self.var_origin[v] = x
            x += self.var_l[v] + S
        self.x_end = x - S
        # foot positions: first visited is rightmost
        feet = {}
        for s in ("top", "bottom"):
            seen = {v: 0 for v in lay.order}
            for cid, w, v in feet_order[s]:
                k = seen[v]
                seen[v] += 1
                nt = counts[v]["top"]
                base = self.var_origin[v] + 9
                if s == "top":
                    fx = base + S * (nt - k)
                else:
                    fx = base + S * nt + S * (counts[v]["bottom"] - k)
                feet[(cid, w)] = fx
        for s in ("top", "bottom"):
            for cid, _, _ in feet_order[s]:
                if cid not in self.clauses:
                    self._place_clause(cid, s, heights[cid], feet)
        # uniform eps
        bounds = []
        for pid, (c, rot, a, b, _half) in self.pivots.items():
            try:
                bounds.append(validate_pivot_placement(c, rot, a, b, self.shape))
            except GadgetError as exc:
                raise CompileError(f"pivot {pid}: {exc}") from None
        self.eps = min(bounds, default=F(1)) / 2
        # routes
        stops = []
        for v in lay.order:
            g = build_variable(VariableParams(P(self.var_origin[v], 0), self.var_l[v]))
            stops += [Stop(c, ("var", v, k)) for k, c in enumerate(g.centers)]
        top = self._half_route(roots["top"])
        bottom = self._half_route(roots["bottom"])
        stops += top
        bottom_start = len(stops)
        for st in reversed(bottom):
            stops.append(Stop(Point(st.center.x, -st.center.y), st.key))
        return self._finish(stops, bottom_start)

    def _add_pivot(self, pid, center, rot, end_a, end_b, half):
        self.pivots[pid] = [center, rot, end_a, end_b, half]
        return pid

    def _hop_pivot(self, pid, a, b, half):
        """Unrotated pivot at the midpoint of hop a -> b."""
        c = Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        ea, eb = (a, b) if b[0] > a[0] else (b, a)
        return self._add_pivot(pid, c, ROT0, ea, eb, half)

    def _place_clause(self, cid, half, cy, feet):
        xl, xm, xr = feet[(cid, "l")], feet[(cid, "m")], feet[(cid, "r")]
        name = f"c{cid}"
        left, right = self._pockets(cid, half)
        if self.vseg:
            cx = xm + cy - 19
            o = P(cx, cy)
            corners = [c + o for c in CLAUSE_VSEG_CORNERS]
            lits = [c + o for c in CLAUSE_VSEG_LITERALS]
            d = lits[0].y
            if (xr - d) - lits[2].x < 30 or lits[0].x - (xl + d) < 30:
                raise CompileError(f"clause {cid}: wires too short")
            wl = Wire(f"{name}.l", [P(xl, 0), P(xl + d, d), lits[0]], [])
            wr = Wire(f"{name}.r", [P(xr, 0), P(xr - d, d), lits[2]], [])
            mid = Point(lits[1].x - 16, lits[1].y - 24)
            wm = Wire(f"{name}.m", [P(xm, 0), mid, lits[1]], [])
            for w in (wl, wm, wr):
                for i in range(2):
                    w.pivots.append(self._hop_pivot(f"{w.name}.p{i + 1}", w.points[i],
                                                    w.points[i + 1], half))
            cps = []
            for i, c in enumerate(CLAUSE_VSEG_PIVOTS):
                ends = (corners[1], corners[2]) if i == 0 else (corners[3], corners[4])
                cps.append(self._add_pivot(f"{name}.p{i + 1}", c + o, ROT0, ends[0], ends[1], half))
        else:
            cx = xm - 3
            o = P(cx, cy)
            corners = [c + o for c in CLAUSE_DISK_CORNERS]
            lits = [c + o for c in CLAUSE_DISK_LITERALS]
            b = cy - 3
            if xr - cx - 5 < 30 or cx + 1 - xl < 30:
                raise CompileError(f"clause {cid}: wires too short")
            wr = Wire(f"{name}.r", [P(xr, 0), P(xr + 1, b + 1), lits[2]], [])
            wl = Wire(f"{name}.l", [P(xl, 0), P(xl - 1, b + 1), lits[0]], [])
            ar, al = xr - cx - 5, cx + 1 - xl
            # first hop: pivot halfway up the foot's vertical; second hop: pivot
            # halfway along the false line at the bend's height
            for w, x2, rot in ((wr, xr + 1 - ar / 2, ROT180), (wl, xl - 1 + al / 2, ROT0)):
                foot, bend, lit = w.points
                w.pivots.append(self._add_pivot(f"{w.name}.p1", P(foot.x, 1 + b / 2), ROT90,
                                                foot, bend, half))
                w.pivots.append(self._add_pivot(f"{w.name}.p2", P(x2, b + 1), rot,
                                                bend, lit, half))
            h = lits[1].y
            wm = Wire(f"{name}.m", [P(xm, 0), lits[1]], [])
            # one pivot on the vertical through the foot, halfway up the true line
            wm.pivots.append(self._add_pivot(f"{name}.m.p1", P(xm, (h - 1) / 2), ROT90,
                                             wm.points[0], wm.points[1], half))
            cps = []
        self.clauses[cid] = ClauseGeom(cid, half, self._legs(cid), o, cy,
                                       {"l": wl, "m": wm, "r": wr}, corners, lits, cps,
                                       left, right)

    # -- routing ----------------------------------------------------------

    def _comp(self, pid, which):
        c, rot, _, _, _ = self.pivots[pid]
        top, bottom = pivot_components(self.shape, PivotParams(c, rot, self.eps))
        return top if which == "top" else bottom

    def _comp_stops(self, pid, which, reverse=False):
        pts = self._comp(pid, which)
        idx = list(range(len(pts)))
        if reverse:
            idx.reverse()
        return [Stop(pts[k], ("pivot", pid, which, k)) for k in idx]

    @staticmethod
    def _conn(p) -> Stop:
        return Stop(Point(F(p[0]), F(p[1])), ("conn",))

    def _hug(self, w: Wire, side: str, up: bool) -> list:
        hops = list(range(len(w.points) - 1))
        if not up:
            hops.reverse()
        out = []
        prev = None            # (t, n) of the previous hop
        for i in hops:
            a, b = w.points[i], w.points[i + 1]
            d = _unit(a, b)
            n = _left(d) if side == "L" else (d[1], -d[0])
            t = d if up else (-d[0], -d[1])
            pid = w.pivots[i]
            rot = self.pivots[pid][1]
            upv = rot.apply((0, 1))
            which = "top" if _dot(upv, n) > 0 else "bottom"
            along = rot.apply((1, 0)) if which == "top" else rot.apply((-1, 0))
            rev = _dot(along, t) < 0
            comp = self._comp_stops(pid, which, rev)
            first, last = comp[0].center, comp[-1].center
            if prev is not None:
                pt, pn = prev
                if _dot(t, pn) < 0:
                    # convex bend on this side: corner waypoint on both offset lines
                    bend = w.points[i] if up else w.points[i + 1]
                    k = (1.5 + 2 + OUTER) / (1 + _dot(pn, n))
                    out.append(self._conn(_sp(bend, (k, pn), (k, n))))
            out.append(self._conn(_sp(first, (-5, t), (1.5 + OUTER, n))))
            out.append(self._conn(_sp(first, (-5, t), (1.5, n))))
            out += comp
            out.append(self._conn(_sp(last, (5, t), (1.5, n))))
            out.append(self._conn(_sp(last, (5, t), (1.5 + OUTER, n))))
            prev = (t, n)
        return out

    def _offset(self, w: Wire, side: str, dist, y) -> Point:
        """Point at height y on the line parallel to the wire's first hop,
        shifted ``dist`` to the given side."""
        a, b = w.points[0], w.points[1]
        d = _unit(a, b)
        n = _left(d) if side == "L" else (d[1], -d[0])
        s = (float(y) - float(a[1]) - dist * n[1]) / d[1]
        return Point(F(a[0]) + snap(dist * n[0] + s * d[0]), F(y))

    def _foot(self, w: Wire, side: str) -> Stop:
        f = w.points[0]
        return self._conn((f[0] + (-12 if side == "L" else 12), 4))

    def _spur(self, w: Wire) -> list:
        n = len(w.points)
        out = [Stop(p, ("wire", w.name, k)) for k, p in enumerate(w.points)]
        out += [Stop(w.points[k], ("wire", w.name, 2 * (n - 1) - k)) for k in range(n - 2, -1, -1)]
        return out

    def _pocket(self, kids, wall_left: tuple, wall_right: tuple) -> list:
        if not kids:
            return []
        y1 = max(self._top(c) for c in kids) + 10
        wl, sl = wall_left
        wr, sr = wall_right
        out = [self._conn(self._offset(wl, sl, LANE, y1)),
               self._conn(self._offset(wr, sr, LANE, y1)),
               self._conn(self._offset(wr, sr, LANE, 6))]
        for c in kids:
            out += self._clause_route(c)
        return out

    def _top(self, cid) -> Fraction:
        return self.clauses[cid].cy + 21

    def _clause_route(self, cid) -> list:
        g = self.clauses[cid]
        wl, wm, wr = g.wires["l"], g.wires["m"], g.wires["r"]
        cx, cy = g.origin
        out = [self._conn(self._offset(wr, "R", LANE, 6)),
               self._conn(self._offset(wr, "R", LANE, cy + 20))]
        if self.vseg:
            pa, pb = g.pivots
            out.append(self._conn((cx + 9 + self.eps, cy + 20)))
            out += self._comp_stops(pb, "top", reverse=True)
            out.append(self._conn((cx + 5, cy + 1)))
            out += self._comp_stops(pa, "top", reverse=True)
            out.append(self._conn((cx + 1 - self.eps, cy + 3)))
        else:
            out.append(self._conn((cx + 3, cy + 20)))
        out += [Stop(c, ("corner", cid, k)) for k, c in enumerate(g.corners)]
        out += self._hug(wr, "R", up=False)
        out.append(self._foot(wr, "R"))
        out += self._spur(wr)
        out.append(self._foot(wr, "L"))
        out += self._hug(wr, "L", up=True)
        if self.vseg:
            out += self._comp_stops(g.pivots[1], "bottom")
        out += self._hug(wm, "R", up=False)
        out += self._pocket(g.right, (wm, "R"), (wr, "L"))
        out.append(self._foot(wm, "R"))
        out += self._spur(wm)
        out.append(self._foot(wm, "L"))
        out += self._hug(wm, "L", up=True)
        if self.vseg:
            out.pop()       # the outer portal would wall off the cup pivot
            out += self._comp_stops(g.pivots[0], "bottom")
        out += self._hug(wl, "R", up=False)
        out += self._pocket(g.left, (wl, "R"), (wm, "L"))
        out.append(self._foot(wl, "R"))
        out += self._spur(wl)
        out.append(self._foot(wl, "L"))
        out += self._hug(wl, "L", up=True)
        last = out[-1].center
        out.append(self._conn((last.x, cy + 14)))
        out.append(self._conn(self._offset(wl, "L", LANE, cy + 14)))
        out.append(self._conn(self._offset(wl, "L", LANE, 6)))
        return out

    def _half_route(self, roots) -> list:
        out = [self._conn((self.x_end + 10, 6))]
        for cid in roots:
            out += self._clause_route(cid)
        out.append(self._conn((-20, 6)))
        return out

    # -- assembly ---------------------------------------------------------

    def _finish(self, stops, bottom_start) -> CompiledInstance:
        inst = ImprecisePolyline(self.shape, tuple(Region(s.center) for s in stops))
        anchors, groups = {}, {}
        for i, s in enumerate(stops):
            k = s.key
            if k[0] == "var":
                anchors[f"v{k[1]}.r{k[2] + 1}"] = i
                groups.setdefault(("variable", f"v{k[1]}"), []).append(i)
            elif k[0] == "corner":
                anchors[f"c{k[1]}.corner{k[2] + 1}"] = i
                groups.setdefault(("clause", f"c{k[1]}"), []).append(i)
            elif k[0] == "wire":
                wname = k[1]
                cid = int(wname[1:].split(".")[0])
                w = self.clauses[cid].wires[wname.split(".")[1]]
                n = len(w.points)
                if k[2] == n - 1:
                    lit = {"l": 1, "m": 2, "r": 3}[wname.split(".")[1]]
                    anchors[f"c{cid}.x{lit}"] = i
                    groups.setdefault(("clause", f"c{cid}"), []).append(i)
                else:
                    anchors[f"{wname}.w{k[2] + 1}"] = i
                groups.setdefault(("wire", wname), []).append(i)
            elif k[0] == "pivot":
                groups.setdefault(("pivot", k[1]), []).append(i)
            else:
                groups.setdefault(("connector", "connectors"), []).append(i)
        placements = []
        for (kind, name), idx in groups.items():
            slots = _ranges(idx)
            params, origin, rot = {}, P(0, 0), ROT0
            if kind == "variable":
                v = int(name[1:])
                origin = P(self.var_origin[v], 0)
                params = {"l": self.var_l[v]}
            elif kind == "clause":
                g = self.clauses[int(name[1:])]
                origin = g.origin if g.half == "top" else Point(g.origin.x, -g.origin.y)
                params = {"half": g.half, "legs": g.legs}
            elif kind == "pivot":
                c, rot, _, _, half = self.pivots[name]
                origin = c if half == "top" else Point(c.x, -c.y)
                params = {"eps": self.eps, "half": half}
            elif kind == "wire":
                cid = int(name[1:].split(".")[0])
                w = self.clauses[cid].wires[name.split(".")[1]]
                origin = w.points[0]
                params = {"half": self.clauses[cid].half}
            pk = {"variable": "variable", "clause": f"clause-{self.shape.value}",
                  "wire": f"wire-{self.shape.value}", "pivot": f"pivot-{self.shape.value}",
                  "connector": "connector"}[kind]
            placements.append(Placement(pk, name, origin, rot, params, idx[0], slots))
        placements.sort(key=lambda p: p.splice)
        for i, p in enumerate(placements):
            p.splice = i
        piv = {pid: (PivotParams(c, rot, self.eps), half)
               for pid, (c, rot, _, _, half) in self.pivots.items()}
        return CompiledInstance(inst, placements, anchors, self.f, self.lay, self.shape,
                                stops, self.clauses, piv, self.var_origin, self.var_l,
                                self.eps, bottom_start)


def _ranges(idx):
    out = []
    start = prev = idx[0]
    for i in idx[1:]:
        if i != prev + 1:
            out.append((start, prev + 1))
            start = i
        prev = i
    out.append((start, prev + 1))
    return out


def compile(f: Formula, lay: Layout, shape: ShapeKind = ShapeKind.DISK) -> CompiledInstance:
    """Build the imprecise polyline for ``f`` drawn along ``lay``."""
    return _Compiler(f, lay, shape).build()


# ---------------------------------------------------------------------------
# squares and diamonds


def _to_square(p) -> Point:
    return Point((p[0] - p[1]) / 2, (p[0] + p[1]) / 2)


def to_square_or_diamond(c: CompiledInstance, norm: str = "Linf") -> CompiledInstance:
    """Replace every disk by an L1 ball (``norm="L1"``) at the same center, or
    apply the 45-degree map (x, y) -> ((x-y)/2, (x+y)/2) and use axis-aligned
    squares of side 1 (``norm="Linf"``).  Either way each region's four
    extreme points are exactly the images of the disk's extreme points."""
    if c.shape is not ShapeKind.DISK:
        raise CompileError("only disk instances can be converted")
    if norm in ("L1", "diamond"):
        inst = ImprecisePolyline(ShapeKind.DIAMOND, c.instance.regions)
    elif norm in ("Linf", "square"):
        inst = ImprecisePolyline(ShapeKind.SQUARE,
                                 tuple(Region(_to_square(r.center)) for r in c.instance.regions))
    else:
        raise ValueError(f"unknown norm {norm!r}")
    placements = c.placements
    if inst.shape is ShapeKind.SQUARE:
        import dataclasses
        placements = [dataclasses.replace(pl, origin=_to_square(pl.origin)) for pl in placements]
    out = CompiledInstance(inst, placements, c.anchors, c.formula, c.layout, inst.shape,
                           c.stops, c.clauses, c.pivots, c.var_origins, c.var_l, c.eps,
                           c.bottom_start, ShapeKind.DISK)
    return out


def transform_realisation(r, norm: str = "Linf") -> Realisation:
    pts = list(r.points if isinstance(r, Realisation) else r)
    if norm in ("L1", "diamond"):
        return Realisation(tuple(pts))
    return Realisation(tuple(_to_square(p) for p in pts))


# ---------------------------------------------------------------------------
# assignments -> realisations


@functools.lru_cache(maxsize=None)
def _variable_states(shape: ShapeKind, l: Fraction) -> dict:
    from .solver import enumerate_realisations
    g = build_variable(VariableParams(P(0, 0), l))
    inst = ImprecisePolyline(shape, g.regions)
    out = {}
    for r in enumerate_realisations(inst, EXTREMES_AND_CENTER):
        st = variable_state(r)
        out.setdefault(st, r)
    return out


def _comp_realisation(shape: ShapeKind, pp: PivotParams, which: str) -> list:
    """Both components drawn on the pivot's axis with their tips at the center."""
    from .gadgets import Frame
    e = pp.eps
    if shape is ShapeKind.VSEG:
        top = [P(-1 - e, 3), P(0, 2), P(0, 0), P(0, 2), P(1 + e, 3)]
    else:
        top = [P(-e, 2), P(0, 2), P(0, 5), P(0, 0), P(0, 5), P(0, 2), P(e, 2)]
    loc = top if which == "top" else [Point(-p.x, -p.y) for p in top]
    fr = Frame(pp.center, pp.rot)
    return [fr.apply(p) for p in loc]


def _propagate(shape, w: Wire, pivots: dict, start: Point) -> Optional[list]:
    """Points along the wire when the foot is realised at ``start``: each hop
    must pass its pivot center; the next point is the unique extreme point of
    the next region on that line (None if there is none)."""
    pts = [start]
    for i in range(len(w.points) - 1):
        c = pivots[w.pivots[i]][0].center
        nxt = w.points[i + 1]
        cur = pts[-1]
        hit = [q for q in extreme_points(Region(nxt), shape)
               if (c[0] - cur[0]) * (q[1] - cur[1]) == (c[1] - cur[1]) * (q[0] - cur[0])
               and on_segment(c, cur, q)]
        if len(hit) != 1:
            return None
        pts.append(hit[0])
    return pts


def _wire_states(shape, w: Wire, pivots: dict, anchors: tuple) -> dict:
    """{'false': points, 'true': points} where 'false' starts at the foot's
    topmost point and 'true' ends at the literal's true anchor."""
    false_pos, true_pos = anchors
    foot = Region(w.points[0])
    out = {}
    top = extreme_points(foot, shape)[0]
    f = _propagate(shape, w, pivots, top)
    if f is None or f[-1] != false_pos:
        raise AssertionError(f"wire {w.name}: false state does not reach the false anchor")
    out["false"] = f
    for s in extreme_points(foot, shape)[1:]:
        t = _propagate(shape, w, pivots, s)
        if t is not None and t[-1] == true_pos:
            out["true"] = t
            break
    if "true" not in out:
        raise AssertionError(f"wire {w.name}: no true state reaches the true anchor")
    return out


def _clause_corners(shape, g: ClauseGeom, chosen: int) -> list:
    """Corner points uncovering exactly the two literals other than ``chosen``."""
    import itertools
    from .gadgets import _vseg_pivots_respected
    want = frozenset({1, 2, 3} - {chosen})
    cands = [extreme_points(Region(c), shape) for c in g.corners]
    for pts in itertools.product(*cands):
        if shape is ShapeKind.VSEG and not _vseg_pivots_respected(pts, g.origin):
            continue
        if uncovered_positions(shape, pts, g.origin) == want:
            return list(pts)
    raise AssertionError(f"clause {g.cid}: no corner state uncovers {sorted(want)}")


def _clause_anchor_points(shape, g: ClauseGeom):
    o = g.origin
    if shape is ShapeKind.VSEG:
        fal, tru = CLAUSE_VSEG_FALSE, CLAUSE_VSEG_TRUE
    else:
        fal, tru = CLAUSE_DISK_FALSE, CLAUSE_DISK_TRUE
    return [f + o for f in fal], [t + o for t in tru]


def assignment_to_realisation(c: CompiledInstance, assignment: Sequence[bool]) -> Realisation:
    """Weakly simple realisation for a satisfying assignment.

    Variables take their true/false state; each clause picks its first true
    literal, draws that literal's wire in the true state ending at its true
    anchor, and draws every other wire of the clause in the false state; the
    cup uncovers the two other false positions.  Pivot components lie on
    their axis and connectors sit at their centers.
    """
    f = c.formula
    values = tuple(bool(v) for v in assignment)
    if len(values) != f.m:
        raise AssignmentError(f"assignment has {len(values)} values, formula has {f.m} variables")
    if not f.evaluate(values):
        raise AssignmentError("assignment does not satisfy the formula")
    shape = c.source_shape or c.shape
    pts_by_key = {}
    for v in c.layout.order:
        st = _variable_states(shape, F(c.var_l[v]))
        real = st["true" if values[v - 1] else "false"]
        for k, p in enumerate(real):
            pts_by_key[("var", v, k)] = Point(p[0] + c.var_origins[v], p[1])
    for cid, g in c.clauses.items():
        clause = f.clauses[cid - 1]
        legs = g.legs
        lit_true = [values[v - 1] if clause.polarity is Polarity.POSITIVE else not values[v - 1]
                    for v in legs]
        chosen = lit_true.index(True) + 1
        fal, tru = _clause_anchor_points(shape, g)
        for j, key in enumerate(("l", "m", "r")):
            w = g.wires[key]
            states = _wire_states(shape, w, c.pivots, (fal[j], tru[j]))
            pts = states["true"] if j + 1 == chosen else states["false"]
            n = len(w.points)
            for k, p in enumerate(pts):
                pts_by_key[("wire", w.name, k)] = p
                pts_by_key[("wire", w.name, 2 * (n - 1) - k)] = p
        for k, p in enumerate(_clause_corners(shape, g, chosen)):
            pts_by_key[("corner", cid, k)] = p
    comp_cache = {}
    out = []
    for i, s in enumerate(c.stops):
        k = s.key
        if k[0] == "conn":
            p = s.center
        elif k[0] == "var":
            p = pts_by_key[k]
        elif k[0] == "pivot":
            pid, which, j = k[1], k[2], k[3]
            if (pid, which) not in comp_cache:
                comp_cache[(pid, which)] = _comp_realisation(shape, c.pivots[pid][0], which)
            p = comp_cache[(pid, which)][j]
        else:
            p = pts_by_key[k]
        if i >= c.bottom_start and k[0] not in ("var", "conn"):
            p = Point(p[0], -p[1])
        out.append(p)
    if c.shape is ShapeKind.SQUARE:
        out = [_to_square(p) for p in out]
    return Realisation(tuple(out))


def literal_states(c: CompiledInstance, realisation) -> dict:
    """Wire name -> "false"/"true": whether the literal point sits at its
    false anchor or elsewhere."""
    pts = list(realisation.points if isinstance(realisation, Realisation) else realisation)
    shape = c.source_shape or c.shape
    out = {}
    for i, s in enumerate(c.stops):
        k = s.key
        if k[0] != "wire":
            continue
        cid = int(k[1][1:].split(".")[0])
        g = c.clauses[cid]
        side = k[1].split(".")[1]
        w = g.wires[side]
        if k[2] != len(w.points) - 1:
            continue
        fal, _ = _clause_anchor_points(shape, g)
        p = fal["lmr".index(side)]
        if i >= c.bottom_start:
            p = Point(p[0], -p[1])
        if c.shape is ShapeKind.SQUARE:
            p = _to_square(p)
        out[k[1]] = "false" if pts[i] == p else "true"
    return out


WIRE_SIDES = ("left", "middle", "right")


def wire_lemma_instance(shape: ShapeKind, side: str, state: str):
    """One wire of the single-clause example, cut out with its pivots.

    The polyline starts with the variable's 5-6 edge pinned at y = +1
    (``state="false"``) or y = -1 (``"true"``), climbs on the wire's outer
    side, hugs it down, draws the spur and hugs the other side up.

    Returns ``(instance, candidates, literal_index, false_anchor, true_anchor)``.
    """
    from .instance import candidate_sets, EXTREMES
    from .sat import parse_formula, parse_layout
    if side not in WIRE_SIDES:
        raise ValueError(f"side must be one of {WIRE_SIDES}")
    if state not in ("false", "true"):
        raise ValueError("state must be 'false' or 'true'")
    f = parse_formula("p cnf 3 1\n1 2 3 0\n")
    lay = parse_layout("order 1 2 3\nclause 1 side=top parent=none legs=1 2 3\n", f)
    comp = _Compiler(f, lay, shape)
    comp.build()
    g = comp.clauses[1]
    key = side[0]
    w = g.wires[key]
    outer, inner = ("L", "R") if key == "l" else ("R", "L")
    foot = w.points[0]
    y = F(1) if state == "false" else F(-1)
    sx = -1 if outer == "L" else 1
    wall = [Stop(Point(foot.x - sx * 30, F(0)), ("wall", 0)),
            Stop(Point(foot.x + sx * 30, F(0)), ("wall", 1))]
    stops = wall + [comp._conn(comp._offset(w, outer, LANE, 6)),
                    comp._conn(comp._offset(w, outer, LANE, g.cy + 20))]
    stops += comp._hug(w, outer, up=False)
    stops.append(comp._foot(w, outer))
    stops += comp._spur(w)
    stops.append(comp._foot(w, inner))
    stops += comp._hug(w, inner, up=True)
    inst = ImprecisePolyline(shape, tuple(Region(s.center) for s in stops))
    cands = candidate_sets(inst, EXTREMES)
    cands[0] = [Point(wall[0].center.x, y)]
    cands[1] = [Point(wall[1].center.x, y)]
    lit = next(i for i, s in enumerate(stops)
               if s.key[0] == "wire" and s.key[2] == len(w.points) - 1)
    fal, tru = _clause_anchor_points(shape, g)
    j = "lmr".index(key)
    return inst, cands, lit, fal[j], tru[j]

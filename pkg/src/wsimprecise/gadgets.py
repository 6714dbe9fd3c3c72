"""Gadget geometry: pivots, variables, clauses and wires, in both region shapes.

Every gadget is built in its own local frame and then placed by a
:class:`Frame` (translation plus an exact rational rotation).  Coordinates are
kept as Fractions throughout; 4.6 in the clause gadget is stored as 23/5.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (GeometryError, Point, P, point_above_tangents,
                       point_below_tangents, tangents_cross_segment)
from .instance import Region, ShapeKind, extreme_points

F = Fraction


class GadgetError(ValueError):
    """Invalid gadget parameters."""


# ---------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class Rotation:
    """Rotation matrix [[c, -s], [s, c]] with rational c, s and c^2 + s^2 = 1."""
    c: Fraction = F(1)
    s: Fraction = F(0)

    def __post_init__(self):
        object.__setattr__(self, "c", F(self.c))
        object.__setattr__(self, "s", F(self.s))
        if self.c * self.c + self.s * self.s != 1:
            raise GadgetError(f"({self.c}, {self.s}) is not a rotation")

    def apply(self, p) -> Point:
        return Point(self.c * p[0] - self.s * p[1], self.s * p[0] + self.c * p[1])

    def inverse(self) -> "Rotation":
        return Rotation(self.c, -self.s)

    @property
    def is_identity(self) -> bool:
        return self.c == 1


ROT0 = Rotation(1, 0)
ROT90 = Rotation(0, 1)
ROT180 = Rotation(-1, 0)
ROT270 = Rotation(0, -1)


@dataclass(frozen=True)
class Frame:
    origin: Point = P(0, 0)
    rot: Rotation = ROT0

    def apply(self, p) -> Point:
        q = self.rot.apply(p)
        return Point(q.x + self.origin.x, q.y + self.origin.y)

    def local(self, p) -> Point:
        return self.rot.inverse().apply(Point(p[0] - self.origin.x, p[1] - self.origin.y))


def mirror_y(p) -> Point:
    return Point(p[0], -p[1])


# ---------------------------------------------------------------------------
# gadget records


class GadgetKind(enum.Enum):
    PIVOT_DISK = "pivot-disk"
    PIVOT_VSEG = "pivot-vseg"
    VARIABLE = "variable"
    CLAUSE_DISK = "clause-disk"
    CLAUSE_VSEG = "clause-vseg"
    WIRE_DISK = "wire-disk"
    WIRE_VSEG = "wire-vseg"

    @property
    def shape(self) -> ShapeKind:
        return ShapeKind.VSEG if self.value.endswith("vseg") else ShapeKind.DISK


@dataclass
class GadgetGeometry:
    kind: GadgetKind
    regions: tuple                       # Region, in polyline order
    anchors: dict = field(default_factory=dict)
    splice_slots: dict = field(default_factory=dict)   # name -> (start, stop)

    @property
    def centers(self) -> list:
        return [r.center for r in self.regions]

    def component(self, name) -> list:
        a, b = self.splice_slots[name]
        return [r.center for r in self.regions[a:b]]


def _regions(points) -> tuple:
    return tuple(Region(Point(F(x), F(y))) for x, y in points)


# ---------------------------------------------------------------------------
# pivot


@dataclass(frozen=True)
class PivotParams:
    center: Point = P(0, 0)
    rot: Rotation = ROT0
    eps: Fraction = F(1, 10)


def pivot_top_local(shape: ShapeKind, eps) -> list:
    eps = F(eps)
    if shape is ShapeKind.VSEG:
        # regions 2, 3, 5, 6 of the disk version collapse to two coincident
        # regions on the axis; the V arms become a single spur
        return [P(-1 - eps, 2), P(0, 3), P(0, -1), P(0, 3), P(1 + eps, 2)]
    return [P(-1 - eps, 2), P(1, 2), P(1, 5), P(0, -1), P(-1, 5), P(-1, 2), P(1 + eps, 2)]


def pivot_components(shape: ShapeKind, params: PivotParams) -> tuple:
    """(top, bottom) component centers in global coordinates."""
    if shape is ShapeKind.VSEG and not params.rot.is_identity:
        raise GadgetError("vertical-segment pivots cannot be rotated")
    if params.eps <= 0:
        raise GadgetError("eps must be positive")
    top = pivot_top_local(shape, params.eps)
    bottom = [ROT180.apply(p) for p in top]
    fr = Frame(params.center, params.rot)
    return [fr.apply(p) for p in top], [fr.apply(p) for p in bottom]


def build_pivot(shape: ShapeKind, params: PivotParams) -> GadgetGeometry:
    top, bottom = pivot_components(shape, params)
    kind = GadgetKind.PIVOT_VSEG if shape is ShapeKind.VSEG else GadgetKind.PIVOT_DISK
    n = len(top)
    return GadgetGeometry(kind, _regions(top + bottom), {"center": params.center},
                          {"top": (0, n), "bottom": (n, 2 * n)})


def validate_pivot_placement(center, rot: Rotation, end_a, end_b,
                             shape: ShapeKind = ShapeKind.DISK) -> Fraction:
    """Largest eps of the form 2^-k (k <= 40) for which the pivot at ``center``
    forces every edge between regions ``end_a`` and ``end_b`` through it.

    ``end_a`` must lie on the pivot's local left (x < -1) and ``end_b`` on its
    right (x > 1).  For disks the corner points (-eps, 2), (eps, 2) and their
    rotated copies must clear the tangents from the center to the endpoint
    disks, and all tangents between the two disks must meet the spur segment.
    For vertical segments the same tests are done on the finitely many lines
    through the segment endpoints.
    """
    fr = Frame(Point(F(center[0]), F(center[1])), rot)
    a = fr.local(end_a.center if isinstance(end_a, Region) else end_a)
    b = fr.local(end_b.center if isinstance(end_b, Region) else end_b)
    if not a.x < -1:
        raise GadgetError(f"endpoint A has local x {a.x}; it must be less than -1")
    if not b.x > 1:
        raise GadgetError(f"endpoint B has local x {b.x}; it must be greater than 1")
    spur = (P(0, -5), P(0, 5))
    if shape is ShapeKind.VSEG:
        return _validate_vseg(a, b)
    if not tangents_cross_segment(a, b, spur):
        raise GadgetError("tangents between the endpoint regions miss the pivot")
    eps = F(1)
    for _ in range(40):
        try:
            ok = (point_above_tangents(P(-eps, 2), P(0, 0), a)
                  and point_above_tangents(P(eps, 2), P(0, 0), b)
                  and point_below_tangents(P(eps, -2), P(0, 0), b)
                  and point_below_tangents(P(-eps, -2), P(0, 0), a))
        except GeometryError as exc:
            raise GadgetError(str(exc)) from None
        if ok:
            return eps
        eps /= 2
    raise GadgetError("no positive eps clears the tangent lines")


def _validate_vseg(a: Point, b: Point) -> Fraction:
    # every line through an endpoint of A and an endpoint of B
    lines = [(P(a.x, a.y + da), P(b.x, b.y + db)) for da in (-1, 1) for db in (-1, 1)]
    for p, q in lines:
        y0 = p.y + (q.y - p.y) * (0 - p.x) / (q.x - p.x)
        if not -5 <= y0 <= 5:
            raise GadgetError("lines between the endpoint segments miss the pivot")
    # lines actually realisable through the center pair A's endpoint with B's
    through = []
    for da in (-1, 1):
        p = P(a.x, a.y + da)
        k = p.y / p.x                       # slope of the line through p and 0
        yb = k * b.x
        if b.y - 1 <= yb <= b.y + 1:
            through.append(k)
    if not through:
        raise GadgetError("no line through the pivot center meets both segments")
    eps = F(1)
    for _ in range(40):
        ok = True
        for k in through:
            # corners at (+-(1+eps), +-2) keep one endpoint strictly off the line
            for sx in (-1, 1):
                x = sx * (1 + eps)
                if not abs(k * x) < 3:
                    ok = False
        if ok:
            return eps
        eps /= 2
    raise GadgetError("through-edge too steep for a vertical-segment pivot")


# ---------------------------------------------------------------------------
# variable


@dataclass(frozen=True)
class VariableParams:
    origin: Point = P(0, 0)
    l: Fraction = F(9)


def build_variable(params: VariableParams) -> GadgetGeometry:
    l = F(params.l)
    if not l > 8:
        raise GadgetError("variable length l must exceed 8")
    o = params.origin
    pts = [P(0, 0), P(8, 0), P(5, 2), P(5, -2), P(2, 0), P(l, 0)]
    pts = [p + o for p in pts]
    return GadgetGeometry(GadgetKind.VARIABLE, _regions(pts),
                          {"origin": o, "wall_start": pts[4], "wall_end": pts[5]},
                          {"chain": (0, 6)})


# ---------------------------------------------------------------------------
# clauses

X2_Y = F(-23, 5)

CLAUSE_DISK_CORNERS = [P(0, 0), P(0, -5), P(6, -5), P(6, 0)]
CLAUSE_DISK_LITERALS = [P(1, -3), P(2, X2_Y), P(5, -3)]
CLAUSE_DISK_FALSE = [P(1, -2), P(3, X2_Y), P(5, -2)]
# leftmost, bottommost, rightmost
CLAUSE_DISK_TRUE = [P(0, -3), P(2, X2_Y - 1), P(6, -3)]

CLAUSE_VSEG_CORNERS = [P(0, 0), P(0, -3), P(4, -5), P(6, -5), P(10, -3), P(10, 0)]
CLAUSE_VSEG_PIVOTS = [P(2, -4), P(8, -4)]
CLAUSE_VSEG_LITERALS = [P(1, -4), P(5, -6), P(9, -4)]
CLAUSE_VSEG_FALSE = [P(1, -3), P(5, -5), P(9, -3)]
CLAUSE_VSEG_TRUE = [P(1, -5), P(5, -7), P(9, -5)]


@dataclass(frozen=True)
class ClauseParams:
    origin: Point = P(0, 0)          # top-left corner region
    eps: Fraction = F(1, 10)         # vertical-segment clause pivots only


def build_clause(shape: ShapeKind, params: ClauseParams = ClauseParams()) -> GadgetGeometry:
    o = params.origin
    anchors = {}
    if shape is ShapeKind.VSEG:
        corners, lits, fal, tru = (CLAUSE_VSEG_CORNERS, CLAUSE_VSEG_LITERALS,
                                   CLAUSE_VSEG_FALSE, CLAUSE_VSEG_TRUE)
        kind = GadgetKind.CLAUSE_VSEG
    else:
        corners, lits, fal, tru = (CLAUSE_DISK_CORNERS, CLAUSE_DISK_LITERALS,
                                   CLAUSE_DISK_FALSE, CLAUSE_DISK_TRUE)
        kind = GadgetKind.CLAUSE_DISK
    pts = [p + o for p in corners] + [p + o for p in lits]
    nc = len(corners)
    for i in range(3):
        anchors[f"x{i + 1}"] = lits[i] + o
        anchors[f"x{i + 1}_false"] = fal[i] + o
        anchors[f"x{i + 1}_true"] = tru[i] + o
    slots = {"corners": (0, nc), "x1": (nc, nc + 1), "x2": (nc + 1, nc + 2),
             "x3": (nc + 2, nc + 3)}
    if shape is ShapeKind.DISK:
        # second-hop pivots of the side wires at the minimum wire length
        anchors["pivot_x1"] = P(-15, -2) + o
        anchors["pivot_x3"] = P(21, -2) + o
    if shape is ShapeKind.VSEG:
        for i, c in enumerate(CLAUSE_VSEG_PIVOTS):
            anchors[f"pivot{i + 1}"] = c + o
            top, bottom = pivot_components(ShapeKind.VSEG, PivotParams(c + o, ROT0, params.eps))
            start = len(pts)
            pts += top
            slots[f"pivot{i + 1}_top"] = (start, start + len(top))
            start = len(pts)
            pts += bottom
            slots[f"pivot{i + 1}_bottom"] = (start, start + len(bottom))
    return GadgetGeometry(kind, _regions(pts), anchors, slots)


# ---------------------------------------------------------------------------
# lemma checks


@dataclass
class LemmaReport:
    kind: GadgetKind
    ok: bool
    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)     # (label, instance, points)
    notes: list = field(default_factory=list)
    partial: bool = False

    @property
    def verdict(self) -> str:
        if self.partial:
            return "LEMMA_BUDGET_EXCEEDED"
        return "LEMMA_OK" if self.ok else "LEMMA_FAILED"

    def to_text(self) -> str:
        from .instance import save_realisation
        lines = [f"kind {self.kind.value}", f"verdict {self.verdict}"]
        for k in sorted(self.counts):
            lines.append(f"count {k} {self.counts[k]}")
        for n in self.notes:
            lines.append(f"note {n}")
        for label, _inst, pts in self.witnesses:
            lines.append(f"witness {label}")
            lines.extend("  " + s for s in save_realisation(pts).splitlines())
        return "\n".join(lines) + "\n"


def _unit_frame(a, b):
    """Float unit direction from a to b and its left normal."""
    dx, dy = float(b[0] - a[0]), float(b[1] - a[1])
    h = (dx * dx + dy * dy) ** 0.5
    return (dx / h, dy / h), (-dy / h, dx / h)


def snap(v: float, den: int = 4) -> Fraction:
    """Round a float to the nearest multiple of 1/den (connector placement
    only; gadget coordinates are never rounded)."""
    return F(round(v * den), den)


def _snap(base, u, su, n, sn) -> Point:
    return Point(F(base[0]) + snap(su * u[0] + sn * n[0]), F(base[1]) + snap(su * u[1] + sn * n[1]))


def pivot_lemma_instance(shape: ShapeKind, params: PivotParams = PivotParams(),
                         end_a=P(-3, 0), end_b=P(3, 0)):
    """The pivot's two components joined by fixed connectors, followed by the
    through-edge from region ``end_a`` to region ``end_b`` (local coordinates).

    Returns (instance, pinned candidates, index of the through-edge start).
    """
    from .instance import ImprecisePolyline
    top, bottom = pivot_components(shape, params)
    fr = Frame(params.center, params.rot)
    # connectors wrap around the far side of region B, then return to A
    u, n = _unit_frame(end_a, end_b)
    con_a = [fr.apply(_snap(end_b, u, 5, n, 8)), fr.apply(_snap(end_b, u, 5, n, -8))]
    con_b = [fr.apply(_snap(end_a, u, -3, n, -8))]
    ends = [fr.apply(end_a), fr.apply(end_b)]
    centers = top + con_a + bottom + con_b + ends
    pinned = {}
    for i, c in enumerate(centers):
        if c in con_a or c in con_b:
            pinned[i] = [c]
    inst = ImprecisePolyline.from_centers(shape, centers)
    return inst, pinned, len(centers) - 2


def check_pivot_lemma(shape: ShapeKind, params: PivotParams = PivotParams(),
                      end_a=P(-3, 0), end_b=P(3, 0), budget: int = 10 ** 8) -> LemmaReport:
    """Every weakly simple realisation routes the through-edge via the center.

    Each candidate pair for the two through-edge endpoints is pinned in turn
    and the rest of the gadget is searched exhaustively.
    """
    from .geometry import on_segment
    from .instance import custom_level, extreme_points
    from .solver import solve
    inst, pinned, k = pivot_lemma_instance(shape, params, end_a, end_b)
    kind = GadgetKind.PIVOT_VSEG if shape is ShapeKind.VSEG else GadgetKind.PIVOT_DISK
    rep = LemmaReport(kind, True)
    through = missed = realisable_missed = 0
    for pa in extreme_points(inst.regions[k], shape):
        for pb in extreme_points(inst.regions[k + 1], shape):
            lvl = custom_level({**pinned, k: [pa], k + 1: [pb]})
            out = solve(inst, lvl, budget=budget)
            if out.status == "budget":
                rep.partial = True
                continue
            hits = on_segment(params.center, pa, pb)
            if hits:
                through += out.realisable
                if out.realisable and len(rep.witnesses) < 1:
                    rep.witnesses.append(("through-center", inst, out.witness.points))
            else:
                missed += 1
                if out.realisable:
                    realisable_missed += 1
                    rep.witnesses.append(("misses-center", inst, out.witness.points))
    rep.counts = {"pairs_through_center_realisable": through,
                  "pairs_missing_center": missed,
                  "pairs_missing_center_realisable": realisable_missed}
    rep.ok = realisable_missed == 0 and through > 0 and not rep.partial
    return rep


def variable_state(points) -> Optional[str]:
    """'false' if the 5-6 edge passes above the 3-4 edge, 'true' if below."""
    p3, p4, p5, p6 = points[2], points[3], points[4], points[5]
    mx = (p3[0] + p4[0]) / 2
    my = (p3[1] + p4[1]) / 2
    if p6[0] == p5[0]:
        return None
    y = p5[1] + (p6[1] - p5[1]) * (mx - p5[0]) / (p6[0] - p5[0])
    if y > my:
        return "false"
    if y < my:
        return "true"
    return None


def check_variable_lemma(params: VariableParams = VariableParams(), level=None,
                         budget: int = 10 ** 8, shape: ShapeKind = ShapeKind.DISK) -> LemmaReport:
    from .instance import EXTREMES_AND_CENTER, ImprecisePolyline
    from .solver import enumerate_realisations
    level = level or EXTREMES_AND_CENTER
    g = build_variable(params)
    inst = ImprecisePolyline(shape, g.regions)
    classes: dict = {}
    total = 0
    rep = LemmaReport(GadgetKind.VARIABLE, False)
    try:
        for r in enumerate_realisations(inst, level, budget=budget):
            total += 1
            st = variable_state(r)
            if st not in classes:
                classes[st] = 0
                rep.witnesses.append((f"state-{st}", inst, r))
            classes[st] += 1
    except RuntimeError:
        rep.partial = True
    rep.counts = {"realisations": total, "classes": len(classes)}
    for st, n in classes.items():
        rep.counts[f"class_{st}"] = n
    rep.ok = set(classes) == {"false", "true"} and not rep.partial
    return rep


def uncovered_positions(shape: ShapeKind, corner_points, origin=P(0, 0)) -> frozenset:
    """Indices (1..3) of false positions lying outside or on the polygon
    spanned by the realised corners."""
    from .geometry import Location, point_in_polygon
    fal = CLAUSE_VSEG_FALSE if shape is ShapeKind.VSEG else CLAUSE_DISK_FALSE
    out = set()
    for i, f in enumerate(fal):
        if point_in_polygon(f + origin, list(corner_points)) is not Location.INSIDE:
            out.add(i + 1)
    return frozenset(out)


def _vseg_pivots_respected(pts, origin=P(0, 0)) -> bool:
    from .geometry import on_segment
    c1, c2 = (c + origin for c in CLAUSE_VSEG_PIVOTS)
    return on_segment(c1, pts[1], pts[2]) and on_segment(c2, pts[3], pts[4])


def check_clause_lemma(shape: ShapeKind, params: ClauseParams = ClauseParams(),
                       level=None, budget: int = 10 ** 8) -> LemmaReport:
    """No corner realisation uncovers all three false positions; each pair is
    uncovered by some realisation.  For vertical segments the two through
    edges are required to pass their pivot centers (the pivot lemma's
    guarantee) before a realisation is counted."""
    from .instance import EXTREMES, ImprecisePolyline
    from .solver import enumerate_realisations
    level = level or EXTREMES
    g = build_clause(shape, params)
    a, b = g.splice_slots["corners"]
    inst = ImprecisePolyline(shape, g.regions[a:b])
    kind = g.kind
    rep = LemmaReport(kind, False)
    pairs = {frozenset(p): 0 for p in ((1, 2), (1, 3), (2, 3))}
    total = all3 = 0
    try:
        for r in enumerate_realisations(inst, level, budget=budget):
            if shape is ShapeKind.VSEG and not _vseg_pivots_respected(r, params.origin):
                continue
            total += 1
            unc = uncovered_positions(shape, r, params.origin)
            if len(unc) == 3:
                all3 += 1
                rep.witnesses.append(("uncovers-all", inst, r))
            for p in pairs:
                if p <= unc:
                    if pairs[p] == 0:
                        rep.witnesses.append((f"uncovers-{'-'.join(map(str, sorted(p)))}", inst, r))
                    pairs[p] += 1
    except RuntimeError:
        rep.partial = True
    rep.counts = {"realisations": total, "uncover_all_three": all3}
    for p, n in pairs.items():
        rep.counts[f"uncover_{'_'.join(map(str, sorted(p)))}"] = n
    rep.ok = all3 == 0 and all(pairs.values()) and not rep.partial
    return rep


# ---------------------------------------------------------------------------
# wires


@dataclass(frozen=True)
class WireParams:
    side: str = "left"             # left | middle | right leg of the clause


def build_wire(shape: ShapeKind, params: WireParams = WireParams()) -> GadgetGeometry:
    """The wire of the single-clause example on the given side, with its
    pivots, the pinned variable edge and the walker around it."""
    from .reduction import wire_lemma_instance
    inst, _c, lit, fal, tru = wire_lemma_instance(shape, params.side, "false")
    kind = GadgetKind.WIRE_VSEG if shape is ShapeKind.VSEG else GadgetKind.WIRE_DISK
    return GadgetGeometry(kind, inst.regions,
                          {"literal": inst.regions[lit].center, "false": fal, "true": tru},
                          {"wall": (0, 2), "literal": (lit, lit + 1)})


def check_wire_lemma(shape: ShapeKind, params: WireParams = WireParams(),
                     budget: int = 10 ** 8) -> LemmaReport:
    """False variable state: no realisation puts the literal anywhere but its
    false anchor (and one puts it there).  True state: both anchors occur."""
    from .reduction import wire_lemma_instance
    from .solver import solve
    kind = GadgetKind.WIRE_VSEG if shape is ShapeKind.VSEG else GadgetKind.WIRE_DISK
    rep = LemmaReport(kind, False)
    rep.notes.append(f"side {params.side}")
    results = {}
    for state in ("false", "true"):
        inst, cands, lit, fal, tru = wire_lemma_instance(shape, params.side, state)
        for label, allowed in (("other", [p for p in cands[lit] if p != fal]),
                               ("false_anchor", [fal]), ("true_anchor", [tru])):
            cc = list(cands)
            cc[lit] = allowed
            out = solve(inst, candidates=cc, budget=budget)
            if out.status == "budget":
                rep.partial = True
            results[(state, label)] = out.realisable
            rep.counts[f"{state}_state_{label}"] = int(out.realisable)
            if out.realisable and (state, label) != ("false", "other"):
                rep.witnesses.append((f"{state}-state-{label}", inst, out.witness.points))
            elif out.realisable:
                rep.witnesses.append(("false-state-escapes", inst, out.witness.points))
    rep.ok = (not results[("false", "other")] and results[("false", "false_anchor")]
              and results[("true", "false_anchor")] and results[("true", "true_anchor")]
              and not rep.partial)
    return rep


# ---------------------------------------------------------------------------
# dispatch


def build_gadget(kind: GadgetKind, params=None) -> GadgetGeometry:
    if kind in (GadgetKind.PIVOT_DISK, GadgetKind.PIVOT_VSEG):
        return build_pivot(kind.shape, params or PivotParams())
    if kind is GadgetKind.VARIABLE:
        return build_variable(params or VariableParams())
    if kind in (GadgetKind.CLAUSE_DISK, GadgetKind.CLAUSE_VSEG):
        return build_clause(kind.shape, params or ClauseParams())
    return build_wire(kind.shape, params or WireParams())


def check_gadget_lemma(kind: GadgetKind, params=None, level=None,
                       budget: int = 10 ** 8) -> LemmaReport:
    """Run the lemma belonging to ``kind`` with default placements."""
    if kind in (GadgetKind.PIVOT_DISK, GadgetKind.PIVOT_VSEG):
        return check_pivot_lemma(kind.shape, params or PivotParams(), budget=budget)
    if kind is GadgetKind.VARIABLE:
        return check_variable_lemma(params or VariableParams(), level, budget)
    if kind in (GadgetKind.CLAUSE_DISK, GadgetKind.CLAUSE_VSEG):
        return check_clause_lemma(kind.shape, params or ClauseParams(), level, budget)
    return check_wire_lemma(kind.shape, params or WireParams(), budget)

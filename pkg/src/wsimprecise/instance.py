"""Regions, imprecise polylines, realisations and their text formats.

Instance file::

    # comments start with '#'
    shape disk            # disk | square | diamond | vseg
    scale 1/2             # optional, vseg only: coordinates were multiplied by this
    0 0
    8 0
    23/5 -1

Realisation file: one ``x y`` pair per line.  All numbers are exact rationals
written as integers or ``num/den``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import Point, rat


class FormatError(ValueError):
    """Malformed instance or realisation text."""


class ShapeKind(enum.Enum):
    DISK = "disk"          # Euclidean unit disk
    SQUARE = "square"      # axis-aligned, side 1
    DIAMOND = "diamond"    # L1 unit ball
    VSEG = "vseg"          # vertical segment of length 2

    @classmethod
    def parse(cls, text: str) -> "ShapeKind":
        try:
            return cls(text)
        except ValueError:
            raise FormatError(f"unknown shape {text!r}") from None


HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Region:
    center: Point


@dataclass(frozen=True)
class ImprecisePolyline:
    shape: ShapeKind
    regions: tuple

    def __post_init__(self):
        if len(self.regions) < 2:
            raise ValueError("an imprecise polyline needs at least 2 regions")

    def __len__(self):
        return len(self.regions)

    @classmethod
    def from_centers(cls, shape: ShapeKind, centers: Iterable) -> "ImprecisePolyline":
        return cls(shape, tuple(Region(Point(rat(x), rat(y))) for x, y in centers))


@dataclass(frozen=True)
class Realisation:
    points: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def contains(region: Region, shape: ShapeKind, p) -> bool:
    dx = p[0] - region.center.x
    dy = p[1] - region.center.y
    if shape is ShapeKind.DISK:
        return dx * dx + dy * dy <= 1
    if shape is ShapeKind.SQUARE:
        return abs(dx) <= HALF and abs(dy) <= HALF
    if shape is ShapeKind.DIAMOND:
        return abs(dx) + abs(dy) <= 1
    if shape is ShapeKind.VSEG:
        return dx == 0 and abs(dy) <= 1
    raise ValueError(shape)


# ---------------------------------------------------------------------------
# candidate levels


@dataclass(frozen=True)
class CandidateLevel:
    kind: str                                   # extremes | extremes+center | custom
    custom: dict = field(default=None, compare=False, hash=False)

    def __str__(self):
        return self.kind


EXTREMES = CandidateLevel("extremes")
EXTREMES_AND_CENTER = CandidateLevel("extremes+center")


def custom_level(lists: dict) -> CandidateLevel:
    """Custom candidates: ``{region index: [points]}``; unlisted regions fall
    back to their extreme points."""
    clean = {}
    for k, pts in lists.items():
        if not pts:
            raise ValueError(f"empty candidate list for region {k}")
        clean[int(k)] = tuple(Point(rat(x), rat(y)) for x, y in pts)
    return CandidateLevel("custom", clean)


def extreme_points(region: Region, shape: ShapeKind) -> list[Point]:
    """Top, right, bottom, left.  For the axis-aligned square these are its
    corners, the images of a diamond's vertices under the 45-degree map."""
    x, y = region.center
    if shape is ShapeKind.VSEG:
        return [Point(x, y + 1), Point(x, y - 1)]
    if shape is ShapeKind.SQUARE:
        return [Point(x - HALF, y + HALF), Point(x + HALF, y + HALF),
                Point(x + HALF, y - HALF), Point(x - HALF, y - HALF)]
    return [Point(x, y + 1), Point(x + 1, y), Point(x, y - 1), Point(x - 1, y)]


def candidate_points(region: Region, shape: ShapeKind, level: CandidateLevel,
                     index: int | None = None) -> list[Point]:
    if level.kind == "extremes":
        return extreme_points(region, shape)
    if level.kind == "extremes+center":
        return extreme_points(region, shape) + [region.center]
    if level.kind == "custom":
        pts = (level.custom or {}).get(index)
        if pts is None:
            return extreme_points(region, shape)
        for p in pts:
            if not contains(region, shape, p):
                raise ValueError(f"custom candidate {p} lies outside region {index}")
        return list(pts)
    raise ValueError(f"unknown candidate level {level.kind!r}")


def candidate_sets(inst: ImprecisePolyline, level: CandidateLevel) -> list[list[Point]]:
    return [candidate_points(r, inst.shape, level, i) for i, r in enumerate(inst.regions)]


def is_realisation(inst: ImprecisePolyline, points: Sequence) -> bool:
    if len(points) != len(inst.regions):
        raise ValueError("realisation length does not match the instance")
    return all(contains(r, inst.shape, p) for r, p in zip(inst.regions, points))


# ---------------------------------------------------------------------------
# text formats


def format_rat(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rat(tok: str) -> Fraction:
    try:
        if any(c in tok for c in ".eE") and "/" not in tok:
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not an exact rational: {tok!r}") from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_pair(lineno, line) -> Point:
    parts = line.split()
    if len(parts) != 2:
        raise FormatError(f"line {lineno}: expected 'x y', got {line!r}")
    return Point(parse_rat(parts[0]), parse_rat(parts[1]))


def save_instance(inst: ImprecisePolyline, unit_length: bool = False) -> str:
    lines = [f"shape {inst.shape.value}"]
    k = Fraction(1)
    if unit_length:
        if inst.shape is not ShapeKind.VSEG:
            raise ValueError("unit_length scaling only applies to vertical segments")
        k = HALF
        lines.append("scale 1/2")
    for r in inst.regions:
        lines.append(f"{format_rat(r.center.x * k)} {format_rat(r.center.y * k)}")
    return "\n".join(lines) + "\n"


def load_instance(text: str) -> ImprecisePolyline:
    shape = None
    scale = Fraction(1)
    centers = []
    for lineno, line in _content_lines(text):
        head = line.split()
        if head[0] == "shape":
            if shape is not None:
                raise FormatError(f"line {lineno}: mixed shapes in one instance")
            if len(head) != 2:
                raise FormatError(f"line {lineno}: expected 'shape <kind>'")
            shape = ShapeKind.parse(head[1])
            continue
        if head[0] == "scale":
            if len(head) != 2 or centers:
                raise FormatError(f"line {lineno}: misplaced scale line")
            scale = parse_rat(head[1])
            if scale <= 0:
                raise FormatError(f"line {lineno}: scale must be positive")
            continue
        if shape is None:
            raise FormatError(f"line {lineno}: region before the shape header")
        centers.append(_parse_pair(lineno, line))
    if shape is None:
        raise FormatError("missing shape header")
    if len(centers) < 2:
        raise FormatError("an instance needs at least 2 regions")
    return ImprecisePolyline(shape, tuple(Region(Point(c.x / scale, c.y / scale))
                                          for c in centers))


def save_realisation(r) -> str:
    pts = r.points if isinstance(r, Realisation) else r
    return "".join(f"{format_rat(p[0])} {format_rat(p[1])}\n" for p in pts)


def load_realisation(text: str, inst: ImprecisePolyline | None = None) -> Realisation:
    pts = tuple(_parse_pair(lineno, line) for lineno, line in _content_lines(text))
    if inst is not None and len(pts) != len(inst.regions):
        raise FormatError(
            f"realisation has {len(pts)} points but the instance has {len(inst.regions)} regions")
    return Realisation(pts)


def parse_custom_level(text: str) -> CandidateLevel:
    """Custom candidate file: one line per region, ``index x1 y1 [x2 y2 ...]``."""
    lists = {}
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) < 3 or len(parts) % 2 == 0:
            raise FormatError(f"line {lineno}: expected 'index x y [x y ...]'")
        try:
            idx = int(parts[0])
        except ValueError:
            raise FormatError(f"line {lineno}: bad region index {parts[0]!r}") from None
        if idx in lists:
            raise FormatError(f"line {lineno}: region {idx} listed twice")
        vals = [parse_rat(t) for t in parts[1:]]
        lists[idx] = list(zip(vals[0::2], vals[1::2]))
    return custom_level(lists)

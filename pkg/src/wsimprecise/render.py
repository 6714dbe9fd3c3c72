"""SVG output for instances, gadgets and realisations.

Coordinates stay rational everywhere else; they become decimals (9
significant digits) only here.  The y-axis is flipped so that the picture
reads like a plot.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import quoteattr

from .instance import ImprecisePolyline, Realisation, ShapeKind

FALSE_COLOR = "#e07b00"      # orange: literal false
TRUE_COLOR = "#1f5fbf"       # blue: literal true


@dataclass(frozen=True)
class RenderOptions:
    margin: float = 2.0
    scale: float = 20.0                # pixels per unit
    region_stroke: float = 0.06
    path_stroke: float = 0.12
    show_regions: bool = True
    show_realisation: bool = True
    show_anchors: bool = False
    show_pivots: bool = True
    state_colors: bool = False

    def __post_init__(self):
        if not self.margin > 0:
            raise ValueError("margin must be positive")


def num(v) -> str:
    """Decimal text with 9 significant digits."""
    s = f"{float(v):.9g}"
    return "0" if s == "-0" else s


def _xy(p) -> tuple:
    return num(p[0]), num(-p[1])


def _bbox(points: Iterable) -> tuple:
    xs, ys = [], []
    for p in points:
        xs.append(float(p[0]))
        ys.append(float(p[1]))
    if not xs:
        return 0.0, 0.0, 1.0, 1.0
    return min(xs), min(ys), max(xs), max(ys)


def _region_mark(shape: ShapeKind, c, w: str) -> str:
    x, y = _xy(c)
    if shape is ShapeKind.DISK:
        return f'<circle class="region" cx="{x}" cy="{y}" r="1" stroke-width="{w}"/>'
    if shape is ShapeKind.SQUARE:
        return (f'<rect class="region" x="{num(c[0] - 0.5)}" y="{num(-c[1] - 0.5)}" '
                f'width="1" height="1" stroke-width="{w}"/>')
    if shape is ShapeKind.DIAMOND:
        pts = [(c[0], c[1] + 1), (c[0] + 1, c[1]), (c[0], c[1] - 1), (c[0] - 1, c[1])]
        txt = " ".join(",".join(_xy(p)) for p in pts)
        return f'<polygon class="region" points="{txt}" stroke-width="{w}"/>'
    return (f'<line class="region" x1="{x}" y1="{num(-c[1] - 1)}" x2="{x}" '
            f'y2="{num(-c[1] + 1)}" stroke-width="{w}"/>')


def _x_mark(c, w: str, size: float = 0.8) -> str:
    x0, y0 = float(c[0]), -float(c[1])
    return (f'<g class="pivot"><line x1="{num(x0 - size)}" y1="{num(y0 - size)}" '
            f'x2="{num(x0 + size)}" y2="{num(y0 + size)}" stroke-width="{w}"/>'
            f'<line x1="{num(x0 - size)}" y1="{num(y0 + size)}" x2="{num(x0 + size)}" '
            f'y2="{num(y0 - size)}" stroke-width="{w}"/></g>')


def render_svg(inst: ImprecisePolyline, realisation=None,
               opts: RenderOptions = RenderOptions(),
               pivots: Sequence = (), anchors: Optional[dict] = None,
               edge_states: Optional[dict] = None) -> str:
    """SVG 1.1 document.

    Regions become circles, squares, diamonds or vertical ticks; ``pivots``
    (points) become X marks; the realisation, if any, is one ``path``.
    ``edge_states`` maps an edge index to "false"/"true" and is drawn as
    coloured overlay segments when ``opts.state_colors`` is set.
    """
    pts = None
    if realisation is not None:
        pts = list(realisation.points if isinstance(realisation, Realisation) else realisation)
        if len(pts) != len(inst.regions):
            raise ValueError("realisation length does not match the instance")
    centers = [r.center for r in inst.regions]
    x0, y0, x1, y1 = _bbox(list(centers) + list(pivots) + (pts or []))
    m = opts.margin + 1
    vx, vy = x0 - m, -(y1 + m)
    vw, vh = (x1 - x0) + 2 * m, (y1 - y0) + 2 * m
    rw, pw = num(opts.region_stroke), num(opts.path_stroke)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{num(vw * opts.scale)}" height="{num(vh * opts.scale)}" '
           f'viewBox="{num(vx)} {num(vy)} {num(vw)} {num(vh)}">']
    if opts.show_regions:
        out.append('<g id="regions" fill="none" stroke="#888888">')
        out += [_region_mark(inst.shape, c, rw) for c in centers]
        out.append("</g>")
    if opts.show_pivots and pivots:
        out.append('<g id="pivots" stroke="#c00000">')
        out += [_x_mark(c, rw) for c in pivots]
        out.append("</g>")
    if opts.show_anchors and anchors:
        out.append('<g id="anchors" font-size="0.6" fill="#444444">')
        for name in sorted(anchors):
            x, y = _xy(centers[anchors[name]])
            out.append(f'<text x="{x}" y="{y}">{_esc(name)}</text>')
        out.append("</g>")
    if opts.show_realisation and pts is not None:
        d = "M " + " L ".join(" ".join(_xy(p)) for p in pts)
        out.append(f'<path id="realisation" d="{d}" fill="none" stroke="#000000" '
                   f'stroke-width="{pw}" stroke-linejoin="round"/>')
        if opts.state_colors and edge_states:
            out.append(f'<g id="states" stroke-width="{num(opts.path_stroke * 2)}">')
            for e in sorted(edge_states):
                col = FALSE_COLOR if edge_states[e] == "false" else TRUE_COLOR
                (ax, ay), (bx, by) = _xy(pts[e]), _xy(pts[e + 1])
                out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{col}"/>')
            out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(text: str) -> str:
    return quoteattr(text)[1:-1]


def render_gadget(g, realisation=None, opts: RenderOptions = RenderOptions()) -> str:
    """Render a GadgetGeometry; anchors named ``pivot*`` become X marks."""
    inst = ImprecisePolyline(g.kind.shape, g.regions)
    piv = [p for k, p in sorted(g.anchors.items()) if k.startswith("pivot") or k == "center"]
    return render_svg(inst, realisation, opts, pivots=piv)


def render_compiled(c, realisation=None, opts: RenderOptions = RenderOptions()) -> str:
    """Render a compiled reduction with X marks at every pivot center and,
    with ``opts.state_colors``, wire edges coloured by literal state."""
    piv = []
    for pp, half in c.pivots.values():
        p = pp.center if half == "top" else (pp.center[0], -pp.center[1])
        if c.shape is ShapeKind.SQUARE:
            p = ((p[0] - p[1]) / 2, (p[0] + p[1]) / 2)
        piv.append(p)
    states = None
    if realisation is not None and opts.state_colors:
        states = wire_edge_states(c, realisation)
    return render_svg(c.instance, realisation, opts, pivots=piv, anchors=c.anchors,
                      edge_states=states)


def wire_edge_states(c, realisation) -> dict:
    """Edge index -> "false"/"true" for wire edges, by where the literal lands."""
    from .reduction import literal_states
    lit = literal_states(c, realisation)
    out = {}
    for i in range(len(c.stops) - 1):
        a, b = c.stops[i].key, c.stops[i + 1].key
        if a[0] == "wire" and b[0] == "wire" and a[1] == b[1] and a[1] in lit:
            out[i] = lit[a[1]]
    return out

"""Command-line interface.

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 input error.
The first stdout line of every command except ``compile`` and ``render`` is a
machine-readable verdict.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import gadgets, instance, reduction, render, sat, solver
from .instance import ShapeKind

BUDGET_ENV = "WSIMPRECISE_BUDGET"
OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _shape(text: str) -> ShapeKind:
    try:
        return ShapeKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _level(text: str) -> instance.CandidateLevel:
    if text == "extremes":
        return instance.EXTREMES
    if text in ("extremes+center", "extremes+centre"):
        return instance.EXTREMES_AND_CENTER
    if text.startswith("custom="):
        return instance.parse_custom_level(_read(text[len("custom="):]))
    raise InputError(f"unknown level {text!r}; use extremes, extremes+center or custom=FILE")


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            val = int(env)
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
        if val <= 0:
            raise InputError(f"{BUDGET_ENV} must be positive")
        return val
    return solver.DEFAULT_BUDGET


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return v


def _formula_and_layout(args):
    f = sat.parse_formula(_read(args.formula))
    lay = sat.parse_layout(_read(args.layout), f)
    return f, lay


def _compile(f, lay, shape: ShapeKind):
    if shape is ShapeKind.SQUARE:
        return reduction.to_square_or_diamond(reduction.compile(f, lay, ShapeKind.DISK), "Linf")
    return reduction.compile(f, lay, shape)


# ---------------------------------------------------------------------------
# commands


def cmd_compile(args) -> int:
    f, lay = _formula_and_layout(args)
    c = _compile(f, lay, args.shape)
    _write(args.out, instance.save_instance(c.instance))
    if args.out not in (None, "-"):
        _write(str(args.out) + ".sidecar", c.sidecar())
    return OK


def cmd_solve(args) -> int:
    inst = instance.load_instance(_read(args.instance))
    out = solver.solve(inst, _level(args.level), _budget(args))
    print(out.verdict)
    print(f"nodes {out.nodes}")
    if out.realisable:
        if args.out:
            _write(args.out, instance.save_realisation(out.witness))
        else:
            sys.stdout.write(instance.save_realisation(out.witness))
        return OK
    return NEGATIVE


def cmd_verify(args) -> int:
    inst = instance.load_instance(_read(args.instance))
    r = instance.load_realisation(_read(args.realisation), inst)
    ok = solver.verify(inst, r)
    print("VERIFIED" if ok else "INVALID")
    return OK if ok else NEGATIVE


_GADGETS = {
    "pivot": (gadgets.GadgetKind.PIVOT_DISK, gadgets.GadgetKind.PIVOT_VSEG),
    "variable": (gadgets.GadgetKind.VARIABLE, gadgets.GadgetKind.VARIABLE),
    "clause": (gadgets.GadgetKind.CLAUSE_DISK, gadgets.GadgetKind.CLAUSE_VSEG),
    "wire": (gadgets.GadgetKind.WIRE_DISK, gadgets.GadgetKind.WIRE_VSEG),
}


def _gadget_kind(name: str, shape: ShapeKind) -> gadgets.GadgetKind:
    if shape is ShapeKind.SQUARE:
        raise InputError("gadgets exist for disk and vseg shapes")
    return _GADGETS[name][shape is ShapeKind.VSEG]


def cmd_check_gadget(args) -> int:
    kind = _gadget_kind(args.kind, args.shape)
    level = _level(args.level) if args.level else None
    budget = _budget(args)
    if kind is gadgets.GadgetKind.VARIABLE:
        rep = gadgets.check_variable_lemma(level=level, budget=budget, shape=args.shape)
    elif args.kind == "wire":
        sides = reduction.WIRE_SIDES if args.side == "all" else (args.side,)
        rep = gadgets.LemmaReport(kind, True)
        for s in sides:
            r = gadgets.check_wire_lemma(args.shape, gadgets.WireParams(s), budget)
            rep.ok = rep.ok and r.ok
            rep.partial = rep.partial or r.partial
            rep.notes.append(f"side {s} {r.verdict}")
            rep.counts.update({f"{s}_{k}": v for k, v in r.counts.items()})
            rep.witnesses += [(f"{s}-{label}", i, pts) for label, i, pts in r.witnesses]
    else:
        rep = gadgets.check_gadget_lemma(kind, level=level, budget=budget)
    print(rep.verdict)
    text = rep.to_text()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return OK if rep.ok else NEGATIVE


def cmd_equivalence(args) -> int:
    f, lay = _formula_and_layout(args)
    rep = solver.equivalence_check(f, lay, args.shape, _level(args.level), _budget(args))
    print(rep.verdict)
    text = rep.to_text()
    if args.out:
        body = text
        if rep.constructed_witness is not None:
            body += "witness\n" + instance.save_realisation(rep.constructed_witness)
        _write(args.out, body)
    else:
        sys.stdout.write(text)
    return OK if rep.agree else NEGATIVE


def _sidecar_pivots(text: str) -> list:
    out = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) > 4 and parts[0] == "placement" and parts[2].startswith("pivot"):
            origin = next(p for p in parts if p.startswith("origin="))[len("origin="):]
            x, y = origin.split(",")
            out.append((instance.parse_rat(x), instance.parse_rat(y)))
    return out


def cmd_render(args) -> int:
    opts = render.RenderOptions(show_anchors=args.labels)
    if args.gadget:
        g = gadgets.build_gadget(_gadget_kind(args.gadget, args.shape))
        svg = render.render_gadget(g, opts=opts)
    else:
        if not args.instance:
            raise InputError("render needs an instance file or --gadget KIND")
        inst = instance.load_instance(_read(args.instance))
        r = None
        if args.realisation:
            r = instance.load_realisation(_read(args.realisation), inst)
        piv = []
        side = args.sidecar or (args.instance + ".sidecar")
        if args.sidecar or Path(side).exists():
            piv = _sidecar_pivots(_read(side))
        svg = render.render_svg(inst, r, opts, pivots=piv)
    _write(args.out, svg)
    return OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wsimprecise",
                                description="Weakly simple realisations of imprecise polylines.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, shape=True, level=True, budget=True):
        if shape:
            sp.add_argument("--shape", type=_shape, default=ShapeKind.DISK,
                            help="disk, square or vseg (default disk)")
        if level:
            sp.add_argument("--level", default="extremes",
                            help="extremes, extremes+center or custom=FILE")
        if budget:
            sp.add_argument("--budget", type=_positive, default=None,
                            help=f"search node budget (default ${BUDGET_ENV} or 10^8)")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("compile", help="formula + layout -> instance (+ PATH.sidecar)")
    sp.add_argument("formula")
    sp.add_argument("layout")
    common(sp, level=False, budget=False)
    sp.set_defaults(func=cmd_compile)

    sp = sub.add_parser("solve", help="search for a weakly simple realisation")
    sp.add_argument("instance")
    common(sp, shape=False)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check a realisation certificate")
    sp.add_argument("instance")
    sp.add_argument("realisation")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("check-gadget", help="run a gadget lemma exhaustively")
    sp.add_argument("kind", choices=sorted(_GADGETS))
    sp.add_argument("--side", choices=("left", "middle", "right", "all"), default="all",
                    help="wire leg (wire only)")
    common(sp)
    sp.set_defaults(level=None)
    sp.set_defaults(func=cmd_check_gadget)

    sp = sub.add_parser("equivalence", help="compare SAT and realisability verdicts")
    sp.add_argument("formula")
    sp.add_argument("layout")
    common(sp)
    sp.set_defaults(func=cmd_equivalence)

    sp = sub.add_parser("render", help="SVG of an instance, realisation or gadget")
    sp.add_argument("instance", nargs="?")
    sp.add_argument("realisation", nargs="?")
    sp.add_argument("--gadget", choices=sorted(_GADGETS))
    sp.add_argument("--sidecar", default=None, help="sidecar with pivot placements")
    sp.add_argument("--labels", action="store_true", help="draw anchor labels")
    common(sp, level=False, budget=False)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, instance.FormatError, sat.ParseError, reduction.CompileError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance criteria 1-10, one PASS/FAIL line each at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary under "acceptance criteria".
"""
import itertools
import random
import time
from fractions import Fraction

import pytest

from oracles import end_to_end_corpus, parametric_relation
from wsimprecise import cli
from wsimprecise.gadgets import (ClauseParams, GadgetKind, VariableParams, WireParams,
                                 check_clause_lemma, check_gadget_lemma, check_variable_lemma,
                                 check_wire_lemma)
from wsimprecise.geometry import segment_relation
from wsimprecise.instance import (EXTREMES, EXTREMES_AND_CENTER, ImprecisePolyline,
                                  ShapeKind)
from wsimprecise.reduction import (WIRE_SIDES, compile, to_square_or_diamond,
                                   transform_realisation)
from wsimprecise.solver import equivalence_check, solve, verify
from wsimprecise.weak import is_weakly_simple, perturbation_oracle


def _line(n, ok, detail, elapsed, limit=None):
    lim = "" if limit is None else f" (limit {limit:g} s)"
    return f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}; {elapsed:.1f} s{lim}"


# 1 -----------------------------------------------------------------------


def test_criterion_01_segment_relation_vs_parametric(acceptance):
    t = time.perf_counter()
    pts = [(x, y) for x in range(-2, 3) for y in range(-2, 3)]
    segs = [(a, b) for a in pts for b in pts]
    bad = 0
    for s in segs:
        for u in segs:
            if segment_relation(s, u) is not parametric_relation(s, u):
                bad += 1
    el = time.perf_counter() - t
    ok = bad == 0 and el < 60
    acceptance(_line(1, ok, f"{len(segs) ** 2} ordered pairs, {bad} mismatches", el, 60))
    assert ok


# 2 -----------------------------------------------------------------------


def _grid_polylines(max_vertices):
    grid = [(x, y) for x in range(3) for y in range(3)]
    for n in range(2, max_vertices + 1):
        yield from itertools.product(grid, repeat=n)


def _canonical(poly):
    """Smallest image under the 3x3 grid's symmetries and reversal.  The
    perturbation disk is symmetric too, so the oracle's answer is shared by
    the whole orbit."""
    best = None
    for seq in (poly, poly[::-1]):
        for t in range(8):
            img = []
            for x, y in seq:
                x, y = x - 1, y - 1
                if t & 1:
                    x, y = y, x
                if t & 2:
                    x = -x
                if t & 4:
                    y = -y
                img.append((x + 1, y + 1))
            img = tuple(img)
            if best is None or img < best:
                best = img
    return best


def test_criterion_02_weak_simplicity_vs_perturbation(acceptance):
    t = time.perf_counter()
    radius = Fraction(1, 4)
    bad, total = [], 0
    oracle = {}
    for poly in _grid_polylines(5):
        total += 1
        key = _canonical(poly)
        if key not in oracle:
            oracle[key] = perturbation_oracle(key, radius, 2) is not None
        if is_weakly_simple(poly) != oracle[key]:
            bad.append(poly)
    el = time.perf_counter() - t
    ok = not bad and el < 600
    acceptance(_line(2, ok, f"{total} polylines (<=5 vertices, 3x3 grid; {len(oracle)} "
                            f"oracle orbits), {len(bad)} disagreements", el, 600))
    assert ok, bad[:5]


# 3 -----------------------------------------------------------------------


@pytest.mark.parametrize("kind", [GadgetKind.PIVOT_DISK, GadgetKind.PIVOT_VSEG],
                         ids=["disk", "vseg"])
def test_criterion_03_pivot_lemma(acceptance, kind):
    t = time.perf_counter()
    rep = check_gadget_lemma(kind)
    el = time.perf_counter() - t
    ok = rep.ok and el < 300
    acceptance(_line(3, ok, f"pivot {kind.shape.value}: {rep.verdict} {rep.counts}", el, 300))
    assert ok


# 4 -----------------------------------------------------------------------


def test_criterion_04_variable_lemma(acceptance):
    t = time.perf_counter()
    rep = check_variable_lemma(VariableParams(), EXTREMES_AND_CENTER)
    el = time.perf_counter() - t
    ok = rep.ok and rep.counts["classes"] == 2
    acceptance(_line(4, ok, f"variable: {rep.counts['classes']} classes over "
                            f"{rep.counts['realisations']} realisations", el))
    assert ok


# 5 -----------------------------------------------------------------------


@pytest.mark.parametrize("shape", [ShapeKind.DISK, ShapeKind.VSEG], ids=["disk", "vseg"])
def test_criterion_05_clause_lemma(acceptance, shape):
    t = time.perf_counter()
    rep = check_clause_lemma(shape, ClauseParams(), EXTREMES)
    el = time.perf_counter() - t
    ok = rep.ok and rep.counts["uncover_all_three"] == 0 and el < 300
    pairs = {k: v for k, v in rep.counts.items() if k.startswith("uncover_")}
    acceptance(_line(5, ok, f"clause {shape.value}: {pairs}", el, 300))
    assert ok


# 6 -----------------------------------------------------------------------


@pytest.mark.parametrize("side", WIRE_SIDES)
@pytest.mark.parametrize("shape", [ShapeKind.DISK, ShapeKind.VSEG], ids=["disk", "vseg"])
def test_criterion_06_wire_lemma(acceptance, shape, side):
    t = time.perf_counter()
    rep = check_wire_lemma(shape, WireParams(side))
    el = time.perf_counter() - t
    ok = rep.ok and el < 300
    acceptance(_line(6, ok, f"wire {shape.value} {side}: {rep.verdict} {rep.counts}", el, 300))
    assert ok


# 7 and 8 -------------------------------------------------------------------

_E2E: dict = {}


def _end_to_end():
    if not _E2E:
        t = time.perf_counter()
        reports = []
        for shape in (ShapeKind.DISK, ShapeKind.VSEG):
            for name, f, lay in end_to_end_corpus():
                reports.append((shape, name, f, lay, equivalence_check(f, lay, shape)))
        _E2E["reports"] = reports
        _E2E["seconds"] = time.perf_counter() - t
    return _E2E


def test_criterion_07_end_to_end(acceptance):
    data = _end_to_end()
    reports = data["reports"]
    bad = [(s.value, n) for s, n, _f, _l, r in reports if not r.agree]
    witnesses_ok = all(r.constructed_ok for *_x, r in reports if r.sat)
    n_formulas = len({n for _s, n, *_x in reports})
    unsat = sum(1 for s, _n, _f, _l, r in reports if s is ShapeKind.DISK and r.sat is False)
    ok = not bad and witnesses_ok and n_formulas >= 10 and data["seconds"] < 1800
    acceptance(_line(7, ok, f"{n_formulas} formulas x 2 shapes ({unsat} unsatisfiable), "
                            f"disagreements {bad}, constructed witnesses verified "
                            f"{witnesses_ok}", data["seconds"], 1800))
    assert ok


def test_criterion_08_square_and_diamond(acceptance):
    data = _end_to_end()
    t = time.perf_counter()
    checked = failed = 0
    for shape, name, f, lay, rep in data["reports"]:
        if shape is not ShapeKind.DISK:
            continue
        c = compile(f, lay, ShapeKind.DISK)
        for w in (rep.solver_witness, rep.constructed_witness):
            if w is None:
                continue
            for norm in ("L1", "Linf"):
                target = to_square_or_diamond(c, norm)
                checked += 1
                if not verify(target.instance, transform_realisation(w, norm)):
                    failed += 1
    el = time.perf_counter() - t
    ok = failed == 0 and checked > 0
    acceptance(_line(8, ok, f"{checked} re-verifications on diamond/square, "
                            f"{failed} failures", el))
    assert ok


# 9 -----------------------------------------------------------------------


SHAPES = (ShapeKind.DISK, ShapeKind.SQUARE, ShapeKind.DIAMOND, ShapeKind.VSEG)


def small_corpus():
    """Instances with at most 8 regions: random centers at two densities in
    every shape, forced crossings with random tails, plus the variable
    gadget and part of a clause."""
    rng = random.Random(99)
    out = []
    for k in range(80):
        shape = SHAPES[k % 4]
        n = rng.randint(2, 6) if k < 60 else rng.randint(7, 8)
        spread = 8 if k % 8 < 4 else 14
        centers = [(Fraction(rng.randint(0, spread), 2), Fraction(rng.randint(0, spread), 2))
                   for _ in range(n)]
        out.append(ImprecisePolyline.from_centers(shape, centers))
    for k in range(24):
        # the third edge must cross the first one
        centers = [(0, 0), (6, 0), (3, 5), (3, -5)]
        centers += [(rng.randint(-6, 9), rng.randint(-8, 8)) for _ in range(k % 4)]
        out.append(ImprecisePolyline.from_centers(SHAPES[k % 4], centers))
    from wsimprecise.gadgets import build_clause, build_variable
    g = build_variable(VariableParams())
    out.append(ImprecisePolyline(ShapeKind.DISK, g.regions))
    out.append(ImprecisePolyline(ShapeKind.VSEG, g.regions))
    cl = build_clause(ShapeKind.VSEG)
    out.append(ImprecisePolyline(ShapeKind.VSEG, cl.regions[:6]))
    assert all(len(inst) <= 8 for inst in out)
    return out


def test_criterion_09_pruned_vs_unpruned(acceptance):
    t = time.perf_counter()
    corpus = small_corpus()
    bad = []
    yes = 0
    for inst in corpus:
        a = solve(inst, EXTREMES)
        b = solve(inst, EXTREMES, prune=False)
        yes += b.realisable
        if a.realisable != b.realisable:
            bad.append(inst)
    el = time.perf_counter() - t
    ok = not bad and 0 < yes < len(corpus)
    acceptance(_line(9, ok, f"{len(corpus)} instances (<=8 regions, {yes} realisable), "
                            f"{len(bad)} verdict mismatches", el))
    assert ok


# 10 ----------------------------------------------------------------------


def _compile_and_solve(tmp, shape):
    from oracles import DATA
    out = tmp / "inst.txt"
    real = tmp / "real.txt"
    codes = (cli.main(["compile", str(DATA / "one_clause.cnf"), str(DATA / "one_clause.layout"),
                       "--shape", shape, "--out", str(out)]),
             cli.main(["solve", str(out), "--out", str(real)]))
    return codes, out.read_bytes(), (tmp / "inst.txt.sidecar").read_bytes(), real.read_bytes()


def test_criterion_10_determinism(acceptance, tmp_path, capsys):
    t = time.perf_counter()
    same = True
    for shape in ("disk", "vseg"):
        a, b = tmp_path / f"{shape}1", tmp_path / f"{shape}2"
        a.mkdir()
        b.mkdir()
        ra = _compile_and_solve(a, shape)
        out_a = capsys.readouterr().out
        rb = _compile_and_solve(b, shape)
        out_b = capsys.readouterr().out
        same = same and ra == rb and out_a == out_b and ra[0] == (0, 0)
    el = time.perf_counter() - t
    acceptance(_line(10, same, "two compile+solve runs per shape byte-identical "
                               "(instance, sidecar, witness, stdout)", el))
    assert same

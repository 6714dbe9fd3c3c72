"""Realisation search over finite candidate sets, and certificate checking.

:func:`solve` walks the regions in polyline order.  Every prefix is kept
weakly simple (a sub-chain of a weakly simple polyline is weakly simple, so a
failing prefix can be discarded).  Failures carry the set of vertex indices
that caused them, which lets the search jump back past choices that played no
part (conflict-directed backjumping).
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .instance import (CandidateLevel, EXTREMES, ImprecisePolyline, Realisation,
                       candidate_sets, contains)
from .weak import IncrementalChecker, is_weakly_simple

DEFAULT_BUDGET = 10 ** 8


@dataclass
class SolveOutcome:
    status: str                          # realisable | none | budget
    witness: Optional[Realisation] = None
    nodes: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def realisable(self) -> bool:
        return self.status == "realisable"

    @property
    def verdict(self) -> str:
        return {"realisable": "REALISABLE", "none": "NONE_OVER_CANDIDATES",
                "budget": "BUDGET_EXCEEDED"}[self.status]


class _OutOfBudget(Exception):
    pass


def verify(inst: ImprecisePolyline, r) -> bool:
    pts = list(r.points if isinstance(r, Realisation) else r)
    if len(pts) != len(inst.regions):
        raise ValueError(f"realisation has {len(pts)} points, instance has {len(inst.regions)}")
    if not all(contains(reg, inst.shape, p) for reg, p in zip(inst.regions, pts)):
        return False
    return is_weakly_simple(pts)


def solve(inst: ImprecisePolyline, level: CandidateLevel = EXTREMES,
          budget: int = DEFAULT_BUDGET, prune: bool = True,
          candidates: Optional[Sequence[Sequence]] = None) -> SolveOutcome:
    cands = [list(c) for c in candidates] if candidates is not None \
        else candidate_sets(inst, level)
    if not prune:
        return _solve_unpruned(cands, budget)
    n = len(cands)
    checker = IncrementalChecker()
    nodes = 0
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 1000))
    chosen = [0] * n
    # learned nogoods: conflict sets of failed subtrees, keyed by their last index
    nogoods: dict = {}

    def blocked(i, v):
        for ng in nogoods.get(i, ()):
            if ng[i] == v and all(chosen[j] == w for j, w in ng.items() if j != i):
                return frozenset(ng)
        return None

    def learn(conf):
        if conf:
            m = max(conf)
            ng = {j: chosen[j] for j in conf}
            nogoods.setdefault(m, []).append(ng)

    def search(i):
        nonlocal nodes
        if i == n:
            return True, None
        conf: set = set()
        for v, c in enumerate(cands[i]):
            nodes += 1
            if nodes > budget:
                raise _OutOfBudget
            chosen[i] = v
            bad = blocked(i, v)
            if bad is not None:
                conf |= bad
                continue
            bad = checker.push(c)
            if bad is None:
                found, sub = search(i + 1)
                if found:
                    return True, None
                checker.pop()
                if i not in sub:
                    return False, sub
                conf |= sub
            else:
                checker.pop()
                conf |= bad
        conf.discard(i)
        learn(conf)
        return False, conf

    try:
        found, _ = search(0)
    except _OutOfBudget:
        return SolveOutcome("budget", nodes=nodes, stats={"depth": len(checker.pts)})
    finally:
        sys.setrecursionlimit(limit)
    if found:
        return SolveOutcome("realisable", Realisation(tuple(checker.pts)), nodes)
    return SolveOutcome("none", nodes=nodes)


def _solve_unpruned(cands, budget) -> SolveOutcome:
    nodes = 0
    for pts in _product(cands):
        nodes += 1
        if nodes > budget:
            return SolveOutcome("budget", nodes=nodes)
        if is_weakly_simple(pts):
            return SolveOutcome("realisable", Realisation(tuple(pts)), nodes)
    return SolveOutcome("none", nodes=nodes)


def _product(cands):
    import itertools
    return itertools.product(*cands)


def enumerate_realisations(inst: ImprecisePolyline, level: CandidateLevel = EXTREMES,
                           candidates: Optional[Sequence[Sequence]] = None,
                           budget: int = DEFAULT_BUDGET) -> Iterator[tuple]:
    """Yield every weakly simple realisation over the candidate sets, in
    depth-first order.  Raises RuntimeError when the node budget runs out."""
    cands = [list(c) for c in candidates] if candidates is not None \
        else candidate_sets(inst, level)
    n = len(cands)
    checker = IncrementalChecker()
    nodes = 0
    # explicit stack of candidate iterators keeps deep instances off the C stack
    stack = [iter(cands[0])]
    while stack:
        i = len(stack) - 1
        try:
            c = next(stack[-1])
        except StopIteration:
            stack.pop()
            if stack:
                checker.pop()
            continue
        nodes += 1
        if nodes > budget:
            raise RuntimeError("enumeration budget exceeded")
        if checker.push(c) is not None:
            checker.pop()
            continue
        if i + 1 == n:
            yield tuple(checker.pts)
            checker.pop()
        else:
            stack.append(iter(cands[i + 1]))


@dataclass
class EquivalenceReport:
    sat: Optional[bool]                  # None: SAT side inconclusive
    realisable: Optional[bool]           # None: solver ran out of budget
    assignment: Optional[tuple] = None
    solver_witness: Optional[Realisation] = None
    constructed_witness: Optional[Realisation] = None
    constructed_ok: Optional[bool] = None
    regions: int = 0
    nodes: int = 0
    seconds: float = 0.0

    @property
    def inconclusive(self) -> bool:
        return self.sat is None or self.realisable is None

    @property
    def agree(self) -> bool:
        return (not self.inconclusive and self.sat == self.realisable
                and self.constructed_ok is not False)

    @property
    def verdict(self) -> str:
        if self.inconclusive:
            return "INCONCLUSIVE"
        return "AGREE" if self.agree else "DISAGREE"

    def to_text(self) -> str:
        def b(v):
            return "unknown" if v is None else str(v).lower()
        lines = [f"verdict {self.verdict}", f"sat {b(self.sat)}",
                 f"realisable {b(self.realisable)}", f"regions {self.regions}",
                 f"nodes {self.nodes}"]
        if self.assignment is not None:
            lines.append("assignment " + " ".join(
                str(i + 1) if v else str(-(i + 1)) for i, v in enumerate(self.assignment)))
        if self.constructed_ok is not None:
            lines.append(f"constructed_witness {'verified' if self.constructed_ok else 'invalid'}")
        return "\n".join(lines) + "\n"


def equivalence_check(f, lay, shape, level: CandidateLevel = EXTREMES,
                      budget: int = DEFAULT_BUDGET) -> EquivalenceReport:
    """Compare the SAT verdict with the geometric verdict of the compiled
    instance; when satisfiable, also verify the witness built from the
    assignment."""
    import time
    from .instance import ShapeKind
    from .reduction import assignment_to_realisation, compile, to_square_or_diamond
    from .sat import BudgetExceeded, brute_force_sat
    t0 = time.perf_counter()
    if shape is ShapeKind.SQUARE:
        c = to_square_or_diamond(compile(f, lay, ShapeKind.DISK), "Linf")
    else:
        c = compile(f, lay, shape)
    rep = EquivalenceReport(None, None, regions=len(c.instance))
    try:
        a = brute_force_sat(f)
        rep.sat = a is not None
        rep.assignment = a
    except BudgetExceeded:
        pass
    out = solve(c.instance, level, budget)
    rep.nodes = out.nodes
    if out.status != "budget":
        rep.realisable = out.realisable
        rep.solver_witness = out.witness
    if rep.assignment is not None:
        w = assignment_to_realisation(c, rep.assignment)
        rep.constructed_witness = w
        rep.constructed_ok = verify(c.instance, w)
    rep.seconds = time.perf_counter() - t0
    return rep

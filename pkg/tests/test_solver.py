import itertools

import pytest
from hypothesis import given, settings, strategies as st

from wsimprecise.geometry import P
from wsimprecise.instance import (EXTREMES, EXTREMES_AND_CENTER, ImprecisePolyline, ShapeKind,
                                  candidate_sets)
from wsimprecise.solver import enumerate_realisations, solve, verify
from wsimprecise.weak import is_weakly_simple

shapes = st.sampled_from(list(ShapeKind))
centers = st.lists(st.tuples(st.integers(0, 10), st.integers(0, 10)), min_size=2, max_size=6)

CROSSING = [(0, 0), (6, 0), (3, 5), (3, -5)]


def _brute_force(inst, level=EXTREMES):
    return [p for p in itertools.product(*candidate_sets(inst, level)) if is_weakly_simple(p)]


@settings(max_examples=60, deadline=None)
@given(shapes, centers)
def test_pruned_search_finds_the_first_realisation(shape, cs):
    inst = ImprecisePolyline.from_centers(shape, cs)
    a = solve(inst)
    b = solve(inst, prune=False)
    assert a.status == b.status
    if a.realisable:
        # backjumping and nogoods skip only dead subtrees, so the
        # depth-first order is kept
        assert a.witness == b.witness
        assert verify(inst, a.witness)


@settings(max_examples=30, deadline=None)
@given(shapes, centers)
def test_enumeration_matches_brute_force(shape, cs):
    inst = ImprecisePolyline.from_centers(shape, cs)
    assert list(enumerate_realisations(inst)) == _brute_force(inst)


@pytest.mark.parametrize("shape", list(ShapeKind))
def test_forced_crossing_is_not_realisable(shape):
    inst = ImprecisePolyline.from_centers(shape, CROSSING)
    out = solve(inst, EXTREMES_AND_CENTER)
    assert out.status == "none" and out.verdict == "NONE_OVER_CANDIDATES"
    assert not _brute_force(inst, EXTREMES_AND_CENTER)


def test_backjumping_over_irrelevant_prefix():
    # a long free prefix far away, then a forced crossing; nogood learning
    # keeps the node count linear rather than 4^prefix
    far = [(100 + 3 * k, 100) for k in range(10)]
    inst = ImprecisePolyline.from_centers(ShapeKind.DISK, far + CROSSING)
    out = solve(inst)
    assert out.status == "none"
    assert out.nodes < 2000


def test_budget():
    inst = ImprecisePolyline.from_centers(ShapeKind.DISK, CROSSING)
    out = solve(inst, budget=3)
    assert out.status == "budget" and out.verdict == "BUDGET_EXCEEDED"
    assert solve(inst, budget=3, prune=False).status == "budget"
    with pytest.raises(RuntimeError):
        list(enumerate_realisations(inst, budget=3))


def test_verify():
    inst = ImprecisePolyline.from_centers(ShapeKind.VSEG, [(0, 0), (2, 0), (1, 0)])
    assert verify(inst, [P(0, 0), P(2, 0), P(1, 0)])          # folds back, weakly simple
    assert not verify(inst, [P(0, 0), P(2, 0), P(1, 2)])      # outside the last segment
    assert verify(inst, [P(0, 1), P(2, 0), P(1, -1)])
    with pytest.raises(ValueError):
        verify(inst, [P(0, 0)])


def test_explicit_candidates():
    inst = ImprecisePolyline.from_centers(ShapeKind.DISK, [(0, 0), (3, 0)])
    out = solve(inst, candidates=[[P(1, 0)], [P(2, 0), P(3, 1)]])
    assert out.witness.points == (P(1, 0), P(2, 0))

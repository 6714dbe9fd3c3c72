from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wsimprecise.weak import (IncrementalChecker, Side, is_simple, is_weakly_simple,
                              order_type, perturbation_oracle, weak_simplicity_conflict)

grid_pt = st.tuples(st.integers(0, 3), st.integers(0, 3))
polylines = st.lists(grid_pt, min_size=2, max_size=7)
QUARTER = Fraction(1, 4)


@pytest.mark.parametrize("poly, want", [
    ([(0, 0), (1, 0)], True),
    ([(0, 0), (2, 0), (1, 0)], True),                      # spike folds back
    ([(0, 0), (2, 2), (0, 2), (2, 0)], False),             # proper crossing
    ([(0, 0), (2, 0), (2, 1), (1, 0), (1, -1)], False),    # touches then leaves on the other side
    ([(0, 0), (2, 0), (2, 1), (1, 0), (1, 1)], True),      # touches from above and stays
    ([(0, 0), (1, 0), (0, 0), (1, 0)], True),              # back and forth
    ([(0, 0), (0, 0), (1, 1)], True),                      # repeated vertex
    ([(0, 1), (2, 1), (1, 1), (1, 0), (1, 2)], False),     # spike crossed by a later edge
])
def test_weak_simplicity_cases(poly, want):
    assert is_weakly_simple(poly) == want
    assert (perturbation_oracle(poly, QUARTER, 2) is not None) == want


def test_simple_is_weakly_simple():
    assert is_simple([(0, 0), (1, 0), (1, 1)])
    assert not is_simple([(0, 0), (2, 0), (1, 0)])
    assert is_weakly_simple([(0, 0), (2, 0), (1, 0)])


# The oracle is only a faithful reference while near-misses are far apart
# compared with the perturbation radius, hence the coarse grid.
coarse = st.lists(st.tuples(st.integers(0, 3).map(lambda v: 4 * v),
                            st.integers(0, 3).map(lambda v: 4 * v)), min_size=2, max_size=6)


@settings(max_examples=150, deadline=None)
@given(coarse)
def test_agrees_with_perturbation_oracle(poly):
    assert is_weakly_simple(poly) == (perturbation_oracle(poly, QUARTER, 2) is not None)


@given(polylines)
def test_reversal_and_translation_invariance(poly):
    want = is_weakly_simple(poly)
    assert is_weakly_simple(poly[::-1]) == want
    assert is_weakly_simple([(x + 5, y - 3) for x, y in poly]) == want
    assert is_weakly_simple([(2 * x, 2 * y) for x, y in poly]) == want
    assert is_weakly_simple([(y, x) for x, y in poly]) == want


@given(polylines)
def test_simple_implies_weakly_simple(poly):
    if is_simple(poly):
        assert is_weakly_simple(poly)


@given(polylines)
def test_conflict_rules_out_the_prefix(poly):
    conf = weak_simplicity_conflict(poly)
    if conf is None:
        return
    assert conf and max(conf) < len(poly)
    assert not is_weakly_simple(poly[:max(conf) + 1])


@pytest.mark.parametrize("shrink", [True, False])
@given(poly=polylines)
def test_incremental_matches_batch(shrink, poly):
    chk = IncrementalChecker(shrink=shrink)
    for k, p in enumerate(poly):
        conf = chk.push(p)
        assert (conf is None) == is_weakly_simple(poly[:k + 1])
        if conf is not None:
            assert max(conf) == k
            assert not is_weakly_simple(poly[:k + 1])
            break
    # pop restores the checker exactly
    while chk.pts:
        chk.pop()
    assert not chk.q and not chk.boxes and not chk.contacts


def test_incremental_pop_then_push_other_branch():
    chk = IncrementalChecker()
    for p in [(0, 0), (2, 0), (2, 1), (1, 0)]:
        assert chk.push(p) is None
    assert chk.push((1, -1)) is not None
    chk.pop()
    assert chk.push((1, 1)) is None


def test_order_type():
    ot = order_type([(0, 0), (2, 0), (1, 1), (1, 1)])
    assert ot[2, 0] is Side.ABOVE
    assert ot[0, 1] is Side.ABOVE        # left of the edge direction
    assert ot[1, 0] is Side.ON and order_type([(0, 0), (1, 0), (1, -1)])[2, 0] is Side.BELOW
    assert ot[0, 0] is Side.ON
    assert ot[0, 2] is Side.DEGENERATE


def test_oracle_returns_simple_perturbation_within_radius():
    poly = [(0, 0), (2, 0), (1, 0)]
    out = perturbation_oracle(poly, QUARTER, 2)
    assert out is not None and is_simple(out)
    for (x, y), q in zip(poly, out):
        assert (q.x - x) ** 2 + (q.y - y) ** 2 <= QUARTER ** 2
    assert perturbation_oracle([], QUARTER, 2) is None
    with pytest.raises(ValueError):
        perturbation_oracle(poly, QUARTER, 0)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wsimprecise.gadgets import (CLAUSE_DISK_FALSE, CLAUSE_VSEG_FALSE, ROT0, ROT90, ROT180,
                                 ClauseParams, Frame, GadgetError, GadgetKind, PivotParams,
                                 Rotation, VariableParams, build_clause, build_gadget,
                                 build_pivot, build_variable, check_pivot_lemma,
                                 check_variable_lemma, pivot_components, uncovered_positions,
                                 validate_pivot_placement, variable_state)
from wsimprecise.geometry import P
from wsimprecise.instance import ShapeKind

rats = st.fractions(-20, 20, max_denominator=6)
rotations = st.sampled_from([ROT0, ROT90, ROT180, Rotation(Fraction(3, 5), Fraction(4, 5))])


def test_rotation_must_be_orthonormal():
    with pytest.raises(GadgetError):
        Rotation(1, 1)
    assert ROT90.apply(P(1, 0)) == P(0, 1)


@given(rotations, rats, rats, rats, rats)
def test_frame_round_trip(rot, ox, oy, x, y):
    fr = Frame(P(ox, oy), rot)
    assert fr.local(fr.apply(P(x, y))) == P(x, y)


@pytest.mark.parametrize("shape, n", [(ShapeKind.DISK, 7), (ShapeKind.VSEG, 5)])
def test_pivot_components_are_point_symmetric(shape, n):
    top, bottom = pivot_components(shape, PivotParams(P(3, 4)))
    assert len(top) == len(bottom) == n
    for a, b in zip(top, bottom):
        assert a + b == P(6, 8)
    g = build_pivot(shape, PivotParams())
    assert len(g.regions) == 2 * n and g.anchors["center"] == P(0, 0)


def test_pivot_parameter_errors():
    with pytest.raises(GadgetError):
        pivot_components(ShapeKind.VSEG, PivotParams(rot=ROT90))
    with pytest.raises(GadgetError):
        pivot_components(ShapeKind.DISK, PivotParams(eps=Fraction(0)))


def test_validate_pivot_placement():
    assert validate_pivot_placement(P(0, 0), ROT0, P(-3, 0), P(3, 0)) > 0
    assert validate_pivot_placement(P(0, 0), ROT0, P(-3, 0), P(3, 0), ShapeKind.VSEG) > 0
    # a rotated pivot sees the endpoints in its own frame
    assert validate_pivot_placement(P(0, 0), ROT90, P(0, -3), P(0, 3)) > 0
    with pytest.raises(GadgetError, match="less than -1"):
        validate_pivot_placement(P(0, 0), ROT0, P(0, 0), P(3, 0))
    with pytest.raises(GadgetError, match="greater than 1"):
        validate_pivot_placement(P(0, 0), ROT0, P(-3, 0), P(1, 0))
    with pytest.raises(GadgetError, match="miss"):
        validate_pivot_placement(P(0, 0), ROT0, P(-3, 20), P(3, 20))


def test_variable_gadget():
    g = build_variable(VariableParams(P(1, 1), Fraction(10)))
    assert g.centers[-1] == P(11, 1)
    with pytest.raises(GadgetError):
        build_variable(VariableParams(l=Fraction(8)))


def test_variable_state():
    base = [P(0, 0), P(8, 0), P(5, 1), P(5, -1)]
    assert variable_state(base + [P(3, 1), P(9, 1)]) == "false"
    assert variable_state(base + [P(3, -1), P(9, -1)]) == "true"
    assert variable_state(base + [P(3, 0), P(9, 0)]) is None
    assert variable_state(base + [P(3, 0), P(3, 1)]) is None


@pytest.mark.parametrize("params", [VariableParams(P(3, 1), Fraction(12)),
                                    VariableParams(P(-7, 0), Fraction(17, 2))])
def test_variable_lemma_elsewhere(params):
    rep = check_variable_lemma(params)
    assert rep.ok and rep.counts["classes"] == 2


def test_variable_lemma_for_segments():
    assert check_variable_lemma(shape=ShapeKind.VSEG).ok


@pytest.mark.parametrize("shape, corners", [
    (ShapeKind.DISK, 4), (ShapeKind.VSEG, 6)])
def test_clause_layout(shape, corners):
    g = build_clause(shape, ClauseParams(P(10, 10)))
    assert g.splice_slots["corners"] == (0, corners)
    for i in (1, 2, 3):
        assert {f"x{i}", f"x{i}_false", f"x{i}_true"} <= set(g.anchors)
    marks = [k for k in g.anchors if k.startswith("pivot")]
    assert len(marks) == 2


def test_uncovered_positions():
    # corners at the region centers cover every false position
    assert uncovered_positions(ShapeKind.DISK, [P(0, 0), P(0, -5), P(6, -5), P(6, 0)]) == set()
    # a flat polygon above them uncovers all three
    flat = [P(-1, 0), P(-1, -1), P(7, -1), P(7, 0)]
    assert uncovered_positions(ShapeKind.DISK, flat) == {1, 2, 3}
    assert len(CLAUSE_DISK_FALSE) == len(CLAUSE_VSEG_FALSE) == 3


def test_pivot_lemma_vseg_variants():
    for eps in (Fraction(1, 10), Fraction(1, 2)):
        rep = check_pivot_lemma(ShapeKind.VSEG, PivotParams(P(4, -2), ROT0, eps),
                                end_a=P(-4, 1), end_b=P(3, -1))
        assert rep.ok, rep.counts


def test_build_gadget_dispatch():
    for kind in GadgetKind:
        g = build_gadget(kind)
        assert g.kind is kind and len(g.regions) >= 2

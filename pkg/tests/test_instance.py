from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wsimprecise.geometry import P
from wsimprecise.instance import (EXTREMES, EXTREMES_AND_CENTER, FormatError, ImprecisePolyline,
                                  Realisation, Region, ShapeKind, candidate_points,
                                  candidate_sets, contains, custom_level, extreme_points,
                                  format_rat, is_realisation, load_instance, load_realisation,
                                  parse_custom_level, parse_rat, save_instance, save_realisation)

rats = st.fractions(-50, 50, max_denominator=12)
shapes = st.sampled_from(list(ShapeKind))


@pytest.mark.parametrize("shape, inside, outside", [
    (ShapeKind.DISK, [(1, 0), (Fraction(3, 5), Fraction(4, 5))], [(1, 1)]),
    (ShapeKind.SQUARE, [(Fraction(1, 2), Fraction(-1, 2))], [(Fraction(3, 5), 0)]),
    (ShapeKind.DIAMOND, [(Fraction(1, 2), Fraction(1, 2))], [(Fraction(1, 2), Fraction(3, 5))]),
    (ShapeKind.VSEG, [(0, 1), (0, -1)], [(Fraction(1, 100), 0), (0, Fraction(11, 10))]),
])
def test_contains(shape, inside, outside):
    r = Region(P(0, 0))
    assert all(contains(r, shape, p) for p in inside)
    assert not any(contains(r, shape, p) for p in outside)


@given(shapes, rats, rats)
def test_extremes_lie_in_region(shape, x, y):
    r = Region(P(x, y))
    ext = extreme_points(r, shape)
    assert len(ext) == (2 if shape is ShapeKind.VSEG else 4)
    assert all(contains(r, shape, p) for p in ext)
    assert candidate_points(r, shape, EXTREMES_AND_CENTER)[-1] == r.center


def test_square_extremes_are_corners():
    ext = extreme_points(Region(P(0, 0)), ShapeKind.SQUARE)
    assert {(abs(p.x), abs(p.y)) for p in ext} == {(Fraction(1, 2), Fraction(1, 2))}


def test_custom_level():
    inst = ImprecisePolyline.from_centers(ShapeKind.DISK, [(0, 0), (5, 0)])
    lvl = parse_custom_level("# pinned\n1 5 0 5 1\n")
    cs = candidate_sets(inst, lvl)
    assert cs[0] == extreme_points(inst.regions[0], ShapeKind.DISK)
    assert cs[1] == [P(5, 0), P(5, 1)]
    with pytest.raises(ValueError, match="outside"):
        candidate_sets(inst, custom_level({0: [(3, 3)]}))
    with pytest.raises(ValueError):
        custom_level({0: []})


@pytest.mark.parametrize("text", ["0 1\n", "x 1 2\n", "0 1 2\n0 3 4\n"])
def test_custom_level_errors(text):
    with pytest.raises(FormatError):
        parse_custom_level(text)


@given(shapes, st.lists(st.tuples(rats, rats), min_size=2, max_size=8))
def test_instance_round_trip(shape, centers):
    inst = ImprecisePolyline.from_centers(shape, centers)
    assert load_instance(save_instance(inst)) == inst


def test_unit_length_scaling():
    inst = ImprecisePolyline.from_centers(ShapeKind.VSEG, [(0, 0), (3, 1)])
    text = save_instance(inst, unit_length=True)
    assert "scale 1/2" in text and "3/2 1/2" in text
    assert load_instance(text) == inst
    with pytest.raises(ValueError):
        save_instance(ImprecisePolyline.from_centers(ShapeKind.DISK, [(0, 0), (3, 1)]), True)


@pytest.mark.parametrize("text", [
    "0 0\n1 1\n",
    "shape disk\n0 0\n",
    "shape disk\nshape vseg\n0 0\n1 1\n",
    "shape blob\n0 0\n1 1\n",
    "shape disk\n0.5 0\n1 1\n",
    "shape disk\n1/0 0\n1 1\n",
    "shape disk\n0 0 0\n1 1\n",
    "shape disk\n0 0\nscale 2\n1 1\n",
])
def test_load_instance_errors(text):
    with pytest.raises(FormatError):
        load_instance(text)


def test_realisation_round_trip_and_check():
    inst = ImprecisePolyline.from_centers(ShapeKind.VSEG, [(0, 0), (3, 1)])
    r = Realisation((P(0, Fraction(-1, 3)), P(3, 2)))
    assert load_realisation(save_realisation(r), inst) == r
    assert is_realisation(inst, r.points)
    assert not is_realisation(inst, (P(0, 0), P(3, Fraction(5, 2))))
    with pytest.raises(FormatError):
        load_realisation("0 0\n", inst)
    with pytest.raises(ValueError):
        is_realisation(inst, (P(0, 0),))


@given(rats)
def test_rat_format(v):
    assert parse_rat(format_rat(v)) == v


def test_polyline_needs_two_regions():
    with pytest.raises(ValueError):
        ImprecisePolyline.from_centers(ShapeKind.DISK, [(0, 0)])
    assert str(EXTREMES) == "extremes"

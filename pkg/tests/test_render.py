import re
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import fixed_cases
from wsimprecise.gadgets import GadgetKind, build_gadget
from wsimprecise.geometry import P
from wsimprecise.instance import ImprecisePolyline, ShapeKind
from wsimprecise.reduction import assignment_to_realisation, compile
from wsimprecise.render import (RenderOptions, num, render_compiled, render_gadget, render_svg,
                                wire_edge_states)

NS = "{http://www.w3.org/2000/svg}"
TAG = {ShapeKind.DISK: "circle", ShapeKind.SQUARE: "rect", ShapeKind.DIAMOND: "polygon",
       ShapeKind.VSEG: "line"}


def _parse(svg):
    return ET.fromstring(svg.split("\n", 1)[1])


def _regions(root):
    return [e for e in root.iter() if e.get("class") == "region"]


def _paths(root):
    return root.findall(f".//{NS}path")


def _pivots(root):
    return [e for e in root.iter(f"{NS}g") if e.get("class") == "pivot"]


@pytest.mark.parametrize("shape", list(ShapeKind))
def test_two_regions_two_marks_no_path(shape):
    inst = ImprecisePolyline.from_centers(shape, [(0, 0), (3, 1)])
    root = _parse(render_svg(inst))
    marks = _regions(root)
    assert len(marks) == 2 and {m.tag for m in marks} == {NS + TAG[shape]}
    assert _paths(root) == []


def test_realisation_is_one_path_with_flipped_y():
    inst = ImprecisePolyline.from_centers(ShapeKind.DISK, [(0, 0), (3, 1)])
    root = _parse(render_svg(inst, [P(1, 0), P(3, 2)]))
    (path,) = _paths(root)
    assert path.get("d") == "M 1 0 L 3 -2"
    with pytest.raises(ValueError):
        render_svg(inst, [P(1, 0)])


def test_clause_gadget_marks():
    root = _parse(render_gadget(build_gadget(GadgetKind.CLAUSE_DISK)))
    assert len(_regions(root)) == 7
    assert len(_pivots(root)) == 2


def test_pivot_gadget_has_one_x():
    root = _parse(render_gadget(build_gadget(GadgetKind.PIVOT_DISK)))
    assert len(_pivots(root)) == 1 and len(_regions(root)) == 14


@given(st.fractions(-1000, 1000, max_denominator=10 ** 6))
def test_num_has_at_most_nine_significant_digits(v):
    s = num(v)
    digits = re.sub(r"e.*$", "", s).replace("-", "").replace(".", "").lstrip("0")
    assert len(digits) <= 9
    assert abs(float(s) - float(v)) <= 1e-8 * max(1.0, abs(float(v)))


def test_num_examples():
    assert num(Fraction(1, 3)) == "0.333333333"
    assert num(-0.0) == "0"
    assert num(2) == "2"


def test_compiled_render_with_states():
    _name, f, lay = fixed_cases()[0]
    c = compile(f, lay, ShapeKind.DISK)
    r = assignment_to_realisation(c, (True, False, False))
    svg = render_compiled(c, r, RenderOptions(state_colors=True, show_anchors=True))
    root = _parse(svg)
    assert len(_regions(root)) == len(c.instance)
    assert len(_pivots(root)) == len(c.pivots)
    assert len(_paths(root)) == 1
    states = wire_edge_states(c, r)
    assert set(states.values()) == {"false", "true"}
    colored = root.find(f".//{NS}g[@id='states']")
    assert len(colored) == len(states)
    assert root.find(f".//{NS}g[@id='anchors']") is not None


def test_options_validated():
    with pytest.raises(ValueError):
        RenderOptions(margin=0)

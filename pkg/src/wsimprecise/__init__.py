"""Weakly simple realisations of imprecise polylines.

Exact geometry, a weak-simplicity decider, gadget lemmas and the reduction
from planar monotone 3-SAT, with a backtracking solver and SVG output.
"""
from .geometry import Point, SegmentRelation, segment_relation
from .instance import (EXTREMES, EXTREMES_AND_CENTER, ImprecisePolyline, Realisation,
                       ShapeKind)
from .reduction import assignment_to_realisation, compile, to_square_or_diamond
from .sat import brute_force_sat, parse_formula, parse_layout
from .solver import equivalence_check, solve, verify
from .weak import is_weakly_simple, perturbation_oracle

__version__ = "0.1.0"

__all__ = [
    "Point", "SegmentRelation", "segment_relation", "EXTREMES", "EXTREMES_AND_CENTER",
    "ImprecisePolyline", "Realisation", "ShapeKind", "assignment_to_realisation", "compile",
    "to_square_or_diamond", "brute_force_sat", "parse_formula", "parse_layout",
    "equivalence_check", "solve", "verify", "is_weakly_simple", "perturbation_oracle",
]

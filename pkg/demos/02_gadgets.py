"""The gadget lemmas, checked exhaustively over candidate points.

Run: python demos/02_gadgets.py   (about half a minute)
"""
# %%
from wsimprecise.gadgets import (ClauseParams, GadgetKind, WireParams, check_clause_lemma,
                                 check_gadget_lemma, check_variable_lemma, check_wire_lemma)
from wsimprecise.instance import EXTREMES, ShapeKind

# Pivot: every weakly simple realisation sends the through-edge via the
# pivot center.
for kind in (GadgetKind.PIVOT_DISK, GadgetKind.PIVOT_VSEG):
    rep = check_gadget_lemma(kind)
    print(kind.value, rep.verdict, rep.counts)

# %%
# Variable: exactly two ways to draw it, read off as false and true.
rep = check_variable_lemma()
print("variable", rep.verdict, rep.counts)

# %%
# Clause: the corners can leave any two false positions uncovered, never
# all three, so at least one literal must be true.
for shape in (ShapeKind.DISK, ShapeKind.VSEG):
    rep = check_clause_lemma(shape, ClauseParams(), EXTREMES)
    print("clause", shape.value, rep.verdict, rep.counts)

# %%
# Wire: a false variable pins the literal at its false anchor; a true one
# lets it move.
for shape in (ShapeKind.DISK, ShapeKind.VSEG):
    for side in ("left", "middle", "right"):
        rep = check_wire_lemma(shape, WireParams(side))
        print("wire", shape.value, side, rep.verdict)

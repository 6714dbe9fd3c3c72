"""From a formula to an imprecise polyline and back.

Run: python demos/03_reduction.py [outdir]   (writes SVGs, a minute or so)
"""
# %%
import sys
import time
from pathlib import Path

from wsimprecise.instance import ShapeKind
from wsimprecise.reduction import assignment_to_realisation, compile, literal_states
from wsimprecise.render import RenderOptions, render_compiled
from wsimprecise.sat import brute_force_sat, parse_formula, parse_layout
from wsimprecise.solver import equivalence_check, solve, verify

data = Path(__file__).resolve().parent / "data"
out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
f = parse_formula((data / "one_clause.cnf").read_text())
lay = parse_layout((data / "one_clause.layout").read_text(), f)

# %%
# Compile the single clause (x1 or x2 or x3) with unit disks.
c = compile(f, lay, ShapeKind.DISK)
print(f"{len(c.instance)} disks, eps {c.eps}, {len(c.pivots)} pivots")

# A satisfying assignment gives a realisation directly.
a = (False, True, False)
r = assignment_to_realisation(c, a)
print("constructed witness verifies:", verify(c.instance, r))
print("literal states:", literal_states(c, r))

# %%
# The solver finds one on its own.
t = time.perf_counter()
out = solve(c.instance)
print(out.verdict, f"{out.nodes} nodes, {time.perf_counter() - t:.1f} s")
print("solver literal states:", literal_states(c, out.witness))

# %%
# Pictures: orange wires carry a false literal, blue ones a true literal.
opts = RenderOptions(state_colors=True)
for name, real in (("constructed", r), ("solver", out.witness)):
    path = out_dir / f"one_clause_{name}.svg"
    path.write_text(render_compiled(c, real, opts))
    print("wrote", path)

# %%
# (x or x or x) and (not x or not x or not x) has no model; its compiled
# instance has no realisation over the candidate points either.
g = parse_formula((data / "repeated_unsat.cnf").read_text())
glay = parse_layout((data / "repeated_unsat.layout").read_text(), g)
print("satisfiable:", brute_force_sat(g) is not None)
for shape in (ShapeKind.DISK, ShapeKind.VSEG):
    rep = equivalence_check(g, glay, shape)
    print(shape.value, rep.verdict, f"realisable {rep.realisable}, {rep.seconds:.1f} s")

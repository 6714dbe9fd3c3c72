"""Weak simplicity on a few small polylines.

Run: python demos/01_weak_simplicity.py
"""
# %%
from fractions import Fraction

import numpy as np

from wsimprecise.geometry import segment_relation
from wsimprecise.weak import is_simple, is_weakly_simple, perturbation_oracle

# A spike that folds back on itself is not simple, but a tiny push apart
# makes it simple, so it is weakly simple.
spike = [(0, 0), (2, 0), (1, 0)]
print("spike simple:", is_simple(spike), " weakly simple:", is_weakly_simple(spike))
print("a simple perturbation:", perturbation_oracle(spike, Fraction(1, 4), 2))

# %%
# Touching an earlier edge is fine if the chain stays on one side of it,
# and fatal if it leaves on the other side.
stays = [(0, 0), (2, 0), (2, 1), (1, 0), (1, 1)]
leaves = [(0, 0), (2, 0), (2, 1), (1, 0), (1, -1)]
for name, poly in (("stays", stays), ("leaves", leaves)):
    print(f"{name:>6}: weakly simple {is_weakly_simple(poly)}")

# %%
# How often is a random 3x3-grid polyline weakly simple, by length?
rng = np.random.default_rng(7)
for n in range(2, 8):
    polys = rng.integers(0, 3, size=(400, n, 2))
    frac = np.mean([is_weakly_simple([tuple(map(int, p)) for p in poly]) for poly in polys])
    print(f"{n} vertices: {frac:.2f} weakly simple")

# %%
# The segment predicate underneath it all.
print(segment_relation(((0, 0), (2, 2)), ((0, 2), (2, 0))))
print(segment_relation(((0, 0), (2, 0)), ((1, 0), (3, 0))))

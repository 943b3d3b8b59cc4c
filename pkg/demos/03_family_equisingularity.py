"""Equisingularity of parametrized families, positive and negative.

The family check runs the tower descent with the parameter block inert: all
coordinate changes act on coordinates only, and the chosen discriminant must
vanish along the parameter axis at every level.
"""

from fractions import Fraction

from equijet import Jet, VarContext
from equijet.tower import build_tower, check_family

ctx = VarContext.make(["x1", "x2"], params=["t"])
t = Jet.variable(ctx, "t")
x1 = Jet.variable(ctx, "x1")
x2 = Jet.variable(ctx, "x2")

print("== a unit deformation of the cusp: equisingular ==")
good = x2 ** 2 - (1 + t) * x1 ** 3
rep = check_family(good)
print(f"family : {good}")
print(f"verdict: {rep.verdict}")
print(f"levels : degrees {[lc.degree for lc in rep.levels]}, "
      f"terminal unit {rep.terminal_unit}")

print()
print("== moving a root in from infinity: not equisingular ==")
bad = x2 ** 2 - x1 ** 3 - t * x1 ** 2
rep = check_family(bad)
print(f"family : {bad}")
print(f"verdict: {rep.verdict}")
print(f"witness: {rep.witness}   ({rep.witness_note})")

print()
print("== slice towers confirm both verdicts ==")
for name, family in (("good", good), ("bad", bad)):
    shapes = {}
    for t0 in (Fraction(0), Fraction(1, 7), Fraction(-1, 5)):
        shapes[t0] = build_tower(family.restrict({"t": t0}, drop=True)).shape
    print(f"{name}: " + ", ".join(f"t={t0}: {shape}" for t0, shape in shapes.items()))

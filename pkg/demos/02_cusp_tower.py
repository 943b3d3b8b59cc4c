"""The equisingularity ladder of the cusp x2^2 - x1^3.

The descent prepares the germ in the last coordinate, then repeatedly takes
the first nonzero generalized discriminant and prepares it one coordinate
down, stopping at a unit.  Every stored identity is re-verified at the end.
"""

from equijet import Jet, VarContext
from equijet.pseudopoly import PseudoPolynomial, generalized_discriminants
from equijet.tower import build_tower, build_tower_system, verify_tower

ctx = VarContext.make(["x1", "x2"])
x1 = Jet.variable(ctx, "x1")
x2 = Jet.variable(ctx, "x2")

cusp = x2 ** 2 - x1 ** 3
tower = build_tower(cusp)

print(f"germ: {cusp}")
for level in tower.levels:
    print(f"level {level.index}: degree {level.degree}, "
          f"descent index {level.disc_index}, unit {level.unit}")
    print(f"  distinguished polynomial: {level.poly}")
print(f"terminal: index {tower.terminal_index}, discriminant index "
      f"{tower.terminal_disc_index}, unit {tower.terminal_unit} ({tower.kind})")

print()
print("generalized discriminants of the degree-3 bottom level x1^3:")
gd = generalized_discriminants(tower.levels[1].poly)
for l, entry in enumerate(gd.entries, start=1):
    print(f"  Delta_{l} = {entry}")
print(f"first nonzero index: {gd.first_nonzero} (three coincident roots)")

print()
report = verify_tower(tower)
print(f"re-verification of all stored identities: {'PASS' if report.all_passed else 'FAIL'}")

print()
print("a system of two lines handled through the product:")
sys_tower = build_tower_system([x2 - x1, x2 + x1])
print(f"degrees {sys_tower.degree_sequence}, indices {sys_tower.index_sequence}")
print(f"per-factor blocks kept: {[str(p) for p in sys_tower.factors]}")

"""Jets and Weierstrass preparation, step by step.

A jet is a power series known modulo a stated total degree.  All arithmetic
is exact over the rationals; the `exact` flag marks values that are whole
polynomials rather than truncations.
"""

from equijet import Jet, VarContext
from equijet.weierstrass import weierstrass_divide, weierstrass_prepare

ctx = VarContext.make(["x1", "x2"])
x1 = Jet.variable(ctx, "x1", 8)
x2 = Jet.variable(ctx, "x2", 8)

print("== ring arithmetic ==")
a = (1 + x1) * (1 - x1)
print(f"(1+x1)(1-x1)            = {a}   (exact: {a.exact})")

sq = (x1 + x2) ** 2
print(f"(x1+x2)^2 at order 8    = {sq}")

tiny = Jet(ctx, 2, {(1, 0): 1, (0, 1): 1}, True) ** 2
print(f"(x1+x2)^2 at order 2    = {tiny}   (exact: {tiny.exact}; everything truncated)")

print()
print("== unit inversion ==")
inv = (1 + x1).invert_unit()
print(f"1/(1+x1) mod degree 8   = {inv}")
print(f"check: (1+x1) * that    = {(1 + x1) * inv}")

print()
print("== Weierstrass division:  g = q*f + r  with deg_x2(r) < 2 ==")
g = x2 ** 3
f = x2 ** 2 - x1
q, r = weierstrass_divide(g, f, "x2")
print(f"x2^3 = ({q}) * (x2^2 - x1) + ({r})")

print()
print("== Weierstrass preparation:  f = unit * distinguished polynomial ==")
f = (1 + x1) * x2 ** 2 - x1 ** 2
pf = weierstrass_prepare(f, "x2")
print(f"f    = (1+x1)*x2^2 - x1^2")
print(f"unit = {pf.unit}")
print(f"W    = {pf.poly}")
print(f"unit*W - f = {pf.unit * pf.poly.as_jet() - f}   (zero modulo degree {pf.order})")

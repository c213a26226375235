"""How large are the explicit truncation levels, really.

Three flavors of the same constant: the moving-target level is
astronomically large and only its magnitude is reported, the
fixed-target level is small enough to print, and the older factorial
bound is there to show how much the polynomial one saves.
"""

from fractions import Fraction

from smtlab import constants_fixed, constants_moving, constants_theoremB

n, deg_V, d = 1, 1, 1
delta = Fraction(1)
eps = Fraction(1)

fixed = constants_fixed(n, deg_V, d, delta, eps)
print(f"fixed targets : u' = {fixed.u}, L' = {fixed.L}")

moving = constants_moving(n, deg_V, d, 2, delta, eps)
print(f"moving targets: u = {moving.u}, log10 L = {moving.log10_L:.3f}")
print(f"  ({moving.note})")

older = constants_theoremB(n, deg_V, d, 5, delta, eps)
print(f"factorial bound, q=5: L = {older.L}")
print(f"  vs fixed-target L' = {constants_fixed(n, deg_V, d, delta, eps, q=5).L}")

# tightening epsilon inflates every level monotonically
for k in range(4):
    e = Fraction(1, 2 ** k)
    c = constants_fixed(n, deg_V, d, delta, e)
    print(f"epsilon = {str(e):5s} -> u' = {c.u:3d}, L' = {c.L}")

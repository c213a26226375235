"""
Varieties from homogeneous ideals
=================================

Dimension, degree, and Hilbert functions come out of exact Groebner
bases over the rationals, so every number printed here is certified.
"""

from smtlab import Ideal, Variety
from smtlab.exact_algebra import parse_homog_poly

# the conic x0 x2 = x1^2 in the projective plane
conic = Variety(Ideal(3, [parse_homog_poly("x0*x2 - x1^2", 3)]))
print("conic:", conic.dim_degree())

# the twisted cubic in projective 3-space, cut out by three quadrics
cubic = Variety(Ideal(4, [parse_homog_poly("x0*x2 - x1^2", 4),
                          parse_homog_poly("x0*x3 - x1*x2", 4),
                          parse_homog_poly("x1*x3 - x2^2", 4)]))
print("twisted cubic:", cubic.dim_degree())

# Hilbert functions stabilize to the Hilbert polynomial; for a curve of
# degree delta that polynomial is delta*u + 1
for u in range(1, 8):
    print(f"u={u}  H_conic={conic.hilbert_function(u):3d}"
          f"  H_cubic={cubic.hilbert_function(u):3d}")

# degenerate inputs are caught, not silently accepted: the whole ring
# modulo (x0) is a plane inside P^2, still a fine variety
plane = Variety(Ideal(3, [parse_homog_poly("x0", 3)]))
print("coordinate line in P^2:", plane.dim_degree())

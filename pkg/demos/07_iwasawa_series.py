"""
Lambda-invariants bound weight-one zeros of a series
====================================================

"""

from weightone import IwasawaSeries, SpecializationPoint, specialize, weierstrass_invariants
from weightone import weight_one_root_bound, weight_one_zero_count

# X * Phi_3(1 + X) over Z_3: vanishes at X = 0 and at X = zeta_3 - 1
T = IwasawaSeries(3, 8, (0, 1, 0, 0)) * IwasawaSeries(3, 8, (3, 3, 1, 0))
print("coefficients", T.coeffs, "(mu, lambda) =", weierstrass_invariants(T))
print("lambda bound", weight_one_root_bound(T), "; zeros at orders 1, 3, 9:", weight_one_zero_count(T))

# the weight-2 point X = u - 1 with u = 1 + p
print("T at k = 2:", specialize(T, SpecializationPoint(3, 2)))

# a unit constant term means no zeros at all
U = IwasawaSeries(3, 8, (1, 5, 7))
print("unit series:", weierstrass_invariants(U), weight_one_zero_count(U))

"""
Ray class groups from the exact sequence, checked from the ideal side
=====================================================================

"""

from weightone import Modulus, QuadField, ray_class_group
from weightone.oracles import oracle_ray_class

cases = [(-4, Modulus(5)), (12, Modulus()), (13, Modulus(3)), (-23, Modulus(5, 1, 13))]
for D, m in cases:
    rc = ray_class_group(QuadField(D), m)
    oracle = oracle_ray_class(D, m.n0, m.r, m.p)
    # |Cl(m)| * |unit image| = h * |(O/m)^x x signs|
    print(f"D = {D}, n0 = {m.n0}, r = {m.r}: {rc.group}  (oracle {oracle})"
          f"  {rc.order} * {rc.unit_image_order} = {rc.h} * {rc.local_order}")

# from r = 0 to 1 the order grows by a divisor of p - 1, after that by 1 or p
K = QuadField(5)
print("D = 5, p = 11:", [ray_class_group(K, Modulus(1, r, 11)).order for r in range(4)])

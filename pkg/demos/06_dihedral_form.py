"""
The weight-one form of level 23
===============================

"""

from weightone import character_by_index, induce_coefficients, p_stabilization_data
from weightone.oracles import eta_product_coefficients

phi = character_by_index(-23, 3, 1)
f = induce_coefficients(phi, 30)
print("c(1..30):", f.integers())

# the same numbers from q prod (1 - q^n)(1 - q^23n)
print("eta product matches:", f.integers() == eta_product_coefficients(30, 23))

# Frobenius data at a split and an inert prime
for p in (2, 5):
    s = p_stabilization_data(phi, p)
    print(f"p = {p} ({s.kind.value}): c(p) = {s.c_p}, det = {s.det}, roots {[str(e) for e in s.eigenvalues]}")

# an order-5 character of Cl(Q(sqrt -47)) gives coefficients in Z[zeta_5]
g = induce_coefficients(character_by_index(-47, 5, 1), 8)
for m, c in g.rows():
    print(f"  c({m}) = {c}")

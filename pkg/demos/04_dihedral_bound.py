"""
Bounding dihedral weight-one specializations
============================================

"""

from weightone import (
    GeneralFieldInvariants,
    QuadField,
    dihedral_bound_exact,
    dihedral_bound_from_invariants,
    extract_invariants,
    finiteness_test,
)

# imaginary K: the ray class group along the Q-tower is infinite, no bound
print("D = -23, p = 7:", finiteness_test(QuadField(-23), 7).reason)

# real K = Q(sqrt 5), p = 11, tame level 6: both 2 and 3 are inert
rep = dihedral_bound_exact(QuadField(5), 11, 6)
for label, value in rep.factors:
    print(f"  {label:>20}: {value}")
print(f"  M' = {rep.M_prime}, M = {rep.M}")

# a case with a nontrivial p-part: h = 3 and 19 splits in Q(sqrt 229)
rep = dihedral_bound_exact(QuadField(229), 3, 19)
print("D = 229, p = 3, n0 = 19:", [v for _, v in rep.factors], "M =", rep.M)

# the same number assembled from invariants alone
inv = extract_invariants(QuadField(229), 3, 19)
print("from invariants:", dihedral_bound_from_invariants(inv, 3).M)

# invariants for a field we cannot compute with directly
inv = GeneralFieldInvariants(d=2, t=1, class_number_K=3, unit_index_p_exponent=1, split_tame=(7,), inert_tame=(2,))
rep = dihedral_bound_from_invariants(inv, 3)
print("supplied invariants, p = 3:", rep.M_prime, "->", rep.M)

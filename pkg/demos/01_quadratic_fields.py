"""
Quadratic fields: splitting, class groups and units
===================================================

"""

from weightone import QuadField, class_group, classify_prime, fundamental_unit

# Q(sqrt -23): class number 3, represented by three reduced forms
K = QuadField(-23)
cg = class_group(K)
print("D = -23:", cg.group, "reduced forms", [tuple(f) for f in cg.forms])

# 2 splits into two non-principal primes of order 3, 5 stays inert
for l in (2, 5, 23):
    st = classify_prime(K, l)
    print(f"  {l} is {st.kind.value}, classes", [cg.ideal_class(P) for P in st.primes])

# real fields: the narrow class group sees the sign of the unit norm
for D in (5, 12, 60):
    eps = fundamental_unit(QuadField(D))
    cg = class_group(QuadField(D))
    print(f"D = {D}: eps = ({eps.x} + {eps.y} sqrt {D})/2, norm {eps.norm}, h = {cg.h}, h+ = {cg.h_plus}")

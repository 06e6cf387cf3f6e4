"""
Exceptional residual images: projective traces and the bound a * b
===================================================================

"""

from weightone import a5_root_congruence, exceptional_bound, projective_trace

# Tr(g)^2 / det(g) for elements of order 1..5
for n in range(1, 6):
    print(f"order {n}: {projective_trace(n)}")

# the two order-5 values collide mod p only for p = 5
print("primes p < 30 where they collide:", [p for p in (3, 5, 7, 11, 13, 17, 19, 23, 29) if a5_root_congruence(p)])

for p, kind, hF, t in [(7, "S4", 1, 3), (7, "A4", 7, 1), (5, "A5", 1, 1), (5, "S4", 1, 1), (3, "S4", 3, 2)]:
    a, b, bound = exceptional_bound(p, kind, hF, t)
    print(f"p = {p}, {kind}, hF = {hF}, t = {t}: a = {a}, b = {b}, at most {bound}")

"""
p-adic logarithms and the unit index
====================================

"""

from weightone import PadicInt, QuadField, padic_exp, padic_log, teichmuller, unit_index

# log of a principal unit, and exp undoing it
u = PadicInt(7, 2, 8)
print("log(8) mod 49 =", padic_log(u).residue, "; exp(log 8) =", padic_exp(padic_log(u)).residue)
print("Teichmuller lift of 2 mod 49 =", teichmuller(2, 7, 2).residue)

# the closure of the global units inside the principal units at P has index p^(v-1)
for D, p in [(5, 11), (5, 19), (8, 31), (69, 17)]:
    res = unit_index(QuadField(D), p, 10)
    print(f"D = {D}, p = {p}: v = {res.v}, index = {res.index}")

# (1 + sqrt 2)^15 = 1 mod 31^2, which is why D = 8 gains a factor 31

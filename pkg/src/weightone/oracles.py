"""Brute-force cross-checks for the main computations.

These deliberately avoid the main code paths: ray class groups are presented
from the ideal side (prime ideals as generators, elements = 1 mod m as
relations), unit indices are read off from finite multiplicative orders, and
local quotients are counted coset by coset.  Only the primitives of
``arith`` are shared.  They are exponentially slower and meant for small
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import (
    FiniteAbelianGroup,
    FiniteField,
    factorint,
    is_prime,
    multiplicative_order,
    primerange,
    smith_normal_form,
    valuation,
)
from .errors import ResourceError, UsageError


@dataclass(frozen=True)
class OracleBudget:
    max_norm: int = 200
    max_disc: int = 50
    max_precision: int = 12

    def __post_init__(self):
        if min(self.max_norm, self.max_disc, self.max_precision) < 1:
            raise UsageError("oracle budgets must be positive")


DEFAULT_BUDGET = OracleBudget()


# --------------------------------------------------------------------------
# small self-contained helpers


def _w_data(D: int) -> tuple[int, int, int]:
    """(delta, trace, norm) of w = (delta + sqrt D)/2."""
    d = D % 2
    return d, d, (d - D) // 4


def _norm(D: int, x: int, y: int) -> int:
    _, t, n = _w_data(D)
    return x * x + t * x * y + n * y * y


def _roots_mod(D: int, l: int) -> list[int]:
    """Roots of w's minimal polynomial modulo l, by exhaustion."""
    _, t, n = _w_data(D)
    return [r for r in range(l) if (r * r - t * r + n) % l == 0]


def _lift_root(D: int, l: int, r: int, k: int) -> int:
    """Digit-by-digit lift of a simple root of w's minimal polynomial to mod l^k."""
    _, t, n = _w_data(D)
    for j in range(2, k + 1):
        mod = l**j
        step = l ** (j - 1)
        r = next(c for c in (r + i * step for i in range(l)) if (c * c - t * c + n) % mod == 0)
    return r


def _q_root(D: int, p: int) -> int:
    """Residue of w at the prime labelled P above a split p (smallest B convention)."""
    d = D % 2
    B = min(B for B in range(2 * p) if (B - d) % 2 == 0 and (B * B - D) % (4 * p) == 0)
    # P contains (B + sqrt D)/2, so sqrt D = -B and w = (d - B)/2 there
    return (d - B) * pow(2, -1, p) % p


def _kron(D: int, l: int) -> int:
    if l == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    if D % l == 0:
        return 0
    return 1 if any((x * x - D) % l == 0 for x in range(l)) else -1


# --------------------------------------------------------------------------
# ray class groups from the ideal side


def _prime_list(D: int, bound: int):
    """Prime ideals of norm <= bound as (l, kind, root) triples."""
    primes = []
    for l in primerange(2, bound + 1):
        k = _kron(D, l)
        if k == 1:
            for r in _roots_mod(D, l):
                primes.append((l, "split", r))
        elif k == 0:
            primes.append((l, "ramified", _roots_mod(D, l)[0]))
        elif l * l <= bound:
            primes.append((l, "inert", None))
    return primes


def _valuations(D: int, x: int, y: int, l: int, nm: int, primes_at_l):
    """ord_L(x + y w) for each prime L above l."""
    out = {}
    e = valuation(nm, l)
    for P in primes_at_l:
        _, kind, r = P
        if kind == "inert":
            out[P] = min(valuation(x, l) if x else e, valuation(y, l) if y else e)
        elif kind == "ramified":
            out[P] = e
        else:
            v = 0
            while v < e:
                rk = _lift_root(D, l, r, v + 1)
                if (x + y * rk) % l ** (v + 1):
                    break
                v += 1
            out[P] = v
    return out


def _totally_positive(D: int, x: int, y: int) -> bool:
    if D < 0:
        return True
    a = 2 * x + (D % 2) * y
    return a > 0 and a * a > y * y * D


def oracle_ray_class(
    D: int,
    n0: int = 1,
    r: int = 0,
    p: int | None = None,
    budget: OracleBudget = DEFAULT_BUDGET,
    box: int = 30,
    generator_bound: int | None = None,
) -> FiniteAbelianGroup:
    """Narrow ray class group of conductor n0 * P^r (times the real places).

    Generators: prime ideals prime to the modulus of norm up to
    ``generator_bound`` (default max(30, 4|D|), capped by budget.max_norm).
    Relations: totally positive alpha = 1 + beta with beta running over a box
    in a Z-basis of the modulus, kept when (alpha) factors over the generators.
    """
    if abs(D) > budget.max_disc:
        raise ResourceError(f"|D| = {abs(D)} exceeds the oracle budget {budget.max_disc}")
    if r and (p is None or _kron(D, p) != 1):
        raise UsageError("a power of Q needs a split prime p")
    bad = set(factorint(n0))
    qr = _q_root(D, p) if r else None
    gbound = min(generator_bound or max(30, 4 * abs(D)), budget.max_norm)
    gens = [P for P in _prime_list(D, gbound) if P[0] not in bad and not (r and P[0] == p and P[2] == qr)]
    if not gens:
        return FiniteAbelianGroup.trivial()
    index = {P: i for i, P in enumerate(gens)}
    by_l: dict[int, list] = {}
    for P in gens:
        by_l.setdefault(P[0], []).append(P)
    # Z-basis of n0 * Q^r: Q^r = {x + y w : x + y * root = 0 mod p^r}
    pr, root = (p**r, _lift_root(D, p, qr, r)) if r else (1, 0)
    basis = ((n0 * pr, 0), (-n0 * root, n0))

    rows: list[list[int]] = []
    done = 0
    for size in (box, 2 * box, 4 * box):
        for a in range(-size, size + 1):
            for b in range(-size, size + 1):
                if max(abs(a), abs(b)) <= done:
                    continue
                row = _relation(D, 1 + a * basis[0][0] + b * basis[1][0], a * basis[0][1] + b * basis[1][1], by_l, index)
                if row:
                    rows.append(row)
        done = size
        G = smith_normal_form(rows, len(gens))
        if G.is_finite:
            return G
    raise ResourceError("too few relations within the search box; raise box")


def _relation(D: int, x: int, y: int, by_l, index) -> list[int] | None:
    """Exponent vector of (x + y w) over the generators, or None if not smooth or not totally positive."""
    nm = _norm(D, x, y)
    if nm <= 0 or not _totally_positive(D, x, y):
        return None
    fac = factorint(nm)
    if any(l not in by_l for l in fac):
        return None
    vals = {}
    for l in fac:
        vals.update(_valuations(D, x, y, l, nm, by_l[l]))
    # valuations at excluded primes would leave part of the norm unaccounted for
    if sum(v * _residue_degree(P) for P, v in vals.items()) != sum(fac.values()):
        return None
    row = [0] * len(index)
    for P, v in vals.items():
        row[index[P]] += v
    return row if any(row) else None


def _residue_degree(P) -> int:
    return 2 if P[1] == "inert" else 1


# --------------------------------------------------------------------------
# unit index via finite multiplicative orders


def brute_force_fundamental_unit(D: int, ymax: int = 10**6) -> tuple[int, int]:
    """(x, y) with (x + y sqrt D)/2 the least unit > 1, by search on y."""
    if D <= 0:
        raise UsageError("real quadratic fields only")
    for y in range(1, ymax):
        # for equal y the norm -1 solution is the smaller unit
        for s in (-4, 4):
            x2 = D * y * y + s
            x = isqrt(x2)
            if x > 0 and x * x == x2:
                return x, y
    raise ResourceError("no unit found within the search range")


def oracle_unit_index(D: int, p: int, N: int) -> int:
    """p^(N-1) / (order of eps^m in (1 + pZ)/(1 + p^N Z)), no logarithms involved."""
    if _kron(D, p) != 1:
        raise UsageError(f"{p} does not split in Q(sqrt {D})")
    x, y = brute_force_fundamental_unit(D)
    mod = p**N
    # root of X^2 = D modulo p^N by digit-wise lifting
    s = next(c for c in range(p) if (c * c - D) % p == 0)
    for j in range(2, N + 1):
        s = next(c for c in (s + i * p ** (j - 1) for i in range(p)) if (c * c - D) % p**j == 0)
    e = (x + y * s) * pow(2, -1, mod) % mod
    m = multiplicative_order(e % p, p)
    u = pow(e, m, mod)
    return p ** (N - 1) // multiplicative_order(u, mod)


# --------------------------------------------------------------------------
# local quotients by literal enumeration


def oracle_local_quotient(D: int, l: int) -> int:
    """|prod (O_K/L)^x / (Z/l)^x| counted as the number of cosets."""
    k = _kron(D, l)
    if k == 1:
        units = [(a, b) for a in range(1, l) for b in range(1, l)]
        seen, cosets = set(), 0
        for u in units:
            if u in seen:
                continue
            cosets += 1
            for c in range(1, l):
                seen.add((u[0] * c % l, u[1] * c % l))
        return cosets
    if k == -1:
        F = FiniteField(l, 2)
        sub = [e for e in F.units() if F.frobenius(e) == e]
        seen, cosets = set(), 0
        for u in F.units():
            if u in seen:
                continue
            cosets += 1
            for c in sub:
                seen.add(F.mul(u, c))
        return cosets
    # ramified: O_K/L = Z/l, so every unit is in the image of (Z/l)^x
    return 1


# --------------------------------------------------------------------------
# other independent references


def eta_product_coefficients(B: int, level: int = 23) -> list[int]:
    """Coefficients a(1..B) of q * prod (1 - q^n)(1 - q^(level n))."""
    series = [0] * B
    series[0] = 1  # q^1 sits at index 0
    for n in range(1, B):
        for step in (n, level * n):
            if step >= B:
                continue
            for i in range(B - 1, step - 1, -1):
                series[i] -= series[i - step]
    return series


def brute_force_reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced positive definite forms of discriminant D < 0 by exhaustion over a box."""
    out = []
    bound = isqrt(-D) + 1
    for a in range(1, bound + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if abs(b) <= a <= c and not (b < 0 and (abs(b) == a or a == c)) and gcd(gcd(a, b), c) == 1:
                out.append((a, b, c))
    return sorted(out)


def brute_force_kronecker(D: int, l: int) -> int:
    if not is_prime(l):
        raise UsageError("prime l expected")
    return _kron(D, l)

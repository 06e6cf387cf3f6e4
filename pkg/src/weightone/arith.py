"""Exact integer, finite-field, cyclotomic and finite abelian group arithmetic.

Everything here works on Python ints, so there are no word-size limits.
Values are immutable and every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Callable, Hashable, Iterable, Sequence

from sympy import factorint, isprime, primerange, totient
from sympy.ntheory import n_order

from .errors import UsageError

__all__ = [
    "xgcd",
    "valuation",
    "p_part",
    "is_prime",
    "factorint",
    "primerange",
    "multiplicative_order",
    "primitive_root",
    "kronecker_symbol",
    "FiniteField",
    "FiniteAbelianGroup",
    "smith_normal_form",
    "abelian_group_from_generators",
    "cyclotomic_polynomial",
    "CyclotomicInt",
    "cyclotomic_mul",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def valuation(n: int, p: int) -> int:
    """ord_p(n); raises on n == 0 since the valuation is infinite."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_part(n: int, p: int) -> int:
    return p ** valuation(n, p)


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise UsageError(f"{a} is not invertible modulo {n}")
    if n == 1:
        return 1
    return int(n_order(a % n, n))


def primitive_root(l: int) -> int:
    """Smallest generator of (Z/l)^x for a prime l."""
    if l == 2:
        return 1
    qs = list(factorint(l - 1))
    for g in range(2, l):
        if all(pow(g, (l - 1) // q, l) != 1 for q in qs):
            return g
    raise AssertionError("unreachable for prime l")


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1; for prime n it decides splitting in Q(sqrt D)."""
    if n < 1:
        raise UsageError("kronecker_symbol expects a positive lower argument")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi(D, n)


# --------------------------------------------------------------------------
# finite fields of degree 1 and 2


@dataclass(frozen=True)
class FiniteField:
    """F_l or F_{l^2}.

    Degree-2 elements are pairs ``(a0, a1)`` meaning ``a0 + a1*x`` where
    ``x^2 + c1*x + c0 = 0`` for the lexicographically least irreducible
    ``(c1, c0)``; degree-1 elements are plain residues.
    """

    l: int
    degree: int = 1
    poly: tuple[int, int] = field(init=False, compare=False)  # (c0, c1)

    def __post_init__(self):
        if not is_prime(self.l):
            raise UsageError(f"characteristic {self.l} is not prime")
        if self.degree not in (1, 2):
            raise UsageError("only degrees 1 and 2 are supported")
        poly = (0, 0)
        if self.degree == 2:
            poly = _least_irreducible_quadratic(self.l)
        object.__setattr__(self, "poly", poly)

    @property
    def size(self) -> int:
        return self.l**self.degree

    @property
    def one(self):
        return 1 if self.degree == 1 else (1, 0)

    @property
    def zero(self):
        return 0 if self.degree == 1 else (0, 0)

    def embed(self, a: int):
        return a % self.l if self.degree == 1 else (a % self.l, 0)

    def elements(self):
        if self.degree == 1:
            return list(range(self.l))
        return [(a0, a1) for a1 in range(self.l) for a0 in range(self.l)]

    def units(self):
        return [e for e in self.elements() if e != self.zero]

    def add(self, a, b):
        if self.degree == 1:
            return (a + b) % self.l
        return ((a[0] + b[0]) % self.l, (a[1] + b[1]) % self.l)

    def mul(self, a, b):
        l = self.l
        if self.degree == 1:
            return a * b % l
        c0, c1 = self.poly
        # x^2 = -c1*x - c0
        t0 = a[0] * b[0]
        t1 = a[0] * b[1] + a[1] * b[0]
        t2 = a[1] * b[1]
        return ((t0 - c0 * t2) % l, (t1 - c1 * t2) % l)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.size - 2)

    def frobenius(self, a):
        return self.pow(a, self.l)

    def in_prime_field(self, a) -> bool:
        return self.degree == 1 or a[1] == 0

    def order(self, a) -> int:
        n = self.size - 1
        for q in factorint(n):
            while n % q == 0 and self.pow(a, n // q) == self.one:
                n //= q
        return n

    def generator(self):
        """First element, in enumeration order, of multiplicative order size - 1."""
        target = self.size - 1
        for a in self.units():
            if self.order(a) == target:
                return a
        raise AssertionError("multiplicative group of a finite field is cyclic")


@lru_cache(maxsize=None)
def _least_irreducible_quadratic(l: int) -> tuple[int, int]:
    for c1 in range(l):
        for c0 in range(l):
            if all((x * x + c1 * x + c0) % l for x in range(l)):
                return (c0, c1)
    raise AssertionError("an irreducible quadratic always exists")


# --------------------------------------------------------------------------
# finitely generated abelian groups


def _echelon(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Integer row echelon basis (Hermite-reduced) of the lattice spanned by rows."""
    basis: dict[int, list[int]] = {}
    for row in rows:
        row = list(row)
        if len(row) != ncols:
            raise UsageError("relation rows must all have the same length")
        for col in range(ncols):
            if row[col] == 0:
                continue
            piv = basis.get(col)
            if piv is None:
                basis[col] = row if row[col] > 0 else [-x for x in row]
                break
            a, b = piv[col], row[col]
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            basis[col] = [s * x + t * y for x, y in zip(piv, row)]
            row = [ag * y - bg * x for x, y in zip(piv, row)]
        _hermite_reduce(basis)
    return [basis[c] for c in sorted(basis)]


def _hermite_reduce(basis: dict[int, list[int]]) -> None:
    cols = sorted(basis)
    for j in reversed(range(len(cols))):
        cj = cols[j]
        pj = basis[cj]
        for i in range(j):
            ri = basis[cols[i]]
            q = ri[cj] // pj[cj]
            if q:
                basis[cols[i]] = [x - q * y for x, y in zip(ri, pj)]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z^n modulo a relation lattice, in invariant-factor form.

    ``invariants`` are d_1 | d_2 | ... with every d_i >= 2; ``free_rank`` counts
    Z summands (a nonzero free rank means the quotient is infinite).
    ``to_smith`` maps generator coordinates to Smith coordinates (n x k matrix,
    applied as ``x @ to_smith``) and ``from_smith`` maps back (k x n).
    """

    invariants: tuple[int, ...]
    free_rank: int = 0
    to_smith: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False, repr=False)
    from_smith: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a:
                raise UsageError(f"invariant factors {self.invariants} do not form a divisor chain")
        if any(d < 2 for d in self.invariants):
            raise UsageError("invariant factors must be at least 2")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        """Direct sum of cyclic groups of the given orders (0 means Z)."""
        orders = list(orders)
        n = len(orders)
        rows = [[orders[i] if j == i else 0 for j in range(n)] for i in range(n)]
        return smith_normal_form(rows, n)

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise UsageError("group is infinite")
        return prod(self.invariants)

    @property
    def exponent(self) -> int:
        if not self.is_finite:
            raise UsageError("group is infinite")
        return self.invariants[-1] if self.invariants else 1

    @property
    def rank(self) -> int:
        return len(self.invariants) + self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per Smith coordinate: d_i for torsion coordinates, 0 for free ones."""
        return self.invariants + (0,) * self.free_rank

    def reduce(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Smith coordinates of the class of ``vector`` (generator coordinates)."""
        if self.to_smith is None:
            raise UsageError("group carries no generator presentation")
        out = []
        for k, d in enumerate(self.moduli):
            y = sum(x * row[k] for x, row in zip(vector, self.to_smith))
            out.append(y % d if d else y)
        return tuple(out)

    def lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        """A generator-coordinate vector representing the Smith coordinates."""
        if self.from_smith is None:
            raise UsageError("group carries no generator presentation")
        n = len(self.from_smith[0]) if self.from_smith else len(self.to_smith or ())
        return tuple(sum(c * row[j] for c, row in zip(coords, self.from_smith)) for j in range(n))

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % d if d else x + y for x, y, d in zip(a, b, self.moduli))

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple((-x) % d if d else -x for x, d in zip(a, self.moduli))

    def scale(self, a: Sequence[int], k: int) -> tuple[int, ...]:
        return tuple((k * x) % d if d else k * x for x, d in zip(a, self.moduli))

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def element_order(self, a: Sequence[int]) -> int:
        if not self.is_finite:
            raise UsageError("group is infinite")
        n = 1
        for x, d in zip(a, self.invariants):
            n = n * (d // gcd(x, d)) // gcd(n, d // gcd(x, d))
        return n

    def elements(self):
        if not self.is_finite:
            raise UsageError("cannot enumerate an infinite group")
        return list(product(*(range(d) for d in self.invariants)))

    def sylow_order(self, p: int) -> int:
        return prod(p_part(d, p) for d in self.invariants)

    def __str__(self) -> str:
        parts = [f"C{d}" for d in self.invariants] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "trivial"


def smith_normal_form(relations: Iterable[Sequence[int]], ngens: int | None = None) -> FiniteAbelianGroup:
    """Quotient of Z^ngens by the row span of ``relations``.

    The unimodular column transform is kept so that elements can be carried
    between generator coordinates and Smith coordinates in both directions.
    """
    relations = [list(r) for r in relations]
    if ngens is None:
        if not relations:
            raise UsageError("ngens is required when there are no relations")
        ngens = len(relations[0])
    n = ngens
    A = _echelon(relations, n)
    m = len(A)
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    W = [[int(i == j) for j in range(n)] for i in range(n)]  # inverse of V

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        W[i], W[j] = W[j], W[i]

    def add_col(dst, src, c):
        # col[dst] += c * col[src]
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        W[src] = [x - c * y for x, y in zip(W[src], W[dst])]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        A[t], A[i0] = A[i0], A[t]
        if j0 != t:
            swap_cols(t, j0)
        while True:
            piv = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // piv
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        t += 1

    diag = [A[i][i] if i < m else 0 for i in range(n)]
    keep = [i for i, d in enumerate(diag) if d != 1]
    torsion = [i for i in keep if diag[i] != 0]
    free = [i for i in keep if diag[i] == 0]
    order = torsion + free
    to_smith = tuple(tuple(V[r][c] for c in order) for r in range(n))
    from_smith = tuple(tuple(W[c]) for c in order)
    return FiniteAbelianGroup(
        tuple(diag[i] for i in torsion), len(free), to_smith=to_smith, from_smith=from_smith
    )


def abelian_group_from_generators(
    generators: Iterable[Hashable],
    op: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    order: int | None = None,
) -> tuple[FiniteAbelianGroup, dict]:
    """Structure of the finite abelian group generated by black-box elements.

    Returns the group and a dict sending every element of the generated
    subgroup to its Smith coordinates.  Stops early once ``order`` elements
    have been reached.
    """
    vecs: dict = {identity: ()}
    relations: list[list[int]] = []
    for g in generators:
        if order is not None and len(vecs) >= order:
            break
        if g in vecs:
            continue
        k = len(relations)
        power, e = g, 1
        while power not in vecs:
            power = op(power, g)
            e += 1
        relations.append([-x for x in vecs[power]] + [e])
        grown = {}
        for h, v in vecs.items():
            x = h
            for j in range(e):
                grown[x] = v + (j,)
                x = op(x, g)
        vecs = grown
    k = len(relations)
    rows = [r + [0] * (k - len(r)) for r in relations]
    group = smith_normal_form(rows, k) if k else FiniteAbelianGroup.trivial()
    if k == 0:
        return group, {identity: ()}
    return group, {h: group.reduce(v) for h, v in vecs.items()}


# --------------------------------------------------------------------------
# cyclotomic integers


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial; coefficient lists low degree first."""
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return quot, num[:dd] or [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise UsageError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


@dataclass(frozen=True)
class CyclotomicInt:
    """Element of Z[zeta_n] (or Z/modulus[zeta_n]) in the power basis of zeta_n."""

    n: int
    coeffs: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self):
        deg = int(totient(self.n))
        cs = list(self.coeffs)
        if len(cs) > deg:
            _, cs = _poly_divmod(cs, list(cyclotomic_polynomial(self.n)))
        cs = cs + [0] * (deg - len(cs))
        if self.modulus is not None:
            cs = [c % self.modulus for c in cs]
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zeta(cls, n: int, k: int = 1, modulus: int | None = None) -> "CyclotomicInt":
        k %= n
        return cls(n, tuple([0] * k + [1]), modulus)

    @classmethod
    def from_int(cls, n: int, c: int, modulus: int | None = None) -> "CyclotomicInt":
        return cls(n, (c,), modulus)

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.n, other, self.modulus)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        if other.n != self.n or other.modulus != self.modulus:
            raise UsageError(
                f"mismatched cyclotomic rings: order {self.n} vs {other.n}, "
                f"modulus {self.modulus} vs {other.modulus}"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.n, tuple(-a for a in self.coeffs), self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CyclotomicInt(self.n, tuple(out), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise UsageError("negative powers are only defined for roots of unity; use root_power")
        result = CyclotomicInt.from_int(self.n, 1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                z = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                if not z:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def cyclotomic_mul(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a * b

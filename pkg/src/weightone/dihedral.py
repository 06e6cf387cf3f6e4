"""Weight-one forms induced from class-group characters of imaginary quadratic fields.

For a character phi of Cl_K the induced form has c(m) = sum of phi([A]) over
integral ideals A of norm m, level |D| and nebentypus the Kronecker
character of K.  Values are exact elements of Z[zeta_n], n the order of phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm

from .arith import CyclotomicInt, factorint, kronecker_symbol, primerange
from .errors import UsageError
from .quadfield import QuadField, Splitting, class_group, classify_prime, ideals_of_norm


@dataclass(frozen=True)
class ClassCharacter:
    """phi(g_i) = zeta_order^(a_i * order / d_i) on the Smith generators g_i of Cl_K."""

    D: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.D >= 0:
            raise UsageError("class characters are induced from imaginary quadratic fields only")
        G = self.group
        if len(self.exponents) != G.rank:
            raise UsageError(f"Cl_K has {G.rank} generators, got {len(self.exponents)} exponents")
        object.__setattr__(self, "exponents", tuple(a % d for a, d in zip(self.exponents, G.invariants)))

    @property
    def K(self) -> QuadField:
        return QuadField(self.D)

    @property
    def group(self):
        return class_group(QuadField(self.D)).group

    @property
    def order(self) -> int:
        return lcm(1, *(d // gcd(a, d) for a, d in zip(self.exponents, self.group.invariants)))

    def exponent_of(self, cls) -> int:
        """k with phi(cls) = zeta_order^k, k in [0, order)."""
        n = self.order
        return sum(a * c * n // d for a, c, d in zip(self.exponents, cls, self.group.invariants)) % n

    def __call__(self, cls) -> CyclotomicInt:
        return CyclotomicInt.zeta(self.order, self.exponent_of(cls))

    def conjugate(self) -> "ClassCharacter":
        """phi composed with the nontrivial automorphism, which inverts ideal classes."""
        return ClassCharacter(self.D, tuple(-a for a in self.exponents))

    def is_irreducible_induction(self) -> bool:
        return self.order > 2


def class_characters(D: int, order: int | None = None) -> list[ClassCharacter]:
    """All characters of Cl_K (optionally of one order) in lexicographic order of exponents."""
    G = class_group(QuadField(D)).group
    chars = [ClassCharacter(D, e) for e in product(*(range(d) for d in G.invariants))]
    return [c for c in chars if order is None or c.order == order]


def character_by_index(D: int, order: int, index: int) -> ClassCharacter:
    """The index-th (1-based) character of the given order."""
    chars = class_characters(D, order)
    if not chars:
        raise UsageError(f"Cl_K for D = {D} has no character of order {order}")
    if not 1 <= index <= len(chars):
        raise UsageError(f"character index must be in 1..{len(chars)} for order {order}")
    return chars[index - 1]


@dataclass(frozen=True)
class DihedralCoefficients:
    D: int
    order: int
    coeffs: tuple[CyclotomicInt, ...]  # c(1), ..., c(B)

    @property
    def level(self) -> int:
        return abs(self.D)

    @property
    def B(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, m: int) -> CyclotomicInt:
        if not 1 <= m <= self.B:
            raise IndexError(m)
        return self.coeffs[m - 1]

    def rows(self) -> list[tuple[int, list[int]]]:
        """(m, coefficient vector in the zeta power basis)."""
        return [(m, list(c.coeffs)) for m, c in enumerate(self.coeffs, 1)]

    def integers(self) -> list[int] | None:
        """The coefficients as rational integers, or None if some are not."""
        if all(c.is_integer() for c in self.coeffs):
            return [int(c) for c in self.coeffs]
        return None


def _check_irreducible(phi: ClassCharacter) -> None:
    if not phi.is_irreducible_induction():
        raise UsageError(
            f"phi has order {phi.order} <= 2, so phi equals its conjugate and the induced "
            "representation is reducible (an Eisenstein series, not a cusp form)"
        )


def _prime_coefficient(phi: ClassCharacter, l: int) -> CyclotomicInt:
    K, cg = phi.K, class_group(phi.K)
    st = classify_prime(K, l)
    if st.kind is Splitting.INERT:
        return CyclotomicInt.from_int(phi.order, 0)
    return sum((phi(cg.ideal_class(P)) for P in st.primes), CyclotomicInt.from_int(phi.order, 0))


def induce_coefficients(phi: ClassCharacter, B: int, method: str = "hecke") -> DihedralCoefficients:
    """c(1..B) of the form induced from phi.

    ``hecke`` builds c(l) from the splitting of l, prime powers from the
    recursion c(l^(k+1)) = c(l) c(l^k) - eps(l) c(l^(k-1)) and the rest
    multiplicatively.  ``ideals`` sums phi over the ideals of each norm.
    """
    _check_irreducible(phi)
    if B < 1:
        raise UsageError("need at least one coefficient")
    n = phi.order
    if method == "ideals":
        K = phi.K
        zero = CyclotomicInt.from_int(n, 0)
        cs = [sum((phi(a.cls) for a in ideals_of_norm(K, m)), zero) for m in range(1, B + 1)]
        return DihedralCoefficients(phi.D, n, tuple(cs))
    if method != "hecke":
        raise UsageError("method must be 'hecke' or 'ideals'")
    one = CyclotomicInt.from_int(n, 1)
    c: list[CyclotomicInt | None] = [None, one] + [None] * (B - 1)
    for l in primerange(2, B + 1):
        eps = kronecker_symbol(phi.D, l)
        prev, cur = one, _prime_coefficient(phi, l)
        q = l
        while q <= B:
            c[q] = cur
            prev, cur = cur, cur * c[l] - prev * eps
            q *= l
    for m in range(2, B + 1):
        if c[m] is None:
            l, e = min(factorint(m).items())
            c[m] = c[l**e] * c[m // l**e]
    return DihedralCoefficients(phi.D, n, tuple(c[1:]))


def conductor_of_induction(phi: ClassCharacter) -> int:
    """N(cond phi) * |d_K| with cond phi = (1) for class characters."""
    cond_norm = 1
    return cond_norm * abs(phi.D)


@dataclass(frozen=True)
class StabilizationData:
    """Frobenius data at p: X^2 - c(p) X + det has the two U_p-eigenvalue choices as roots."""

    p: int
    kind: Splitting
    c_p: CyclotomicInt
    det: int
    eigenvalues: tuple[CyclotomicInt, CyclotomicInt]

    @property
    def both_ordinary(self) -> bool:
        # the eigenvalues are roots of unity, hence p-adic units
        return True

    def charpoly_holds(self) -> bool:
        a, b = self.eigenvalues
        return (a + b - self.c_p).is_zero() and (a * b - self.det).is_zero()


def p_stabilization_data(phi: ClassCharacter, p: int) -> StabilizationData:
    _check_irreducible(phi)
    st = classify_prime(phi.K, p)
    if st.kind is Splitting.RAMIFIED:
        raise UsageError(f"p = {p} divides D = {phi.D}; the induced form is not unramified at p")
    n = phi.order
    det = kronecker_symbol(phi.D, p)
    if st.kind is Splitting.SPLIT:
        cg = class_group(phi.K)
        a, b = (phi(cg.ideal_class(P)) for P in st.primes)
        return StabilizationData(p, st.kind, a + b, det, (a, b))
    # inert: c(p) = 0, det = -1, so the roots of X^2 - 1
    one = CyclotomicInt.from_int(n, 1)
    return StabilizationData(p, st.kind, CyclotomicInt.from_int(n, 0), det, (one, -one))

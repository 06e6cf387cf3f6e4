"""Quadratic fields Q(sqrt D) by fundamental discriminant.

Ideal classes are handled through binary quadratic forms; integral ideals
through their Z-Hermite bases.  Elements of O_K are pairs ``(x, y)`` meaning
``x + y*w`` with ``w = (D mod 2 + sqrt D) / 2``.

Conventions exposed to callers:

* a primitive ideal ``[a, (B + sqrt D)/2]`` corresponds to the form
  ``(a, B, (B^2 - D)/(4a))``;
* for a split prime l, the prime labelled ``P`` is the one with the smaller
  ``B`` in ``[0, 2l)``; the other is ``P'`` (its Galois conjugate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd, isqrt, sqrt
from typing import NamedTuple

from .arith import (
    FiniteAbelianGroup,
    _echelon,
    abelian_group_from_generators,
    factorint,
    is_prime,
    kronecker_symbol,
    smith_normal_form,
    xgcd,
)
from .errors import UsageError

Element = tuple[int, int]


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def _sign_a_plus_b_sqrt(a: int, b: int, D: int) -> int:
    """Sign of a + b*sqrt(D) for non-square D > 0, exactly."""
    sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    return sa if a * a > b * b * D else sb


@dataclass(frozen=True)
class QuadField:
    D: int

    def __post_init__(self):
        if not is_fundamental_discriminant(self.D):
            raise UsageError(f"{self.D} is not a fundamental discriminant")

    @property
    def is_real(self) -> bool:
        return self.D > 0

    @property
    def signature(self) -> str:
        return "real" if self.D > 0 else "imaginary"

    @property
    def delta(self) -> int:
        return self.D % 2

    @property
    def w_trace(self) -> int:
        return self.delta

    @property
    def w_norm(self) -> int:
        return (self.delta - self.D) // 4

    # element arithmetic -------------------------------------------------

    def mul(self, u: Element, v: Element) -> Element:
        (x1, y1), (x2, y2) = u, v
        yy = y1 * y2
        return (x1 * x2 - self.w_norm * yy, x1 * y2 + x2 * y1 + self.w_trace * yy)

    def norm(self, u: Element) -> int:
        x, y = u
        return x * x + self.w_trace * x * y + self.w_norm * y * y

    def trace(self, u: Element) -> int:
        return 2 * u[0] + self.w_trace * u[1]

    def conj(self, u: Element) -> Element:
        x, y = u
        return (x + self.w_trace * y, -y)

    def signs(self, u: Element) -> tuple[int, int]:
        """Signs of u under the embeddings sqrt D -> +sqrt D and -sqrt D (real K)."""
        if not self.is_real:
            raise UsageError("signs are only defined for real quadratic fields")
        x, y = u
        a = 2 * x + self.delta * y
        return (_sign_a_plus_b_sqrt(a, y, self.D), _sign_a_plus_b_sqrt(a, -y, self.D))

    def to_half_coords(self, u: Element) -> tuple[int, int]:
        """(X, Y) with u = (X + Y sqrt D) / 2."""
        x, y = u
        return (2 * x + self.delta * y, y)

    def from_half_coords(self, X: int, Y: int) -> Element:
        if (X - self.delta * Y) % 2:
            raise UsageError("(X + Y sqrt D)/2 is not integral")
        return ((X - self.delta * Y) // 2, Y)


# --------------------------------------------------------------------------
# binary quadratic forms


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c)


def principal_form(D: int) -> QuadForm:
    d = D % 2
    return QuadForm(1, d, (d - D) // 4)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Dirichlet composition (unreduced)."""
    D = f.disc
    if g.disc != D:
        raise UsageError("forms of different discriminants")
    a1, b1, _ = f
    a2, b2, _ = g
    s = (b1 + b2) // 2
    e1, u1, v1 = xgcd(a1, a2)
    e, w1, w = xgcd(e1, s)
    u, v = w1 * u1, w1 * v1
    a3 = a1 * a2 // (e * e)
    b3 = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) // e
    m = 2 * abs(a3)
    b3 %= m
    return QuadForm(a3, b3, (b3 * b3 - D) // (4 * a3))


def reduce_definite(f: QuadForm) -> QuadForm:
    a, b, c = f
    if a <= 0 or f.disc >= 0:
        raise UsageError("expected a positive definite form")
    while True:
        if not -a < b <= a:
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            continue
        return QuadForm(a, b, c)


def _rho(f: QuadForm, r: int) -> QuadForm:
    a, b, c = f
    D = f.disc
    m = 2 * abs(c)
    if abs(c) <= r:
        b2 = r - ((r + b) % m)  # largest value <= r with b2 == -b (mod m)
    else:
        b2 = -b % m
        if b2 > abs(c):
            b2 -= m
    return QuadForm(c, b2, (b2 * b2 - D) // (4 * c))


def _is_reduced_indefinite(f: QuadForm, r: int) -> bool:
    a, b, _ = f
    return 0 < b <= r and 2 * abs(a) + b > r and 2 * abs(a) - b <= r


def reduce_indefinite(f: QuadForm) -> QuadForm:
    r = isqrt(f.disc)
    for _ in range(10_000):
        if _is_reduced_indefinite(f, r):
            return f
        f = _rho(f, r)
    raise AssertionError("indefinite reduction failed to terminate")


def rho_cycle(f: QuadForm) -> list[QuadForm]:
    r = isqrt(f.disc)
    f = reduce_indefinite(f)
    cycle = [f]
    g = _rho(f, r)
    while g != f:
        cycle.append(g)
        g = _rho(g, r)
    return cycle


def reduced_forms(D: int) -> list[QuadForm]:
    """All primitive reduced forms of discriminant D."""
    out = []
    if D < 0:
        amax = isqrt(-D // 3)
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b - D) % 2:
                    continue
                num = b * b - D
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if c < a or (c == a and b < 0):
                    continue
                if gcd(gcd(a, b), c) == 1:
                    out.append(QuadForm(a, b, c))
    else:
        r = isqrt(D)
        for b in range(1, r + 1):
            if (b - D) % 2:
                continue
            ac = (D - b * b) // 4  # equals -a*c
            for a0 in range(1, ac + 1):
                if ac % a0:
                    continue
                for a in (a0, -a0):
                    f = QuadForm(a, b, -ac // a)
                    if gcd(gcd(a, b), f.c) == 1 and _is_reduced_indefinite(f, r):
                        out.append(f)
    return sorted(out)


# --------------------------------------------------------------------------
# fundamental unit


@dataclass(frozen=True)
class FundamentalUnit:
    """eps_0 = (x + y sqrt D) / 2 > 1, the generator of O_K^x / {+-1}.

    Both coordinate systems are kept: ``(x, y)`` in the half-integral form
    above, and ``element`` in the O_K basis ``{1, w}``.
    """

    D: int
    x: int
    y: int
    norm: int

    @property
    def element(self) -> Element:
        return QuadField(self.D).from_half_coords(self.x, self.y)

    @property
    def value(self) -> float:
        return (self.x + self.y * sqrt(self.D)) / 2

    def __str__(self) -> str:
        return f"({self.x} + {self.y}*sqrt({self.D}))/2"


@lru_cache(maxsize=None)
def _fundamental_unit(D: int) -> FundamentalUnit:
    K = QuadField(D)
    if not K.is_real:
        raise UsageError("imaginary quadratic fields have only torsion units")
    t = K.w_trace
    r = isqrt(D)
    P, Q = K.delta, 2  # continued fraction of w = (P + sqrt D) / Q
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    for _ in range(100_000):
        a = (P + r) // Q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        n = h * h - t * h * k + K.w_norm * k * k  # N(h - k*w)
        if n in (1, -1):
            eps = (h - k * t, k)  # conjugate of h - k*w, the large one
            if K.signs(eps)[0] < 0:
                eps = (-eps[0], -eps[1])
            X, Y = K.to_half_coords(eps)
            return FundamentalUnit(D, X, Y, n)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise AssertionError("continued fraction period not found")


def fundamental_unit(K: QuadField) -> FundamentalUnit:
    """Minimal unit > 1, found at the first continued-fraction convergent of w of unit norm."""
    return _fundamental_unit(K.D)


def torsion_units(K: QuadField) -> list[Element]:
    """Generators of the roots of unity in O_K."""
    if K.D == -4:
        return [(0, 1)]  # i
    if K.D == -3:
        return [(0, 1)]  # w = (1 + sqrt -3)/2, a primitive 6th root
    return [(-1, 0)]


def unit_generators(K: QuadField) -> list[Element]:
    gens = torsion_units(K)
    if K.is_real:
        gens = gens + [fundamental_unit(K).element]
    return gens


# --------------------------------------------------------------------------
# integral ideals


@dataclass(frozen=True)
class Ideal:
    """Z-basis {a, b + c*w} in Hermite form: c | a, c | b, 0 <= b < a."""

    D: int
    a: int
    b: int
    c: int

    @property
    def norm(self) -> int:
        return self.a * self.c

    def contains(self, u: Element) -> bool:
        x, y = u
        if y % self.c:
            return False
        return (x - (y // self.c) * self.b) % self.a == 0

    def reduce(self, u: Element) -> Element:
        """Canonical representative of u modulo the ideal."""
        x, y = u
        y0 = y % self.c
        x -= ((y - y0) // self.c) * self.b
        return (x % self.a, y0)

    def residues(self):
        return [(x, y) for y in range(self.c) for x in range(self.a)]

    def basis(self) -> tuple[Element, Element]:
        return ((self.a, 0), (self.b, self.c))

    def content(self) -> int:
        return self.c

    def form(self) -> QuadForm:
        """Form attached to the primitive part of this ideal."""
        A = self.a // self.c
        b = self.b // self.c
        B = 2 * b + self.D % 2
        return QuadForm(A, B, (B * B - self.D) // (4 * A))

    def __mul__(self, other: "Ideal") -> "Ideal":
        K = QuadField(self.D)
        gens = [K.mul(u, v) for u in self.basis() for v in other.basis()]
        return ideal_from_generators(K, gens)

    def __pow__(self, e: int) -> "Ideal":
        result = unit_ideal(self.D)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def unit_ideal(D: int) -> Ideal:
    return Ideal(D, 1, 0, 1)


def ideal_from_generators(K: QuadField, gens) -> Ideal:
    """The O_K-ideal generated by the given elements."""
    w = (0, 1)
    rows = []
    for g in gens:
        for v in (g, K.mul(g, w)):
            rows.append([v[1], v[0]])
    ech = _echelon(rows, 2)
    if len(ech) != 2 or ech[0][0] == 0:
        raise UsageError("generators span a degenerate lattice (zero ideal?)")
    c, b = ech[0]
    a = ech[1][1]
    return Ideal(K.D, a, b % a, c)


def ideal_from_form(D: int, f: QuadForm) -> Ideal:
    """Primitive ideal [a, (b + sqrt D)/2] for a form with a > 0."""
    if f.a <= 0:
        raise UsageError("need a > 0")
    K = QuadField(D)
    return ideal_from_generators(K, [(f.a, 0), ((f.b - K.delta) // 2, 1)])


def principal_ideal(K: QuadField, u: Element) -> Ideal:
    return ideal_from_generators(K, [u])


def find_generator(K: QuadField, I: Ideal) -> Element | None:
    """A generator of I when I is principal, else None."""
    Nm = I.norm
    if K.is_real:
        eps = fundamental_unit(K).value
        ymax = int(sqrt(Nm) * (eps + 1) / sqrt(K.D)) + 2
        targets = (4 * Nm, -4 * Nm)
    else:
        ymax = isqrt(4 * Nm // -K.D) + 1
        targets = (4 * Nm,)
    for y in range(-ymax, ymax + 1):
        for tgt in targets:
            s2 = tgt + K.D * y * y  # (2x + delta*y)^2
            if s2 < 0:
                continue
            s = isqrt(s2)
            if s * s != s2:
                continue
            for X in {s, -s}:
                if (X - K.delta * y) % 2:
                    continue
                u = ((X - K.delta * y) // 2, y)
                if I.contains(u):
                    return u
    return None


# --------------------------------------------------------------------------
# splitting of primes


class Splitting(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class SplitType:
    l: int
    kind: Splitting
    primes: tuple[Ideal, ...] = field(default=(), repr=False)

    @property
    def labels(self) -> tuple[str, ...]:
        if self.kind is Splitting.SPLIT:
            return (f"P{self.l}", f"P{self.l}'")
        if self.kind is Splitting.RAMIFIED:
            return (f"P{self.l}",)
        return (f"({self.l})",)

    @property
    def P(self) -> Ideal:
        return self.primes[0]

    @property
    def P_sigma(self) -> Ideal:
        if self.kind is not Splitting.SPLIT:
            raise UsageError(f"{self.l} is {self.kind.value}; no conjugate prime")
        return self.primes[1]


def classify_prime(K: QuadField, l: int) -> SplitType:
    if not is_prime(l):
        raise UsageError(f"{l} is not prime")
    return _classify(K.D, l)


@lru_cache(maxsize=None)
def _classify(D: int, l: int) -> SplitType:
    QuadField(D)  # validates D
    k = kronecker_symbol(D, l)
    if k == -1:
        return SplitType(l, Splitting.INERT, (Ideal(D, l, 0, l),))
    Bs = [B for B in range(2 * l) if (B - D) % 2 == 0 and (B * B - D) % (4 * l) == 0]
    primes = tuple(ideal_from_form(D, QuadForm(l, B, (B * B - D) // (4 * l))) for B in Bs)
    kind = Splitting.SPLIT if k == 1 else Splitting.RAMIFIED
    assert len(primes) == (2 if k == 1 else 1), (D, l, Bs)
    return SplitType(l, kind, primes)


# --------------------------------------------------------------------------
# class groups


@dataclass(frozen=True)
class ClassGroup:
    """Narrow class group Cl_K^+ and class group Cl_K of K.

    ``narrow`` and ``group`` carry Smith coordinates; classes of forms are
    looked up through the canonical reduced representative.  For imaginary K
    the two groups coincide.
    """

    D: int
    narrow: FiniteAbelianGroup
    group: FiniteAbelianGroup
    forms: tuple[QuadForm, ...]
    _dlog: dict = field(repr=False, compare=False)

    @property
    def h(self) -> int:
        return self.group.order

    @property
    def h_plus(self) -> int:
        return self.narrow.order

    def canonical(self, f: QuadForm) -> QuadForm:
        if f.disc != self.D:
            raise UsageError("form has the wrong discriminant")
        if self.D < 0:
            return reduce_definite(f)
        return min(rho_cycle(f))

    def narrow_class(self, f: QuadForm) -> tuple[int, ...]:
        return self._dlog[self.canonical(f)]

    def to_wide(self, c: tuple[int, ...]) -> tuple[int, ...]:
        if self.narrow is self.group:
            return tuple(c)
        return self.group.reduce(c)

    def form_class(self, f: QuadForm) -> tuple[int, ...]:
        return self.to_wide(self.narrow_class(f))

    def ideal_class(self, I: Ideal) -> tuple[int, ...]:
        """Class of an integral ideal in Cl_K."""
        return self.form_class(I.form())

    def narrow_ideal_class(self, I: Ideal) -> tuple[int, ...]:
        return self.narrow_class(I.form())

    def form_of(self, c: tuple[int, ...]) -> QuadForm:
        """A reduced form in the narrow class with Smith coordinates c."""
        for f in self.forms:
            if self._dlog[f] == tuple(c):
                return f
        raise UsageError(f"no class with coordinates {c}")


def class_group(K: QuadField) -> ClassGroup:
    return _class_group(K.D)


@lru_cache(maxsize=None)
def _class_group(D: int) -> ClassGroup:
    K = QuadField(D)
    forms = reduced_forms(D)
    if D < 0:
        canon = {f: f for f in forms}
        op = lambda f, g: reduce_definite(compose(f, g))  # noqa: E731
    else:
        canon = {}
        for f in forms:
            if f not in canon:
                cyc = rho_cycle(f)
                m = min(cyc)
                for g in cyc:
                    canon[g] = m

        def op(f, g):
            return canon[reduce_indefinite(compose(f, g))]

    reps = sorted(set(canon.values()))
    ident = canon[principal_form(D) if D < 0 else reduce_indefinite(principal_form(D))]
    narrow, dlog = abelian_group_from_generators(reps, op, ident, order=len(reps))
    if len(dlog) != len(reps):
        raise AssertionError("class group generation incomplete")
    wide = narrow
    if D > 0 and fundamental_unit(K).norm == 1:
        # Cl_K = Cl_K^+ modulo the class of ideals with a negative-norm generator
        neg = canon[reduce_indefinite(QuadForm(-1, K.delta, (D - K.delta) // 4))]
        rows = [[d if j == i else 0 for j in range(narrow.rank)] for i, d in enumerate(narrow.invariants)]
        rows.append(list(dlog[neg]))
        wide = smith_normal_form(rows, narrow.rank) if narrow.rank else narrow
    full = dict(dlog)
    for f, m in canon.items():
        full[f] = dlog[m]
    return ClassGroup(D, narrow, wide, tuple(reps), full)


# --------------------------------------------------------------------------
# ideals of given norm


class NormIdeal(NamedTuple):
    label: str
    cls: tuple[int, ...]
    ideal: Ideal


def ideals_of_norm(K: QuadField, m: int) -> list[NormIdeal]:
    """Every integral ideal of norm m together with its class in Cl_K."""
    if m < 1:
        raise UsageError("norm must be positive")
    cg = class_group(K)
    G = cg.group
    partial = [("", G.identity, unit_ideal(K.D))]
    for l, e in sorted(factorint(m).items()):
        st = classify_prime(K, l)
        local = []  # (label, class, ideal) of norm l^e
        if st.kind is Splitting.INERT:
            if e % 2:
                return []
            local.append((_pow_label(f"({l})", e // 2), G.identity, Ideal(K.D, l ** (e // 2), 0, l ** (e // 2))))
        elif st.kind is Splitting.RAMIFIED:
            P = st.P
            c = cg.ideal_class(P)
            local.append((_pow_label(st.labels[0], e), G.scale(c, e), P**e))
        else:
            P, Ps = st.primes
            cP, cPs = cg.ideal_class(P), cg.ideal_class(Ps)
            for i in range(e, -1, -1):
                lab = "*".join(x for x in (_pow_label(st.labels[0], i), _pow_label(st.labels[1], e - i)) if x)
                local.append((lab, G.add(G.scale(cP, i), G.scale(cPs, e - i)), P**i * Ps ** (e - i)))
        partial = [
            ("*".join(x for x in (lab0, lab1) if x), G.add(c0, c1), I0 * I1)
            for lab0, c0, I0 in partial
            for lab1, c1, I1 in local
        ]
    return [NormIdeal(lab or "(1)", c, I) for lab, c, I in partial]


def _pow_label(base: str, e: int) -> str:
    if e == 0:
        return ""
    return base if e == 1 else f"{base}^{e}"

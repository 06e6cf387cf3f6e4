"""Fixed-precision p-adic integers for odd p.

A ``PadicInt`` is a residue modulo p^N.  Series (log, exp) are summed with
guard digits and truncated back to N; a value that is zero modulo p^N is
reported as having valuation N, which callers must treat as "not separated
from zero" rather than as an exact zero.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from sympy.ntheory import sqrt_mod

from .arith import is_prime, multiplicative_order, valuation
from .errors import UsageError
from .quadfield import QuadField, Splitting, classify_prime, fundamental_unit

DEFAULT_PRECISION = int(os.environ.get("WEIGHTONE_PREC", "10"))


def _check_odd_prime(p: int) -> None:
    if p == 2:
        raise UsageError("p must be an odd prime; p = 2 is excluded throughout")
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")


def _ilog(n: int, p: int) -> int:
    """floor(log_p n) for n >= 1."""
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


def _clog(n: int, p: int) -> int:
    """ceil(log_p n) for n >= 1."""
    k, q = 0, 1
    while q < n:
        q *= p
        k += 1
    return k


@dataclass(frozen=True)
class PadicInt:
    p: int
    N: int
    residue: int

    def __post_init__(self):
        if self.N < 1:
            raise UsageError("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.p**self.N)

    @classmethod
    def from_int(cls, a: int, p: int, N: int) -> "PadicInt":
        return cls(p, N, a)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def valuation(self) -> int:
        """ord_p, capped at N (N means zero at working precision)."""
        if self.residue == 0:
            return self.N
        return valuation(self.residue, self.p)

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def _other(self, other) -> int:
        if isinstance(other, int):
            return other
        if isinstance(other, PadicInt):
            if (other.p, other.N) != (self.p, self.N):
                raise UsageError("p-adic operands with different p or precision")
            return other.residue
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else PadicInt(self.p, self.N, self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else PadicInt(self.p, self.N, self.residue - o)

    def __rsub__(self, other):
        return PadicInt(self.p, self.N, other - self.residue)

    def __neg__(self):
        return PadicInt(self.p, self.N, -self.residue)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else PadicInt(self.p, self.N, self.residue * o)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.p, self.N, pow(self.residue, e, self.modulus))

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise UsageError("only p-adic units are invertible in Z_p")
        return PadicInt(self.p, self.N, pow(self.residue, -1, self.modulus))

    def __int__(self):
        return self.residue


def padic_log(u: PadicInt) -> PadicInt:
    """log(u) for a principal unit u = 1 + x, correct modulo p^N."""
    p, N = u.p, u.N
    _check_odd_prime(p)
    x = (u.residue - 1) % u.modulus
    if x == 0:
        return PadicInt(p, N, 0)
    v = valuation(x, p)
    if v == 0:
        raise UsageError("log is only defined here on principal units (u = 1 mod p)")
    # every term with n > L has valuation n*v - ord_p(n) >= N
    L = 1
    while (L + 1) * v - _ilog(L + 1, p) < N:
        L += 1
    W = N + _clog(L, p) + 2
    total = 0
    for n in range(1, L + 1):
        k = valuation(n, p)
        num = pow(x, n, p ** (W + k)) // p**k
        term = num * pow(n // p**k, -1, p**W)
        total += term if n % 2 else -term
    return PadicInt(p, N, total)


def _legendre(n: int, p: int) -> int:
    s, q = 0, p
    while q <= n:
        s += n // q
        q *= p
    return s


def padic_exp(x: PadicInt) -> PadicInt:
    """exp(x) for ord_p(x) >= 1, correct modulo p^N."""
    p, N = x.p, x.N
    _check_odd_prime(p)
    if x.residue == 0:
        return PadicInt(p, N, 1)
    v = x.valuation
    if v == 0:
        raise UsageError("exp diverges at p-adic units; need ord_p(x) >= 1")
    # ord_p(n!) <= (n-1)/(p-1), so terms beyond L have valuation >= N
    L = 1
    while (L + 1) * v * (p - 1) - L < N * (p - 1):
        L += 1
    W = N + _clog(L + 1, p) + 2
    total, unit_fact = 1, 1
    for n in range(1, L + 1):
        m = n
        while m % p == 0:
            m //= p
        unit_fact = unit_fact * m % p**W
        k = _legendre(n, p)
        num = pow(x.residue, n, p ** (W + k)) // p**k
        total += num * pow(unit_fact, -1, p**W)
    return PadicInt(p, N, total)


def teichmuller(a: int, p: int, N: int = DEFAULT_PRECISION) -> PadicInt:
    """The (p-1)-st root of unity congruent to a mod p, as the limit of a^(p^n)."""
    _check_odd_prime(p)
    if a % p == 0:
        raise UsageError(f"teichmuller lift needs a unit; {p} divides {a}")
    mod = p**N
    x = a % mod
    for _ in range(N + 1):
        y = pow(x, p, mod)
        if y == x:
            return PadicInt(p, N, x)
        x = y
    raise AssertionError("teichmuller iteration did not stabilise")


def _quadratic_roots_mod_p(tr: int, nm: int, p: int) -> list[int]:
    disc = (tr * tr - 4 * nm) % p
    if disc == 0:
        raise UsageError(f"x^2 - {tr}x + {nm} has a double root mod {p} (ramified case); no simple root to lift")
    s = sqrt_mod(disc, p)
    if s is None:
        raise UsageError(f"x^2 - {tr}x + {nm} is irreducible mod {p} (inert case); no root in Z_{p}")
    inv2 = pow(2, -1, p)
    return sorted({(tr + s) * inv2 % p, (tr - s) * inv2 % p})


def hensel_lift(tr: int, nm: int, p: int, N: int, r0: int) -> PadicInt:
    """Newton-lift a simple root r0 of x^2 - tr*x + nm from mod p to mod p^N."""
    f = lambda x: x * x - tr * x + nm  # noqa: E731
    if f(r0) % p:
        raise UsageError(f"{r0} is not a root mod {p}")
    if (2 * r0 - tr) % p == 0:
        raise UsageError("root is not simple")
    x, k = r0 % p, 1
    while k < N:
        k = min(2 * k, N)
        mod = p**k
        x = (x - f(x) * pow(2 * x - tr, -1, mod)) % mod
    return PadicInt(p, N, x)


def hensel_quadratic_root(tr: int, nm: int, p: int, N: int = DEFAULT_PRECISION) -> PadicInt:
    """Root in Z_p of x^2 - tr*x + nm lifting the smaller of its two roots mod p."""
    _check_odd_prime(p)
    roots = _quadratic_roots_mod_p(tr, nm, p)
    return hensel_lift(tr, nm, p, N, roots[0])


@dataclass(frozen=True)
class UnitIndexResult:
    """Index of the closure of global units inside the principal units at P.

    ``v`` is ord_p(log eps^m); the index is p^(v-1).  When ``precision_ok``
    is False, log eps^m vanished modulo p^N and ``v`` is only a lower bound.
    """

    D: int
    p: int
    N: int
    v: int
    residue_order: int
    branch: str
    precision_ok: bool

    @property
    def index_exponent(self) -> int:
        return self.v - 1

    @property
    def index(self) -> int:
        return self.p ** (self.v - 1)


def embed_unit(K: QuadField, p: int, N: int, branch: str = "P") -> PadicInt:
    """Image of the fundamental unit in the completion of K at P (or P')."""
    st = classify_prime(K, p)
    if st.kind is not Splitting.SPLIT:
        raise UsageError(
            f"p must split in K: {p} is {st.kind.value} in Q(sqrt {K.D}), "
            "but a dihedral weight-one specialization forces p to split"
        )
    eps = fundamental_unit(K)
    prime = st.P if branch == "P" else st.P_sigma
    # prime = [p, (B + sqrt D)/2], so sqrt D = -B modulo it
    # lift sqrt D rather than eps itself: x^2 - tr x + nm has a double root when p | y
    B = prime.form().b
    s = hensel_lift(0, -K.D, p, N, -B % p)
    return (s * eps.y + eps.x) * PadicInt(p, N, 2).inverse()


def unit_index(K: QuadField, p: int, N: int = DEFAULT_PRECISION, branch: str = "P") -> UnitIndexResult:
    """p-adic unit index |U_P / closure(U_K)| for a real K in which p splits.

    The units congruent to 1 mod P are generated (up to sign) by eps^m with m
    the order of eps mod P.  A sign can only halve log eps^m, which is
    harmless for odd p.
    """
    _check_odd_prime(p)
    if not K.is_real:
        raise UsageError("unit index needs a real quadratic field; imaginary K has unit rank 0")
    if branch not in ("P", "P'"):
        raise UsageError("branch must be 'P' or \"P'\"")
    e = embed_unit(K, p, N, branch)
    m = multiplicative_order(e.residue % p, p)
    lg = padic_log(e**m)
    v = lg.valuation
    return UnitIndexResult(K.D, p, N, v, m, branch, v < N)

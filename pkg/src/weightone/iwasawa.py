"""Truncated power series in Z_p[[X]] and their arithmetic specializations.

The topological generator gamma is pinned by chi_p(gamma) = u = 1 + p, so the
weight-k point with wild character of p-power order m sits at
``X = zeta_m * u^(k-1) - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from sympy import totient

from .arith import CyclotomicInt, valuation
from .errors import PrecisionError, UsageError
from .padic import PadicInt, _check_odd_prime

MAX_CYCLOTOMIC_DEGREE = 2500

GAMMA_CONVENTION = "gamma is the topological generator with chi_p(gamma) = 1 + p"


@dataclass(frozen=True)
class IwasawaSeries:
    """sum a_i X^i modulo (p^N, X^M), coefficients stored as residues."""

    p: int
    N: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_odd_prime(self.p)
        if self.N < 1:
            raise UsageError("precision must be positive")
        if not self.coeffs:
            raise UsageError("a series needs at least one coefficient")
        mod = self.p**self.N
        object.__setattr__(self, "coeffs", tuple(int(c) % mod for c in self.coeffs))

    @property
    def M(self) -> int:
        return len(self.coeffs)

    def coefficient(self, i: int) -> PadicInt:
        return PadicInt(self.p, self.N, self.coeffs[i])

    def __mul__(self, other: "IwasawaSeries") -> "IwasawaSeries":
        if (other.p, other.N) != (self.p, self.N):
            raise UsageError("series over different rings")
        M = min(self.M, other.M)
        out = [0] * M
        for i, a in enumerate(self.coeffs[:M]):
            if a:
                for j, b in enumerate(other.coeffs[: M - i]):
                    out[i + j] += a * b
        return IwasawaSeries(self.p, self.N, tuple(out))

    @classmethod
    def parse(cls, text: str) -> "IwasawaSeries":
        """Read the plain-text format: header ``p N M`` then M integer lines."""
        tokens = text.split()
        if len(tokens) < 3:
            raise UsageError("series file needs a header line 'p N M'")
        try:
            p, N, M = (int(t) for t in tokens[:3])
            coeffs = [int(t) for t in tokens[3:]]
        except ValueError as exc:
            raise UsageError(f"series file: {exc}") from None
        if len(coeffs) != M:
            raise UsageError(f"series file declares M = {M} but has {len(coeffs)} coefficients")
        return cls(p, N, tuple(coeffs))

    @classmethod
    def read(cls, path: str | Path) -> "IwasawaSeries":
        return cls.parse(Path(path).read_text())

    def to_text(self) -> str:
        return "\n".join([f"{self.p} {self.N} {self.M}", *map(str, self.coeffs)]) + "\n"


def weierstrass_invariants(T: IwasawaSeries) -> tuple[int, int]:
    """(mu, lambda): least coefficient valuation and first index attaining it."""
    if T.M < 2:
        raise UsageError("need truncation degree M >= 2 to read off invariants")
    vals = [valuation(a, T.p) for a in T.coeffs if a]
    if not vals:
        raise PrecisionError(f"series is zero modulo (p^{T.N}, X^{T.M}); invariants indeterminate")
    mu = min(vals)
    lam = next(i for i, a in enumerate(T.coeffs) if a and valuation(a, T.p) == mu)
    return mu, lam


@dataclass(frozen=True)
class SpecializationPoint:
    """Weight k and p-power order m of the wild character epsilon (epsilon(gamma) = zeta_m)."""

    p: int
    k: int
    m: int = 1

    def __post_init__(self):
        _check_odd_prime(self.p)
        if self.k < 1:
            raise UsageError("weight must be at least 1")
        m = self.m
        while m % self.p == 0:
            m //= self.p
        if m != 1:
            raise UsageError(f"wild character order {self.m} is not a power of {self.p}")

    @property
    def u(self) -> int:
        return 1 + self.p

    def x_value(self, modulus: int | None) -> CyclotomicInt:
        return CyclotomicInt.zeta(self.m, 1, modulus) * self.u ** (self.k - 1) - 1


def _check_order(m: int) -> None:
    if int(totient(m)) > MAX_CYCLOTOMIC_DEGREE:
        raise UsageError(f"cyclotomic order {m} is beyond the supported degree {MAX_CYCLOTOMIC_DEGREE}")


def specialize(T: IwasawaSeries, point: SpecializationPoint, exact: bool = False) -> CyclotomicInt:
    """T evaluated at the point's X-value in Z/p^N[zeta_m].

    With ``exact=True`` the integer representative polynomial is evaluated in
    Z[zeta_m] without reduction.
    """
    if point.p != T.p:
        raise UsageError("point and series have different p")
    _check_order(point.m)
    modulus = None if exact else T.p**T.N
    x = point.x_value(modulus)
    acc = CyclotomicInt.from_int(point.m, 0, modulus)
    for a in reversed(T.coeffs):
        acc = acc * x + a
    return acc


def weight_one_root_bound(T: IwasawaSeries) -> int:
    """lambda(T): bounds the number of weight-one points zeta - 1 where T vanishes."""
    return weierstrass_invariants(T)[1]


def weight_one_zero_count(T: IwasawaSeries, orders=None) -> int:
    """Exhaustive count of points X = zeta - 1 (zeta of the given orders) where T vanishes mod p^N.

    T is read as the polynomial of its stored coefficients; the test is
    independent of the integer lift.  A hit at one primitive root is a hit at
    all its conjugates, so it counts phi(m) points.  Distinct such points are
    at distance <= 1/(p-1), so once N - mu > lambda/(p-1) every counted point
    owns a root of the distinguished polynomial and the count is <= lambda.
    """
    mu, lam = weierstrass_invariants(T)
    if (T.N - mu) * (T.p - 1) <= lam:
        raise PrecisionError(
            f"N - mu = {T.N - mu} does not exceed lambda/(p-1) = {lam}/{T.p - 1}; vanishing mod p^N is not conclusive"
        )
    if orders is None:
        orders = (1, T.p, T.p**2)
    count = 0
    for m in orders:
        if specialize(T, SpecializationPoint(T.p, 1, m)).is_zero():
            count += int(totient(m))
    return count

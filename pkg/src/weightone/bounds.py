"""The dihedral bound M = p^ord_p(M'), the exceptional bound a*b and Table-style traces.

``M'`` is the product of the class number of K, the p-adic unit index and one
factor per prime l dividing the tame level: q_l - 1 when l splits in K,
q_l + 1 when l is inert, 1 when l ramifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import prod
from pathlib import Path
from typing import NamedTuple

from .arith import factorint, valuation
from .classfield import InfiniteRegimeError, character_target
from .errors import UsageError
from .iwasawa import GAMMA_CONVENTION, IwasawaSeries, weierstrass_invariants
from .padic import DEFAULT_PRECISION, _check_odd_prime
from .quadfield import QuadField, Splitting, class_group, classify_prime

DIHEDRAL_ASSUMPTIONS = (
    "the residual representation of the family is induced from a character of K",
    "p splits in K and the family has a classical weight-one specialization whose inertia image "
    "at p has order at least three",
    "the family is ramified at the prime labelled P above p and unramified at its conjugate; "
    "Q = P is a labelling convention, not something checked from field data",
)


class Mode(str, Enum):
    EXACT = "exact"
    FROM_INVARIANTS = "from-invariants"


@dataclass(frozen=True)
class BoundReport:
    p: int
    factors: tuple[tuple[str, int], ...]
    mode: Mode
    assumptions: tuple[str, ...] = ()
    inputs: dict = field(default_factory=dict, compare=False)

    @property
    def M_prime(self) -> int:
        return prod(v for _, v in self.factors)

    @property
    def M(self) -> int:
        return self.p ** valuation(self.M_prime, self.p)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "p": self.p,
            "factors": [{"label": k, "value": v} for k, v in self.factors],
            "M_prime": self.M_prime,
            "ord_p_M_prime": valuation(self.M_prime, self.p),
            "M": self.M,
        }


def _tame_factor(kind: Splitting, l: int) -> tuple[str, int]:
    # over F = Q the residue field at l has q_l = l elements
    if kind is Splitting.SPLIT:
        return f"q_{l} - 1 (split)", l - 1
    if kind is Splitting.INERT:
        return f"q_{l} + 1 (inert)", l + 1
    return f"{l} ramified", 1


def dihedral_bound_exact(K: QuadField, p: int, n0: int = 1, N: int = DEFAULT_PRECISION) -> BoundReport:
    """M(F, K, f) for F = Q computed from the field data of K."""
    _check_odd_prime(p)
    if not K.is_real:
        raise InfiniteRegimeError(
            f"Q(sqrt {K.D}) is totally imaginary, so Cl_K(n0 Q^inf) is infinite: the family has CM "
            "by K and carries infinitely many weight-one specializations; no finite bound applies"
        )
    st = classify_prime(K, p)
    if st.kind is not Splitting.SPLIT:
        raise UsageError(
            f"p must split in K: {p} is {st.kind.value} in Q(sqrt {K.D}), but a dihedral weight-one "
            "specialization with large inertia at p forces p to split"
        )
    target = character_target(K, p, n0, N)
    factors = [("h", class_group(K).h), ("unit index", target.unit_part)]
    factors += [_tame_factor(t.kind, t.l) for t in _tame_types(K, n0)]
    return BoundReport(p, tuple(factors), Mode.EXACT, DIHEDRAL_ASSUMPTIONS, {"D": K.D, "p": p, "n0": n0, "N": N})


def _tame_types(K: QuadField, n0: int):
    return [classify_prime(K, l) for l in sorted(factorint(n0))]


# --------------------------------------------------------------------------
# general totally real F through supplied invariants


def _is_prime_power(q: int) -> bool:
    return q > 1 and len(factorint(q)) == 1


@dataclass(frozen=True)
class GeneralFieldInvariants:
    """Everything M' needs for a quadratic extension K of a totally real F of degree d."""

    d: int
    t: int
    class_number_K: int
    unit_index_p_exponent: int
    split_tame: tuple[int, ...] = ()
    inert_tame: tuple[int, ...] = ()
    hF_p_exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "split_tame", tuple(self.split_tame))
        object.__setattr__(self, "inert_tame", tuple(self.inert_tame))
        if self.d < 1 or not 1 <= self.t <= self.d:
            raise UsageError(f"need 1 <= t <= d, got d = {self.d}, t = {self.t}")
        if self.class_number_K < 1:
            raise UsageError("class_number_K must be positive")
        if self.unit_index_p_exponent < 0 or self.hF_p_exponent < 0:
            raise UsageError("p-exponents must be non-negative")
        for q in self.split_tame + self.inert_tame:
            if not _is_prime_power(q):
                raise UsageError(f"residue field size {q} is not a prime power")

    def validate_for(self, p: int) -> None:
        _check_odd_prime(p)
        for q in self.split_tame + self.inert_tame:
            if q % p == 0:
                raise UsageError(f"tame residue field size {q} is divisible by p = {p}")

    _FIELDS = ("d", "t", "class_number_K", "unit_index_p_exponent", "split_tame", "inert_tame", "hF_p_exponent")

    @classmethod
    def parse(cls, text: str) -> tuple["GeneralFieldInvariants", int | None]:
        """Flat ``key = value`` text; lists are comma separated; ``p`` may be given too."""
        values: dict[str, object] = {}
        p = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"line {lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            try:
                if key in ("split_tame", "inert_tame"):
                    values[key] = tuple(int(x) for x in val.replace(",", " ").split())
                elif key == "p":
                    p = int(val)
                elif key in cls._FIELDS:
                    values[key] = int(val)
                else:
                    raise UsageError(f"line {lineno}: unknown key {key!r}")
            except ValueError:
                raise UsageError(f"line {lineno}: {key} needs integer values") from None
        missing = [k for k in ("d", "t", "class_number_K", "unit_index_p_exponent") if k not in values]
        if missing:
            raise UsageError(f"invariants file is missing {', '.join(missing)}")
        return cls(**values), p

    @classmethod
    def read(cls, path: str | Path) -> tuple["GeneralFieldInvariants", int | None]:
        return cls.parse(Path(path).read_text())

    def to_text(self, p: int | None = None) -> str:
        lines = [] if p is None else [f"p = {p}"]
        for k in self._FIELDS:
            v = getattr(self, k)
            lines.append(f"{k} = {', '.join(map(str, v)) if isinstance(v, tuple) else v}")
        return "\n".join(lines) + "\n"


def dihedral_bound_from_invariants(inv: GeneralFieldInvariants, p: int) -> BoundReport:
    inv.validate_for(p)
    factors = [
        ("h (user-supplied)", inv.class_number_K),
        ("unit index (user-supplied)", p**inv.unit_index_p_exponent),
    ]
    factors += [(f"q = {q}: q - 1 (split, user-supplied)", q - 1) for q in inv.split_tame]
    factors += [(f"q = {q}: q + 1 (inert, user-supplied)", q + 1) for q in inv.inert_tame]
    return BoundReport(p, tuple(factors), Mode.FROM_INVARIANTS, DIHEDRAL_ASSUMPTIONS, {"invariants": inv, "p": p})


def extract_invariants(K: QuadField, p: int, n0: int = 1, N: int = DEFAULT_PRECISION) -> GeneralFieldInvariants:
    """The F = Q invariants behind ``dihedral_bound_exact`` (ramified tame primes contribute nothing)."""
    target = character_target(K, p, n0, N)
    return GeneralFieldInvariants(
        d=1,
        t=1,
        class_number_K=class_group(K).h,
        unit_index_p_exponent=valuation(target.unit_part, p),
        split_tame=tuple(l for l, _ in target.split_parts),
        inert_tame=tuple(l for l, _ in target.inert_parts),
        hF_p_exponent=0,
    )


# --------------------------------------------------------------------------
# exceptional residual images


class ExceptionalType(str, Enum):
    A4 = "A4"
    S4 = "S4"
    A5 = "A5"


class ExceptionalBound(NamedTuple):
    a: int
    b: int
    bound: int


def exceptional_bound(p: int, kind: ExceptionalType | str, hF: int, t: int) -> ExceptionalBound:
    """a * b for a family of exceptional residual type over F with |Cl_F| = hF and t primes above p."""
    _check_odd_prime(p)
    try:
        kind = ExceptionalType(kind)
    except ValueError:
        raise UsageError(f"type must be one of A4, S4, A5, got {kind!r}") from None
    if hF < 1 or t < 1:
        raise UsageError("need hF >= 1 and t >= 1")
    a = 2 if (p == 5 and kind is ExceptionalType.A5) else 1
    b = p ** valuation(hF, p)
    if p in (3, 5):
        b *= 2**t
    return ExceptionalBound(a, b, a * b)


@dataclass(frozen=True)
class QuadraticRoots:
    """The two roots of X^2 + c1 X + c0."""

    c1: int
    c0: int

    @property
    def discriminant(self) -> int:
        return self.c1 * self.c1 - 4 * self.c0

    def __str__(self) -> str:
        return f"roots of X^2 {'-' if self.c1 < 0 else '+'} {abs(self.c1)}X {'-' if self.c0 < 0 else '+'} {abs(self.c0)}"


PROJECTIVE_TRACES: dict[int, int | QuadraticRoots] = {1: 4, 2: 0, 3: 1, 4: 2, 5: QuadraticRoots(-3, 1)}


def projective_trace(order: int) -> int | QuadraticRoots:
    """Tr(g)^2 / det(g) for g of the given order in PGL_2 (orders up to 5 occur in exceptional images)."""
    if order not in PROJECTIVE_TRACES:
        raise UsageError(f"order must be in 1..5 (exceptional projective images have element orders <= 5), got {order}")
    return PROJECTIVE_TRACES[order]


def a5_root_congruence(p: int) -> bool:
    """Whether the two order-5 projective traces coincide mod p, i.e. p divides the discriminant 5."""
    _check_odd_prime(p)
    return PROJECTIVE_TRACES[5].discriminant % p == 0


@dataclass(frozen=True)
class LambdaBound:
    mu: int
    lam: int
    label: str = "Lambda-level upper bound"
    convention: str = GAMMA_CONVENTION

    @property
    def bound(self) -> int:
        return self.lam


def lambda_bound(T: IwasawaSeries) -> LambdaBound:
    """Bound on weight-one zeros of a supplied trace series by its lambda-invariant."""
    mu, lam = weierstrass_invariants(T)
    return LambdaBound(mu, lam)


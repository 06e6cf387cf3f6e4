"""Ray class groups, the tame local quotients and the finiteness dichotomy.

Moduli are ``n0 * Q^r`` times every real place, with n0 a rational integer
prime to p and Q the prime labelled ``P`` above a split p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd, prod

from .arith import (
    FiniteAbelianGroup,
    FiniteField,
    abelian_group_from_generators,
    factorint,
    is_prime,
    primerange,
    primitive_root,
    smith_normal_form,
)
from .errors import PrecisionError, ResourceError, UsageError
from .padic import DEFAULT_PRECISION, _check_odd_prime, unit_index
from .quadfield import (
    Ideal,
    QuadField,
    SplitType,
    Splitting,
    class_group,
    classify_prime,
    find_generator,
    unit_generators,
)

ENUMERATION_BUDGET = 200_000


class InfiniteRegimeError(UsageError):
    """Cl_K(n0 Q^inf) is infinite, so no finite bound exists."""


@dataclass(frozen=True)
class Modulus:
    n0: int = 1
    r: int = 0
    p: int | None = None

    def __post_init__(self):
        if self.n0 < 1 or self.r < 0:
            raise UsageError("need n0 >= 1 and r >= 0")
        if self.r > 0 and self.p is None:
            raise UsageError("a positive power of Q needs the prime p")
        if self.p is not None and gcd(self.n0, self.p) != 1:
            raise UsageError(f"tame level n0 = {self.n0} must be prime to p = {self.p}")

    def ideal(self, K: QuadField) -> Ideal:
        I = Ideal(K.D, self.n0, 0, self.n0)
        if self.r:
            I = I * self.Q(K) ** self.r
        return I

    def Q(self, K: QuadField) -> Ideal:
        st = classify_prime(K, self.p)
        if st.kind is not Splitting.SPLIT:
            raise UsageError(f"Q needs p split in K; {self.p} is {st.kind.value}")
        return st.P

    def prime_divisors(self, K: QuadField) -> list[Ideal]:
        out = []
        for l in factorint(self.n0):
            out.extend(classify_prime(K, l).primes)
        if self.r:
            out.append(self.Q(K))
        return out

    def norm(self, K: QuadField) -> int:
        return self.ideal(K).norm


# --------------------------------------------------------------------------
# local quotients at tame primes


@dataclass(frozen=True)
class LocalQuotient:
    """(prod over L | l of (O_K/L)^x) / (Z/l)^x for a tame prime l."""

    l: int
    split_type: Splitting
    group: FiniteAbelianGroup
    generator: object = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return self.group.order


def local_quotient(K: QuadField, l: int, p: int | None = None) -> LocalQuotient:
    if l == p:
        raise UsageError("the local quotient is only taken at primes away from p")
    st = classify_prime(K, l)
    if st.kind is Splitting.SPLIT:
        # (x, y) mod diagonal -> y / x identifies the quotient with F_l^x
        return LocalQuotient(l, st.kind, FiniteAbelianGroup.from_orders([l - 1]), (1, primitive_root(l)))
    if st.kind is Splitting.INERT:
        F = FiniteField(l, 2)
        return LocalQuotient(l, st.kind, FiniteAbelianGroup.from_orders([l + 1]), F.generator())
    return LocalQuotient(l, st.kind, FiniteAbelianGroup.trivial(), None)


# --------------------------------------------------------------------------
# ray class groups


@dataclass(frozen=True)
class RayClassGroup:
    """Narrow ray class group with the pieces of its exact sequence.

    ``order * unit_image_order == h * local_order`` where ``local_order`` is
    |(O_K/m)^x| times the sign group of the real places.
    """

    D: int
    modulus: Modulus
    group: FiniteAbelianGroup
    h: int
    local_group: FiniteAbelianGroup
    unit_image_order: int
    phi_formula: int

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def local_order(self) -> int:
        return self.local_group.order


def phi_of_modulus(K: QuadField, m: Modulus) -> int:
    """|(O_K/m)^x| from the prime-power formula N(L)^(e-1) (N(L) - 1)."""
    total = 1
    for l, e in factorint(m.n0).items():
        st = classify_prime(K, l)
        if st.kind is Splitting.SPLIT:
            total *= (l ** (e - 1) * (l - 1)) ** 2
        elif st.kind is Splitting.INERT:
            total *= l ** (2 * (e - 1)) * (l * l - 1)
        else:
            total *= l ** (2 * e - 1) * (l - 1)
    if m.r:
        total *= m.p ** (m.r - 1) * (m.p - 1)
    return total


def _unit_residues(K: QuadField, I: Ideal, primes: list[Ideal]):
    for u in I.residues():
        if not any(P.contains(u) for P in primes):
            yield u


def ray_class_group(K: QuadField, m: Modulus, budget: int = ENUMERATION_BUDGET) -> RayClassGroup:
    """Cl_K(m) assembled from Cl_K, (O_K/m)^x x signs and the global units."""
    I = m.ideal(K)
    if I.norm > budget:
        raise ResourceError(f"modulus norm {I.norm} exceeds the enumeration budget {budget}")
    primes = m.prime_divisors(K)
    nsigns = 2 if K.is_real else 0
    one = (I.reduce((1, 0)), (1,) * nsigns)

    def op(a, b):
        return (I.reduce(K.mul(a[0], b[0])), tuple(x * y for x, y in zip(a[1], b[1])))

    phi = phi_of_modulus(K, m)
    target = phi * 2**nsigns
    gens = [(one[0], tuple(-1 if i == j else 1 for i in range(nsigns))) for j in range(nsigns)]
    gens += [(u, (1,) * nsigns) for u in _unit_residues(K, I, primes)]
    local, dlog = abelian_group_from_generators(gens, op, one, order=target)
    if local.order != target:
        raise AssertionError(f"(O_K/m)^x has order {local.order}, formula gives {target}")

    def image(alpha):
        s = K.signs(alpha) if K.is_real else ()
        return dlog[(I.reduce(alpha), s)]

    cg = class_group(K)
    G = cg.group
    kl, kc = local.rank, G.rank
    local_rows = [[d if j == i else 0 for j in range(kl)] for i, d in enumerate(local.invariants)]
    unit_rows = [list(image(u)) for u in unit_generators(K)]
    rows = [r + [0] * kc for r in local_rows + unit_rows]
    for j, d in enumerate(G.invariants):
        target_cls = tuple(int(i == j) for i in range(kc))
        a = _prime_in_class(K, cg, target_cls, primes)
        alpha = find_generator(K, a**d)
        if alpha is None:
            raise AssertionError("power of a class-group generator is not principal")
        rows.append([-x for x in image(alpha)] + [d if i == j else 0 for i in range(kc)])
    group = smith_normal_form(rows, kl + kc) if kl + kc else FiniteAbelianGroup.trivial()
    unit_quot = smith_normal_form(local_rows + unit_rows, kl) if kl else FiniteAbelianGroup.trivial()
    return RayClassGroup(K.D, m, group, cg.h, local, local.order // unit_quot.order, phi)


def _prime_in_class(K: QuadField, cg, cls: tuple[int, ...], avoid: list[Ideal], limit: int = 100_000) -> Ideal:
    for l in primerange(2, limit):
        st = classify_prime(K, l)
        if st.kind is Splitting.INERT:
            continue
        for P in st.primes:
            if P in avoid:
                continue
            if cg.ideal_class(P) == cls:
                return P
    raise ResourceError("no prime ideal found in the requested class")


def ray_class_order(K: QuadField, m: Modulus) -> FiniteAbelianGroup:
    return ray_class_group(K, m).group


# --------------------------------------------------------------------------
# finiteness of Cl_K(n0 Q^inf)


class Finiteness(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class FinitenessResult:
    status: Finiteness
    reason: str
    v: int | None = None
    N: int | None = None


def finiteness_test(K: QuadField, p: int, N: int = DEFAULT_PRECISION) -> FinitenessResult:
    """Decide whether Cl_K(n0 Q^inf) is finite (it is independent of n0).

    Finite exactly when the global units have full Z_p-rank in the local
    principal units, i.e. when log of the unit generator is nonzero.
    """
    _check_odd_prime(p)
    if not K.is_real:
        return FinitenessResult(
            Finiteness.INFINITE,
            "totally imaginary: global units have Z_p-rank 0 < 1 = rank of the local units",
        )
    res = unit_index(K, p, N)
    if res.precision_ok:
        return FinitenessResult(Finiteness.FINITE, f"ord_p(log eps^m) = {res.v} < N = {N}", res.v, N)
    return FinitenessResult(
        Finiteness.UNDETERMINED, f"log eps^m vanishes modulo p^{N}; raise the precision", res.v, N
    )


# --------------------------------------------------------------------------
# the group p-power characters factor through


@dataclass(frozen=True)
class CharacterTargetGroup:
    p: int
    unit_part: int
    split_parts: tuple[tuple[int, int], ...]  # (l, q_l - 1)
    inert_parts: tuple[tuple[int, int], ...]  # (l, q_l + 1)
    ramified_primes: tuple[int, ...]
    group: FiniteAbelianGroup

    @property
    def order(self) -> int:
        return self.unit_part * prod(o for _, o in self.split_parts) * prod(o for _, o in self.inert_parts)

    @property
    def p_sylow_order(self) -> int:
        return count_p_characters(self.group, self.p)


def tame_primes(K: QuadField, n0: int) -> list[SplitType]:
    return [classify_prime(K, l) for l in sorted(factorint(n0))]


def character_target(K: QuadField, p: int, n0: int, N: int = DEFAULT_PRECISION) -> CharacterTargetGroup:
    """Unit-index part times F_l^x (split l | n0) times F_{l^2}^x / F_l^x (inert l | n0)."""
    if n0 < 1 or gcd(n0, p) != 1:
        raise UsageError(f"tame level n0 = {n0} must be a positive integer prime to p = {p}")
    fin = finiteness_test(K, p, N)
    if fin.status is Finiteness.INFINITE:
        raise InfiniteRegimeError(f"Cl_K(n0 Q^inf) is infinite ({fin.reason}); no finite bound exists")
    if fin.status is Finiteness.UNDETERMINED:
        raise PrecisionError(fin.reason)
    unit_part = p ** (fin.v - 1)
    split, inert, ram = [], [], []
    for st in tame_primes(K, n0):
        lq = local_quotient(K, st.l, p)
        if st.kind is Splitting.SPLIT:
            split.append((st.l, lq.order))
        elif st.kind is Splitting.INERT:
            inert.append((st.l, lq.order))
        else:
            ram.append(st.l)
    G = FiniteAbelianGroup.from_orders([unit_part] + [o for _, o in split] + [o for _, o in inert])
    return CharacterTargetGroup(p, unit_part, tuple(split), tuple(inert), tuple(ram), G)


def count_p_characters(G: FiniteAbelianGroup, p: int) -> int:
    """Number of characters of G of p-power order, i.e. the order of its p-Sylow subgroup."""
    if not G.is_finite:
        raise UsageError("infinitely many characters on an infinite group")
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return G.sylow_order(p)

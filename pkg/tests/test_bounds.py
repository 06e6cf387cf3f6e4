from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weightone.arith import CyclotomicInt, FiniteAbelianGroup, factorint, p_part, primerange, valuation
from weightone.bounds import (
    ExceptionalType,
    GeneralFieldInvariants,
    Mode,
    QuadraticRoots,
    a5_root_congruence,
    dihedral_bound_exact,
    dihedral_bound_from_invariants,
    exceptional_bound,
    extract_invariants,
    lambda_bound,
    projective_trace,
)
from weightone.classfield import InfiniteRegimeError, character_target, count_p_characters
from weightone.errors import UsageError
from weightone.iwasawa import IwasawaSeries
from weightone.quadfield import QuadField, Splitting, class_group, classify_prime, is_fundamental_discriminant

REAL = [D for D in range(5, 300) if is_fundamental_discriminant(D)]


def split_cases(limit_D=300, primes=(3, 5, 7, 11, 13, 17, 19, 23, 29, 31)):
    for D in REAL:
        if D > limit_D:
            break
        K = QuadField(D)
        for p in primes:
            if classify_prime(K, p).kind is Splitting.SPLIT:
                yield D, p


CASES = list(split_cases(120))
TAME = [1, 2, 3, 6, 10, 12, 35, 77]


class TestDihedralExact:
    def test_example(self):
        rep = dihedral_bound_exact(QuadField(5), 11, 6, 10)
        assert [v for _, v in rep.factors] == [1, 1, 3, 4]
        assert rep.M_prime == 12 and rep.M == 1 and rep.mode is Mode.EXACT

    def test_errors(self):
        with pytest.raises(UsageError, match="inert"):
            dihedral_bound_exact(QuadField(5), 3)
        with pytest.raises(InfiniteRegimeError):
            dihedral_bound_exact(QuadField(-23), 7)
        with pytest.raises(UsageError):
            dihedral_bound_exact(QuadField(5), 11, 22)

    def test_nontrivial_p_parts(self):
        # D = 229 has h = 3 and 19 splits, so M' = 3 * 1 * 18
        rep = dihedral_bound_exact(QuadField(229), 3, 19)
        assert (rep.M_prime, rep.M) == (54, 27)
        rep = dihedral_bound_exact(QuadField(8), 31, 1)
        assert rep.M == 31

    def test_report_dict(self):
        d = dihedral_bound_exact(QuadField(5), 11, 6).as_dict()
        assert list(d) == ["mode", "p", "factors", "M_prime", "ord_p_M_prime", "M"]
        assert d["factors"][0] == {"label": "h", "value": 1} and d["ord_p_M_prime"] == 0

    @pytest.mark.parametrize("D, p", CASES)
    def test_M_is_the_p_part_of_M_prime(self, D, p):
        for n0 in TAME:
            if gcd(n0, p) != 1:
                continue
            rep = dihedral_bound_exact(QuadField(D), p, n0)
            prod = 1
            for _, v in rep.factors:
                prod *= v
            assert rep.M_prime == prod and rep.M == p_part(prod, p)

    @pytest.mark.parametrize("D, p", CASES)
    def test_two_paths_agree(self, D, p):
        K = QuadField(D)
        for n0 in TAME:
            if gcd(n0, p) != 1:
                continue
            rep = dihedral_bound_exact(K, p, n0)
            target = character_target(K, p, n0)
            assert rep.M == count_p_characters(target.group, p) * p_part(class_group(K).h, p)
            assert rep.M == count_p_characters(
                FiniteAbelianGroup.from_orders(list(target.group.invariants) + [class_group(K).h]), p
            )

    @pytest.mark.parametrize("D, p", CASES)
    def test_modes_agree(self, D, p):
        K = QuadField(D)
        for n0 in TAME:
            if gcd(n0, p) != 1:
                continue
            inv = extract_invariants(K, p, n0)
            exact, general = dihedral_bound_exact(K, p, n0), dihedral_bound_from_invariants(inv, p)
            assert exact.M_prime == general.M_prime and exact.M == general.M
            assert general.mode is Mode.FROM_INVARIANTS
            assert all("user-supplied" in label for label, _ in general.factors)


class TestInvariants:
    @pytest.mark.parametrize(
        "kwargs, p, M_prime, M",
        [
            (dict(class_number_K=1, unit_index_p_exponent=0), 7, 1, 1),
            (dict(class_number_K=3, unit_index_p_exponent=1, split_tame=(7,), inert_tame=(2,)), 3, 162, 81),
            (dict(class_number_K=1, unit_index_p_exponent=0, split_tame=(11,)), 5, 10, 5),
        ],
    )
    def test_examples(self, kwargs, p, M_prime, M):
        rep = dihedral_bound_from_invariants(GeneralFieldInvariants(d=2, t=1, **kwargs), p)
        assert (rep.M_prime, rep.M) == (M_prime, M)
        assert factorint(rep.M_prime).get(p, 0) == valuation(M, p)

    def test_validation(self):
        with pytest.raises(UsageError):
            GeneralFieldInvariants(d=1, t=2, class_number_K=1, unit_index_p_exponent=0)
        with pytest.raises(UsageError):
            GeneralFieldInvariants(d=1, t=1, class_number_K=1, unit_index_p_exponent=0, split_tame=(6,))
        inv = GeneralFieldInvariants(d=1, t=1, class_number_K=1, unit_index_p_exponent=0, inert_tame=(9,))
        with pytest.raises(UsageError):
            dihedral_bound_from_invariants(inv, 3)

    def test_parse_round_trip(self, tmp_path):
        inv = GeneralFieldInvariants(3, 2, 4, 1, (7, 13), (4,), 1)
        path = tmp_path / "inv.txt"
        path.write_text(inv.to_text(5))
        assert GeneralFieldInvariants.read(path) == (inv, 5)
        text = "# comment\nd = 2\nt = 1\nclass_number_K = 3  # h\nunit_index_p_exponent = 0\nsplit_tame = 7, 13\n"
        parsed, p = GeneralFieldInvariants.parse(text)
        assert p is None and parsed.split_tame == (7, 13) and parsed.inert_tame == ()

    @pytest.mark.parametrize("text", ["d = 2\n", "d = 2\nt = 1\nclass_number_K = x\nunit_index_p_exponent = 0\n", "bogus\n", "d=1\nt=1\nclass_number_K=1\nunit_index_p_exponent=0\ncolour=3\n"])
    def test_parse_errors(self, text):
        with pytest.raises(UsageError):
            GeneralFieldInvariants.parse(text)


class TestExceptional:
    @pytest.mark.parametrize(
        "p, kind, hF, t, expected",
        [(7, "S4", 1, 3, (1, 1, 1)), (5, "A5", 1, 1, (2, 2, 4)), (3, "S4", 3, 2, (1, 12, 12)), (5, "A4", 1, 1, (1, 2, 2))],
    )
    def test_examples(self, p, kind, hF, t, expected):
        assert tuple(exceptional_bound(p, kind, hF, t)) == expected

    def test_errors(self):
        with pytest.raises(UsageError):
            exceptional_bound(2, "A4", 1, 1)
        with pytest.raises(UsageError):
            exceptional_bound(7, "D4", 1, 1)
        with pytest.raises(UsageError):
            exceptional_bound(7, "A4", 0, 1)

    @given(st.sampled_from(list(primerange(7, 200))), st.sampled_from(list(ExceptionalType)), st.integers(1, 10**6), st.integers(1, 8))
    def test_large_p(self, p, kind, hF, t):
        a, b, bound = exceptional_bound(p, kind, hF, t)
        assert a == 1 and bound == b == p ** valuation(hF, p)
        if hF % p:
            assert bound == 1

    @given(st.sampled_from([3, 5]), st.sampled_from(list(ExceptionalType)), st.integers(1, 10**6), st.integers(1, 8))
    def test_small_p(self, p, kind, hF, t):
        a, b, bound = exceptional_bound(p, kind, hF, t)
        assert b == 2**t * p ** valuation(hF, p)
        assert a == (2 if (p, kind) == (5, ExceptionalType.A5) else 1)
        assert bound == a * b


def _trace_oracle(n):
    """zeta + 2 + zeta^-1 for a primitive n-th root: Tr^2/det of diag(zeta, 1)."""
    z = CyclotomicInt.zeta(n)
    return z + 2 + z ** (n - 1)


class TestTable1:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_integer_traces(self, n):
        t = _trace_oracle(n)
        assert t.is_integer() and int(t) == projective_trace(n)

    def test_order_five(self):
        roots = projective_trace(5)
        assert isinstance(roots, QuadraticRoots) and str(roots) == "roots of X^2 - 3X + 1"
        t = _trace_oracle(5)
        assert (t * t + t * roots.c1 + roots.c0).is_zero()
        assert projective_trace(1) == 4 and projective_trace(2) == 0

    @pytest.mark.parametrize("n", [0, 6, -1])
    def test_out_of_range(self, n):
        with pytest.raises(UsageError):
            projective_trace(n)

    @pytest.mark.parametrize("p", list(primerange(7, 200)))
    def test_distinct_mod_p(self, p):
        assert len({projective_trace(n) % p for n in range(1, 5)}) == 4

    @pytest.mark.parametrize("p", list(primerange(3, 300)))
    def test_a5_root_congruence(self, p):
        roots = [x for x in range(p) if (x * x - 3 * x + 1) % p == 0]
        # congruent roots mod p means a double root
        assert a5_root_congruence(p) == (len(roots) == 1)
        assert a5_root_congruence(p) == (p == 5)


def test_lambda_bound():
    lb = lambda_bound(IwasawaSeries(3, 6, (3, 3, 1)))
    assert (lb.mu, lb.lam, lb.bound) == (0, 2, 2)
    assert "1 + p" in lb.convention

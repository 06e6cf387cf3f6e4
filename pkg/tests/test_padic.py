import pytest
from hypothesis import given
from hypothesis import strategies as st

from weightone.arith import primerange
from weightone.errors import UsageError
from weightone.oracles import oracle_unit_index
from weightone.padic import (
    PadicInt,
    hensel_quadratic_root,
    padic_exp,
    padic_log,
    teichmuller,
    unit_index,
)
from weightone.quadfield import QuadField, Splitting, classify_prime

PRIMES = list(primerange(3, 40))


@st.composite
def principal_units(draw, p=None, N=None):
    p = p or draw(st.sampled_from(PRIMES))
    N = N or draw(st.integers(1, 8))
    x = draw(st.integers(0, p ** (N - 1) - 1)) if N > 1 else 0
    return PadicInt(p, N, 1 + p * x)


class TestPadicInt:
    def test_canonical_residue_and_valuation(self):
        a = PadicInt(7, 3, -1)
        assert a.residue == 342
        assert PadicInt(7, 3, 0).valuation == 3
        assert PadicInt(7, 3, 98).valuation == 2

    def test_arithmetic(self):
        a, b = PadicInt(5, 4, 7), PadicInt(5, 4, 3)
        assert (a * b).residue == 21 and (a - b).residue == 4 and (a * a.inverse()).residue == 1
        with pytest.raises(UsageError):
            PadicInt(5, 4, 10).inverse()


class TestLogExp:
    def test_examples(self):
        assert padic_log(PadicInt(7, 2, 8)).residue == 7
        assert padic_log(PadicInt(7, 5, 1)).residue == 0
        assert padic_log(padic_exp(PadicInt(11, 6, 11))).residue == 11
        assert padic_exp(PadicInt(5, 4, 0)).residue == 1
        assert padic_exp(PadicInt(5, 4, 5)) * padic_exp(PadicInt(5, 4, 5)) == padic_exp(PadicInt(5, 4, 10))
        for k in range(1, 7):
            assert padic_exp(padic_log(PadicInt(7, 3, 1 + 7 * k))).residue == 1 + 7 * k

    def test_errors(self):
        with pytest.raises(UsageError):
            padic_log(PadicInt(7, 3, 2))
        with pytest.raises(UsageError):
            padic_exp(PadicInt(7, 3, 1))
        with pytest.raises(UsageError):
            padic_log(PadicInt(2, 3, 3))

    def test_log_matches_rational_series_truncation(self):
        # log(1 + p) summed with exact fractions far past the needed length
        from fractions import Fraction

        p, N = 5, 6
        x = Fraction(p)
        total = sum((-1) ** (n + 1) * x**n / n for n in range(1, 60))
        num, den = total.numerator, total.denominator
        assert padic_log(PadicInt(p, N, 1 + p)).residue == num * pow(den, -1, p**N) % p**N

    @given(st.data())
    def test_log_is_a_homomorphism(self, data):
        p = data.draw(st.sampled_from(PRIMES))
        N = data.draw(st.integers(1, 8))
        u = data.draw(principal_units(p, N))
        v = data.draw(principal_units(p, N))
        assert padic_log(u * v) == padic_log(u) + padic_log(v)

    @given(principal_units())
    def test_exp_of_log(self, u):
        assert padic_exp(padic_log(u)) == u

    @given(st.sampled_from(PRIMES), st.integers(1, 8), st.integers(0, 10**9))
    def test_log_of_exp(self, p, N, k):
        x = PadicInt(p, N, p * k)
        assert padic_log(padic_exp(x)) == x


class TestTeichmuller:
    def test_examples(self):
        assert teichmuller(1, 7, 4).residue == 1
        w = teichmuller(2, 7, 2)
        assert w.residue == 30 and pow(30, 3, 49) == 1

    @pytest.mark.parametrize("p", PRIMES)
    def test_roots_of_unity(self, p):
        for a in range(1, p):
            w = teichmuller(a, p, 6)
            assert (w ** (p - 1)).residue == 1 and w.residue % p == a

    @given(st.sampled_from(PRIMES), st.integers(1, 10**6), st.integers(1, 10**6), st.integers(1, 9))
    def test_multiplicative(self, p, a, b, N):
        if a % p == 0 or b % p == 0:
            return
        assert teichmuller(a, p, N) * teichmuller(b, p, N) == teichmuller(a * b % p, p, N)

    def test_rejects_multiple_of_p(self):
        with pytest.raises(UsageError):
            teichmuller(14, 7, 3)


class TestHensel:
    def test_examples(self):
        assert hensel_quadratic_root(1, -1, 11, 2).residue == 37
        assert (37 * 37 - 37 - 1) % 121 == 0
        with pytest.raises(UsageError):
            hensel_quadratic_root(2, 1, 5, 3)
        assert hensel_quadratic_root(0, -1, 7, 3).residue == 1

    def test_inert_has_no_root(self):
        with pytest.raises(UsageError):
            hensel_quadratic_root(0, -2, 5, 3)

    @given(st.sampled_from(PRIMES), st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 12))
    def test_root_property(self, p, tr, nm, N):
        try:
            r = hensel_quadratic_root(tr, nm, p, N).residue
        except UsageError:
            return
        assert (r * r - tr * r + nm) % p**N == 0


def _split_primes(D, bound=50):
    K = QuadField(D)
    return [p for p in primerange(3, bound) if classify_prime(K, p).kind is Splitting.SPLIT]


class TestUnitIndex:
    @pytest.mark.parametrize("p", [11, 19])
    def test_examples(self, p):
        res = unit_index(QuadField(5), p, 10)
        assert (res.v, res.index, res.index_exponent, res.precision_ok) == (1, 1, 0, True)

    def test_errors(self):
        with pytest.raises(UsageError, match="ramified"):
            unit_index(QuadField(5), 5)
        with pytest.raises(UsageError, match="inert"):
            unit_index(QuadField(5), 3)
        with pytest.raises(UsageError):
            unit_index(QuadField(-23), 3)

    def test_precision_flag(self):
        res = unit_index(QuadField(5), 11, 1)
        assert not res.precision_ok and res.v == 1

    @pytest.mark.parametrize("D", [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44])
    def test_matches_finite_quotient_oracle(self, D):
        for p in _split_primes(D, 40):
            for N in (3, 6):
                assert unit_index(QuadField(D), p, N).index == oracle_unit_index(D, p, N), (D, p, N)

    @pytest.mark.parametrize("D", [5, 13, 17, 21, 29, 40])
    def test_branch_independence(self, D):
        for p in _split_primes(D):
            a = unit_index(QuadField(D), p, 8, "P")
            b = unit_index(QuadField(D), p, 8, "P'")
            assert a.v == b.v

    @pytest.mark.parametrize(
        "D, p, index",
        [(8, 31, 31), (37, 7, 7), (69, 5, 5), (69, 17, 289), (85, 3, 3), (89, 5, 25), (92, 7, 7), (156, 5, 5)],
    )
    def test_nontrivial_index(self, D, p, index):
        # eps^m = 1 mod p^2, e.g. (1 + sqrt 2)^15 = 1 mod 31^2
        assert unit_index(QuadField(D), p, 6).index == index == oracle_unit_index(D, p, 6)

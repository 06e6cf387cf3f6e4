from math import comb

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from weightone.arith import CyclotomicInt
from weightone.errors import PrecisionError, UsageError
from weightone.iwasawa import (
    IwasawaSeries,
    SpecializationPoint,
    specialize,
    weierstrass_invariants,
    weight_one_root_bound,
    weight_one_zero_count,
)

PRIMES = [3, 5, 7, 11, 13]


def series(p, N, *coeffs, M=None):
    coeffs = list(coeffs) + [0] * ((M or len(coeffs)) - len(coeffs))
    return IwasawaSeries(p, N, tuple(coeffs))


@st.composite
def random_series(draw, p=None, N=None, M=None, deg=None):
    p = p or draw(st.sampled_from(PRIMES))
    N = N or draw(st.integers(2, 6))
    deg = deg if deg is not None else draw(st.integers(0, 4))
    M = M or deg + 1
    coeffs = draw(st.lists(st.integers(0, p**N - 1), min_size=deg + 1, max_size=deg + 1))
    return series(p, N, *coeffs, M=M)


class TestInvariants:
    def test_examples(self):
        assert weierstrass_invariants(series(7, 5, 7, 7)) == (1, 0)
        assert weierstrass_invariants(series(7, 5, 7, 7, 1)) == (0, 2)
        p, u = 7, 8
        # (X - p)(X - (u - 1)) = X^2 - (p + u - 1) X + p (u - 1)
        assert weierstrass_invariants(series(p, 5, p * (u - 1), -(p + u - 1), 1)) == (0, 2)

    def test_errors(self):
        with pytest.raises(UsageError):
            weierstrass_invariants(series(7, 5, 1))
        with pytest.raises(PrecisionError):
            weierstrass_invariants(series(7, 2, 49, 98, 0))
        with pytest.raises(UsageError):
            IwasawaSeries(2, 3, (1, 1))
        with pytest.raises(UsageError):
            IwasawaSeries(7, 0, (1, 1))

    @given(st.data())
    def test_mu_lambda_additive(self, data):
        p = data.draw(st.sampled_from(PRIMES))
        N, M = 12, 12
        S = data.draw(random_series(p, N, M, deg=data.draw(st.integers(1, 4))))
        T = data.draw(random_series(p, N, M, deg=data.draw(st.integers(1, 4))))
        try:
            (ms, ls), (mt, lt) = weierstrass_invariants(S), weierstrass_invariants(T)
        except PrecisionError:
            return
        assume(ms + mt < N)
        assert weierstrass_invariants(S * T) == (ms + mt, ls + lt)


class TestSpecialize:
    def test_examples(self):
        assert specialize(series(7, 4, 0, 1), SpecializationPoint(7, 2)) == CyclotomicInt.from_int(1, 7, 7**4)
        assert specialize(series(5, 4, 1, 1), SpecializationPoint(5, 3)) == CyclotomicInt.from_int(1, 36, 5**4)
        got = specialize(series(7, 4, 0, 1), SpecializationPoint(7, 1, 7))
        assert got == CyclotomicInt.zeta(7, 1, 7**4) - 1

    def test_point_errors(self):
        with pytest.raises(UsageError):
            SpecializationPoint(7, 0)
        with pytest.raises(UsageError):
            SpecializationPoint(7, 1, 14)
        with pytest.raises(UsageError):
            specialize(series(5, 3, 1, 1), SpecializationPoint(7, 2))

    def test_exact_agrees_with_reduction(self):
        T = series(3, 4, 5, -7, 11, 2)
        pt = SpecializationPoint(3, 2, 9)
        exact = specialize(T, pt, exact=True)
        assert CyclotomicInt(9, exact.coeffs, 3**4) == specialize(T, pt)

    @given(st.data())
    def test_ring_homomorphism(self, data):
        p = data.draw(st.sampled_from([3, 5]))
        N, M = 5, 9
        S = data.draw(random_series(p, N, M, deg=data.draw(st.integers(0, 4))))
        T = data.draw(random_series(p, N, M, deg=data.draw(st.integers(0, 4))))
        k = data.draw(st.integers(1, 4))
        m = data.draw(st.sampled_from([1, p]))
        pt = SpecializationPoint(p, k, m)
        assert specialize(S * T, pt) == specialize(S, pt) * specialize(T, pt)


class TestZeroCount:
    def test_examples(self):
        T = series(3, 6, 3, 3, 1)  # Phi_3(1 + X)
        assert weight_one_root_bound(T) == 2 and weight_one_zero_count(T) == 2
        X = series(3, 6, 0, 1)
        assert weight_one_root_bound(X) == 1 and weight_one_zero_count(X) == 1
        assert weight_one_zero_count(series(3, 6, 2, 3, 9)) == 0

    def test_product_of_cyclotomic_factors(self):
        # X * Phi_3(1 + X) * Phi_9(1 + X) vanishes at all 1 + 2 + 6 points of order dividing 9
        phi9 = [0] * 7
        for i, c in enumerate([1, 0, 0, 1, 0, 0, 1]):  # Phi_9(Y) = Y^6 + Y^3 + 1, Y = 1 + X
            for j in range(i + 1):
                phi9[j] += c * comb(i, j)
        T = series(3, 8, 0, 1, M=10) * series(3, 8, 3, 3, 1, M=10) * series(3, 8, *phi9, M=10)
        assert weight_one_zero_count(T) == 9 == weight_one_root_bound(T)

    def test_low_precision_is_inconclusive(self):
        # X^6 mod 3 vanishes mod 3 at all nine points of order dividing 9, more than lambda = 6
        with pytest.raises(PrecisionError):
            weight_one_zero_count(series(3, 1, 0, 0, 0, 0, 0, 0, 1))
        assert weight_one_zero_count(series(3, 4, 0, 0, 0, 0, 0, 0, 1)) == 1

    def test_factor_survives_coefficient_reduction(self):
        # the product's coefficients are reduced mod 3^6; it still vanishes there at zeta_3 - 1
        T = series(3, 6, 3, 3, 1, M=4) * series(3, 6, 500, 1, M=4)
        assert weight_one_zero_count(T) == 2

    @given(random_series(p=3, N=6, M=6, deg=5))
    def test_count_never_exceeds_lambda(self, T):
        try:
            lam = weight_one_root_bound(T)
            count = weight_one_zero_count(T)
        except PrecisionError:
            return
        assert count <= lam

    @given(random_series(deg=4), st.data())
    def test_unit_constant_term_has_no_zeros(self, T, data):
        a0 = data.draw(st.integers(1, T.p - 1))
        U = IwasawaSeries(T.p, T.N, (a0 + T.p * T.coeffs[0],) + T.coeffs[1:] + (0,))
        assert weight_one_root_bound(U) == 0
        assert weight_one_zero_count(U, orders=(1, T.p)) == 0


class TestFileFormat:
    def test_round_trip(self, tmp_path):
        T = series(5, 3, 1, 2, 3, 124)
        path = tmp_path / "t.txt"
        path.write_text(T.to_text())
        assert IwasawaSeries.read(path) == T
        assert T.to_text().splitlines()[0] == "5 3 4"

    def test_negative_coefficients_are_reduced(self):
        assert IwasawaSeries.parse("5 2 2\n-1\n1\n").coeffs == (24, 1)

    @pytest.mark.parametrize("text", ["", "5 2", "5 2 3\n1\n2\n", "5 2 2\n1\nx\n"])
    def test_malformed(self, text):
        with pytest.raises(UsageError):
            IwasawaSeries.parse(text)

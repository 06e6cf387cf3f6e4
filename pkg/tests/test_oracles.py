import ast
from pathlib import Path

import pytest

import weightone.oracles as oracles
from weightone.arith import FiniteAbelianGroup
from weightone.errors import ResourceError, UsageError
from weightone.oracles import (
    OracleBudget,
    brute_force_fundamental_unit,
    brute_force_kronecker,
    brute_force_reduced_forms,
    eta_product_coefficients,
    oracle_local_quotient,
    oracle_ray_class,
    oracle_unit_index,
)


def test_budget_validation():
    assert OracleBudget() == OracleBudget(200, 50, 12)
    for bad in (dict(max_norm=0), dict(max_disc=-1), dict(max_precision=0)):
        with pytest.raises(UsageError):
            OracleBudget(**bad)


def test_independent_of_main_path():
    tree = ast.parse(Path(oracles.__file__).read_text())
    imported = {n.module for n in ast.walk(tree) if isinstance(n, ast.ImportFrom) and n.level}
    assert imported <= {"arith", "errors"}


class TestRayClassOracle:
    def test_examples(self):
        assert oracle_ray_class(-4) == FiniteAbelianGroup.trivial()
        assert oracle_ray_class(-23) == FiniteAbelianGroup.from_orders([3])
        # (Z[i]/5)^x / <i> has order 16 / 4
        assert oracle_ray_class(-4, 5).order == 4
        assert oracle_ray_class(12) == FiniteAbelianGroup.from_orders([2])

    def test_budget(self):
        with pytest.raises(ResourceError):
            oracle_ray_class(-71)
        with pytest.raises(UsageError):
            oracle_ray_class(5, 1, 1, 3)


class TestOtherOracles:
    @pytest.mark.parametrize("p", [11, 19, 29])
    def test_unit_index_examples(self, p):
        assert oracle_unit_index(5, p, 10) == 1

    def test_unit_index_nontrivial(self):
        assert oracle_unit_index(8, 31, 4) == 31

    @pytest.mark.parametrize("D, l, order", [(5, 11, 10), (5, 3, 4), (-4, 2, 1), (-23, 23, 1), (13, 2, 3)])
    def test_local_quotient(self, D, l, order):
        assert oracle_local_quotient(D, l) == order

    def test_fundamental_unit(self):
        assert brute_force_fundamental_unit(5) == (1, 1)
        assert brute_force_fundamental_unit(12) == (4, 1)
        with pytest.raises(UsageError):
            brute_force_fundamental_unit(-3)

    def test_eta_product(self):
        # q prod (1 - q^n)(1 - q^23n) = q - q^2 - q^3 + q^6 + q^8 - q^13 - q^16 + ...
        a = eta_product_coefficients(16)
        assert [m for m in range(1, 17) if a[m - 1]] == [1, 2, 3, 6, 8, 13, 16]
        assert [a[m - 1] for m in (1, 2, 3, 6, 8, 13, 16)] == [1, -1, -1, 1, 1, -1, -1]

    def test_reduced_forms_and_kronecker(self):
        assert sorted(brute_force_reduced_forms(-23)) == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
        assert len(brute_force_reduced_forms(-4)) == 1
        assert brute_force_kronecker(-23, 2) == 1 and brute_force_kronecker(5, 2) == -1

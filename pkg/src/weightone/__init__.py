"""Explicit bounds on classical weight-one specializations of Hida families.

Quadratic fields and their class groups, p-adic unit indices, narrow ray
class groups, the dihedral and exceptional bounds, Iwasawa invariants and
dihedral weight-one forms.
"""

from .arith import CyclotomicInt, FiniteAbelianGroup, FiniteField, kronecker_symbol, smith_normal_form
from .bounds import (
    BoundReport,
    ExceptionalType,
    GeneralFieldInvariants,
    a5_root_congruence,
    dihedral_bound_exact,
    dihedral_bound_from_invariants,
    exceptional_bound,
    extract_invariants,
    lambda_bound,
    projective_trace,
)
from .classfield import (
    Modulus,
    character_target,
    count_p_characters,
    finiteness_test,
    local_quotient,
    ray_class_group,
    ray_class_order,
)
from .dihedral import ClassCharacter, character_by_index, conductor_of_induction, induce_coefficients, p_stabilization_data
from .errors import PrecisionError, ResourceError, UsageError, VerificationError, WeightOneError
from .iwasawa import IwasawaSeries, SpecializationPoint, specialize, weierstrass_invariants, weight_one_root_bound
from .iwasawa import weight_one_zero_count
from .padic import PadicInt, hensel_quadratic_root, padic_exp, padic_log, teichmuller, unit_index
from .quadfield import QuadField, class_group, classify_prime, fundamental_unit, ideals_of_norm

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ClassCharacter",
    "CyclotomicInt",
    "ExceptionalType",
    "FiniteAbelianGroup",
    "FiniteField",
    "GeneralFieldInvariants",
    "IwasawaSeries",
    "Modulus",
    "PadicInt",
    "PrecisionError",
    "QuadField",
    "ResourceError",
    "SpecializationPoint",
    "UsageError",
    "VerificationError",
    "WeightOneError",
    "a5_root_congruence",
    "character_by_index",
    "character_target",
    "class_group",
    "classify_prime",
    "conductor_of_induction",
    "count_p_characters",
    "dihedral_bound_exact",
    "dihedral_bound_from_invariants",
    "exceptional_bound",
    "extract_invariants",
    "finiteness_test",
    "fundamental_unit",
    "hensel_quadratic_root",
    "ideals_of_norm",
    "induce_coefficients",
    "kronecker_symbol",
    "lambda_bound",
    "local_quotient",
    "p_stabilization_data",
    "padic_exp",
    "padic_log",
    "projective_trace",
    "ray_class_group",
    "ray_class_order",
    "smith_normal_form",
    "specialize",
    "teichmuller",
    "unit_index",
    "weierstrass_invariants",
    "weight_one_root_bound",
    "weight_one_zero_count",
]

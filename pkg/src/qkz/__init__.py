"""Exact symbolic machinery for the affine Hecke algebra action on Laurent
polynomials, non-symmetric Macdonald polynomials, and qKZ families, with a
verification CLI.
"""

from .combinat import (
    CompositionData,
    Permutation,
    VertexData,
    analyze,
    build_special_mu,
    is_admissible,
    lower_set,
    prec_compare,
    spin_indices,
    vertex_data,
)
from .errors import QkzError
from .family import (
    KappaData,
    QkzFamily,
    TensorFunction,
    build_family,
    kappa_data,
    rbar_apply,
    verify_family,
    verify_qkz_step,
)
from .hecke import HeckeWord, apply_word, demazure, omega, q_dunkl, relation_suite
from .laurent import LaurentPoly
from .macdonald import (
    MacdonaldPoly,
    compute_e,
    eigenvalues,
    si_step,
    specialize_e,
    t_action_case_report,
)
from .scalars import GENERIC, Monomial, ParamScalar, SpecField, SpecScalar, specialize
from .vertex import check_vertex_equality, vertex_extremal, wheel_check

__version__ = "0.1.0"

__all__ = [
    "CompositionData",
    "GENERIC",
    "HeckeWord",
    "KappaData",
    "LaurentPoly",
    "MacdonaldPoly",
    "Monomial",
    "ParamScalar",
    "Permutation",
    "QkzError",
    "QkzFamily",
    "SpecField",
    "SpecScalar",
    "TensorFunction",
    "VertexData",
    "analyze",
    "apply_word",
    "build_family",
    "build_special_mu",
    "check_vertex_equality",
    "compute_e",
    "demazure",
    "eigenvalues",
    "is_admissible",
    "kappa_data",
    "lower_set",
    "omega",
    "prec_compare",
    "q_dunkl",
    "rbar_apply",
    "relation_suite",
    "si_step",
    "specialize",
    "specialize_e",
    "spin_indices",
    "verify_family",
    "verify_qkz_step",
    "vertex_data",
    "vertex_extremal",
    "wheel_check",
]

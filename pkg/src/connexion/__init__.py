"""Exact arithmetic for flat line bundles on punctured lines and affine elliptic curves.

A flat line bundle is represented by a pair ``(D, w)``: a divisor D on X and a
rational 1-form w with simple poles and residue divisor D.  Pairs differing by
``(div f, dlog f)`` are equal.
"""
from .connections import ConnectionClass, compare, embed_regular, equals, gauge, make_class, project, tensor
from .curve import Curve, Derivation, Function, Point, Puncture, distinguished_derivation, make_curve, units
from .differentials import (
    Differential,
    canonical_form,
    dlog,
    is_regular_on_X,
    pairing,
    res_map,
    residue,
    total_residue_completion,
)
from .divisors import (
    CompletionDivisor,
    Divisor,
    PrincipalityCertificate,
    divisor_of,
    ell_add,
    function_with_divisor,
    is_principal,
)
from .dmodule import DiffOperator, op_add, op_compose, phi, preserves, verify_connection_operator
from .errors import ConnexionError, DomainError, InputError
from .ideals import (
    BezoutSystem,
    FractionalIdeal,
    bezout,
    connection_form,
    ideal_inverse,
    ideal_mul,
    ideal_of_divisor,
    membership,
)
from .local import local_expansion, valuation
from .periods import (
    holomorphic_periods,
    normalize_imaginary,
    polar_decompose,
    third_kind_periods,
    unit_character,
)
from .splitting import build_splitting, extend_divisor, relation_lattice, split, third_kind_basis
from .textio import parse_divisor, parse_form, parse_function, parse_operator, parse_point

__version__ = "0.1.0"

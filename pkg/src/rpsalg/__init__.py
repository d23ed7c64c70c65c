"""Exact computations in the rock-paper-scissors algebra: fields, the
algebra and its subalgebras, commutative non-associative polynomials, image
classification and polynomial identities."""

from .algebra import (
    AlgebraElement,
    AlgebraMap,
    MonadAlgebra,
    algebra_by_name,
    good_basis,
    m0_subalgebra,
    mtilde_subalgebra,
    phi,
    psi_m0,
    psi_semilinear,
    rps_algebra,
    sc,
    trace,
    verify_automorphism,
)
from .classify import basis_span, classify_image, estimate_dimension
from .field import FieldElement, OmegaExtension, PrimeField, Rationals, omega_of, parse_field
from .kernel import BACKEND
from .pi import find_multilinear_pis, is_pi, pi_existence_threshold, random_pi_check
from .poly import Polynomial, count_formula, enumerate_multilinear_monomials, evaluate, parse, substitute

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "AlgebraMap", "MonadAlgebra", "algebra_by_name", "good_basis", "m0_subalgebra",
    "mtilde_subalgebra", "phi", "psi_m0", "psi_semilinear", "rps_algebra", "sc", "trace",
    "verify_automorphism", "basis_span", "classify_image", "estimate_dimension", "FieldElement",
    "OmegaExtension", "PrimeField", "Rationals", "omega_of", "parse_field", "BACKEND",
    "find_multilinear_pis", "is_pi", "pi_existence_threshold", "random_pi_check", "Polynomial",
    "count_formula", "enumerate_multilinear_monomials", "evaluate", "parse", "substitute",
]

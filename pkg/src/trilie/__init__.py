"""Exact invariant bases of solvable triangular Lie algebras.

The package constructs, for the solvable Lie algebra spanned by the strictly
upper triangular matrix units together with one diagonal element
diag(gamma_1, ..., gamma_n), a complete set of functionally independent
invariants of the coadjoint action, and verifies every construction with
exact rational arithmetic.
"""

from .algebra import (GammaTuple, GammaClassification, bracket, classify,
                      gamma_equivalent, secondary_diagonal_commutes)
from .basis import (InvariantBasis, PowerProduct, basis_kind, build_basis,
                    build_case1_basis, build_case2_basis, clear_denominators,
                    minor)
from .coadjoint import (build_operators, check_invariant, count_invariants_oracle,
                        functional_independence, relative_weight)
from .enveloping import (NCPolynomial, build_operator_basis, pbw_normal_form,
                         symmetrize_pair, verify_constant_summand)
from .lifted import (LiftedFrame, lemma2_identities, lifted_invariants,
                     verify_conjugation_identity, verify_normalization_solution)
from .poly import ExpScalar, Polynomial, RationalFunction, determinant

__version__ = "0.1.0"

__all__ = [
    "ExpScalar", "GammaClassification", "GammaTuple", "InvariantBasis",
    "LiftedFrame", "NCPolynomial", "Polynomial", "PowerProduct",
    "RationalFunction", "basis_kind", "bracket", "build_basis",
    "build_case1_basis", "build_case2_basis", "build_operator_basis",
    "build_operators", "check_invariant", "classify", "clear_denominators",
    "count_invariants_oracle", "determinant", "functional_independence",
    "gamma_equivalent", "lemma2_identities", "lifted_invariants", "minor",
    "pbw_normal_form", "relative_weight", "secondary_diagonal_commutes",
    "symmetrize_pair", "verify_conjugation_identity",
    "verify_constant_summand", "verify_normalization_solution",
]

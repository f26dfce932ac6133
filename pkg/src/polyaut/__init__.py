"""Exact computations with polynomial automorphisms of affine space.

The submodules build on each other in this order: ``polycore`` (sparse
rational polynomials), ``automorphism`` (maps, Jacobians, inversion),
``vectorfield`` (derivations, local nilpotency, exponentials), ``adjoint``
(pushforward of fields and recovery of a map from it), ``torus`` (weights of
root subgroups) and ``symcurve`` (symmetric fibers and orbit punctures).
"""

from .adjoint import LieAutData, ad, gradient_integrate, reconstruct, theta_matrix
from .automorphism import (
    Automorphism,
    PolyMap,
    compose,
    invert,
    is_saut,
    jac,
    jacobian_det,
    jacobian_matrix,
    make_affine,
    make_elementary,
    make_translation,
    parse_map,
)
from .errors import ContractError, DomainError, ParseError, PolyautError
from .polycore import Polynomial, parse_poly, partial_derivative, substitute
from .vectorfield import (
    LNDStatus,
    VectorField,
    apply,
    bracket,
    divergence,
    exp,
    is_locally_nilpotent,
    modify,
    parse_field,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "ContractError", "DomainError", "LNDStatus", "LieAutData",
    "ParseError", "PolyMap", "PolyautError", "Polynomial", "VectorField",
    "ad", "apply", "bracket", "compose", "divergence", "exp", "gradient_integrate",
    "invert", "is_locally_nilpotent", "is_saut", "jac", "jacobian_det",
    "jacobian_matrix", "make_affine", "make_elementary", "make_translation",
    "modify", "parse_field", "parse_map", "parse_poly", "partial_derivative",
    "reconstruct", "substitute", "theta_matrix",
]

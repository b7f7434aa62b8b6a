"""Finite categories, nerves, Segal checks, adjunctions and small algebraic lemmas."""
from .adjunction import (
    AdjunctionDatum,
    Functor,
    check_adjunction_datum,
    hom_bijection_check,
    triangle_identity_check,
)
from .category import FinCategory, find_isomorphism, is_isomorphic, validate_category
from .lemmas import (
    NotAMonoid,
    NotInterchanging,
    NotUnital,
    eckmann_hilton_check,
    monoid_onesided_inverse_check,
)
from .simplicial import (
    SegalFailure,
    TruncatedSimplicialSet,
    category_from_segal,
    check_simplicial_identities,
    nerve,
    segal_bijection_check,
)

__all__ = [
    "AdjunctionDatum",
    "FinCategory",
    "Functor",
    "NotAMonoid",
    "NotInterchanging",
    "NotUnital",
    "SegalFailure",
    "TruncatedSimplicialSet",
    "category_from_segal",
    "check_adjunction_datum",
    "check_simplicial_identities",
    "eckmann_hilton_check",
    "find_isomorphism",
    "hom_bijection_check",
    "is_isomorphic",
    "monoid_onesided_inverse_check",
    "nerve",
    "segal_bijection_check",
    "triangle_identity_check",
    "validate_category",
]

"""Isomorphism-class census for the tripling and doubling curve families over F_q."""

from .census import CensusReport, VerificationRecord, brute_census, sweep, verify
from .curve import CubicCurve, IsoWitness, ShortW, isomorphic_fq, j_invariant, point_count
from .field import FieldElem, FieldSpec, chi2, field_of_order, make_field

__all__ = [
    "CensusReport",
    "CubicCurve",
    "FieldElem",
    "FieldSpec",
    "IsoWitness",
    "ShortW",
    "VerificationRecord",
    "brute_census",
    "chi2",
    "field_of_order",
    "isomorphic_fq",
    "j_invariant",
    "make_field",
    "point_count",
    "sweep",
    "verify",
]

"""Exact decision procedures for selectivity of quadratic orders in quaternion algebras,
nonselective families of maximal orders, and the arithmetic side of isospectrality."""

from .classgroups import GBGroup, build_GB, class_group, fundamental_unit, load_fixture, narrow_class_group
from .errors import InvalidInput, MissingFixture, NonselectiveError, SearchExhausted, Unsupported
from .exact import IntPolynomial, isolate_real_roots, smith_valuations
from .extensions import QuadraticExtension, count_roots_in_field, is_square_in_field, splitting_in_quadratic
from .ideals import PrimeIdeal, factor_prime, prime_above
from .lattices import LocalLatticePair, ParameterFrame, build_parameter_frame, distance_class, type_distance
from .numberfield import FieldElement, NumberField, build_field
from .selectivity import (
    AlgebraSpec,
    QuadraticOrderSpec,
    build_nonselective_family,
    check_family_nonselective,
    compute_sB_tB,
    embeddable_characters,
    max_family_bound,
    selectivity_verdict,
    selects,
)
from .spectra import hilbert_eq_narrow, signature_profile, vigneras_certificate

__version__ = "0.1.0"

__all__ = [
    "GBGroup",
    "build_GB",
    "class_group",
    "fundamental_unit",
    "load_fixture",
    "narrow_class_group",
    "InvalidInput",
    "MissingFixture",
    "NonselectiveError",
    "SearchExhausted",
    "Unsupported",
    "IntPolynomial",
    "isolate_real_roots",
    "smith_valuations",
    "QuadraticExtension",
    "count_roots_in_field",
    "is_square_in_field",
    "splitting_in_quadratic",
    "PrimeIdeal",
    "factor_prime",
    "prime_above",
    "LocalLatticePair",
    "ParameterFrame",
    "build_parameter_frame",
    "distance_class",
    "type_distance",
    "FieldElement",
    "NumberField",
    "build_field",
    "AlgebraSpec",
    "QuadraticOrderSpec",
    "build_nonselective_family",
    "check_family_nonselective",
    "compute_sB_tB",
    "embeddable_characters",
    "max_family_bound",
    "selectivity_verdict",
    "selects",
    "hilbert_eq_narrow",
    "signature_profile",
    "vigneras_certificate",
]

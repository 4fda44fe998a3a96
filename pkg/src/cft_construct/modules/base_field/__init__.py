from .class_group import ClassGroup, QuadraticForm, class_group, reduced_forms
from .field import BaseField, FieldElement, FieldKind
from .places import (
    PlaceKind,
    PrimePlace,
    archimedean_place,
    factor_principal,
    iter_places,
    parse_place,
    place_from_generator,
    places_above,
    reduce,
    residue_field,
    valuation,
)
from .s_units import (
    SUnitBasis,
    build_S,
    find_generator,
    is_uniformiser,
    s_unit_exponents,
    s_unit_generators,
    uniformiser,
)

__all__ = [
    "BaseField",
    "FieldElement",
    "FieldKind",
    "PlaceKind",
    "PrimePlace",
    "ClassGroup",
    "QuadraticForm",
    "SUnitBasis",
    "archimedean_place",
    "build_S",
    "class_group",
    "factor_principal",
    "find_generator",
    "is_uniformiser",
    "iter_places",
    "parse_place",
    "place_from_generator",
    "places_above",
    "reduce",
    "reduced_forms",
    "residue_field",
    "s_unit_exponents",
    "s_unit_generators",
    "uniformiser",
    "valuation",
]

from .finite_field import FiniteField, Residue
from .quotient import (
    GeneratorOrdering,
    QuotientGenerator,
    dlog_mod_e,
    generates_quotient,
    is_eth_power,
    pick_generator,
)

__all__ = [
    "FiniteField",
    "Residue",
    "GeneratorOrdering",
    "QuotientGenerator",
    "dlog_mod_e",
    "generates_quotient",
    "is_eth_power",
    "pick_generator",
]

import logging
from dataclasses import dataclass
from enum import Enum

from sympy import primefactors

from cft_construct.core.exceptions import InvariantBreachError, ResidueFieldError
from cft_construct.modules.residue_arith.finite_field import FiniteField, Residue

logger = logging.getLogger(__name__)


class GeneratorOrdering(str, Enum):
    SMALLEST = "smallest"
    PRIMITIVE_ROOT = "primitive_root"


@dataclass(frozen=True)
class QuotientGenerator:
    """A residue b whose class generates F_q^x / F_q^xe (cyclic of order e)."""
    b: Residue
    e: int

    @property
    def field(self) -> FiniteField:
        return self.b.field


def _check_contract(x: Residue, e: int) -> None:
    if x.is_zero():
        raise ValueError("Residue must be nonzero")
    if e < 1 or (x.field.q - 1) % e:
        raise ResidueFieldError(f"e={e} does not divide q-1={x.field.q - 1} in {x.field}")


def is_eth_power(x: Residue, e: int) -> bool:
    """Euler's criterion: x is an e-th power iff x^((q-1)/e) = 1.

    Args:
        x: A nonzero residue
        e: A divisor of q - 1

    Returns:
        bool: True if x lies in F_q^xe

    Raises:
        ResidueFieldError: If e does not divide q - 1
    """
    _check_contract(x, e)
    return (x ** ((x.field.q - 1) // e)).is_one()


def generates_quotient(x: Residue, e: int) -> bool:
    """Check that the class of x generates F_q^x / F_q^xe.

    That holds iff x is not an l-th power for any prime l dividing e.
    """
    _check_contract(x, e)
    q = x.field.q
    return all(not (x ** ((q - 1) // ell)).is_one() for ell in primefactors(e))


def _is_primitive_root(x: Residue) -> bool:
    q = x.field.q
    return all(not (x ** ((q - 1) // ell)).is_one() for ell in x.field.multiplicative_order_factors())


def pick_generator(
    field: FiniteField,
    e: int,
    ordering: GeneratorOrdering = GeneratorOrdering.SMALLEST,
    override: Residue | None = None,
) -> QuotientGenerator:
    """Choose a generator of F_q^x / F_q^xe.

    Candidates are visited as 2, 3, 4, ... in degree 1 and lexicographically in
    (y, x) in degree 2. An explicitly supplied override is validated and used.

    Args:
        field: The residue field
        e: A divisor of q - 1
        ordering: SMALLEST returns the first candidate generating the quotient,
            PRIMITIVE_ROOT the first primitive root
        override: A residue to use instead of searching

    Returns:
        QuotientGenerator: The chosen generator

    Raises:
        ValueError: If the override does not generate the quotient
    """
    if (field.q - 1) % e:
        raise ResidueFieldError(f"e={e} does not divide q-1={field.q - 1} in {field}")

    if override is not None:
        if override.field != field or override.is_zero() or not generates_quotient(override, e):
            raise ValueError(f"{override} does not generate {field}^x / {field}^x{e}")
        return QuotientGenerator(override, e)

    if e == 1:
        return QuotientGenerator(field.one(), e)

    accept = _is_primitive_root if ordering == GeneratorOrdering.PRIMITIVE_ROOT else (
        lambda x: generates_quotient(x, e)
    )
    for candidate in field.elements():
        if candidate.is_one():
            continue
        if accept(candidate):
            logger.debug(f"Picked generator {candidate} of {field} modulo {e}-th powers")
            return QuotientGenerator(candidate, e)

    # F_q^x is cyclic, so the loop always returns
    raise InvariantBreachError(f"No generator found in {field}")


def dlog_mod_e(x: Residue, generator: QuotientGenerator, e: int | None = None) -> int:
    """Discrete logarithm of x modulo e-th powers.

    Both x and b are raised to (q-1)/e, which lands in the cyclic subgroup of
    order e, and the exponent is matched there.

    Args:
        x: A nonzero residue
        generator: A valid quotient generator b
        e: The modulus (defaults to the generator's e)

    Returns:
        int: The unique l in [0, e) with x = b^l modulo e-th powers

    Raises:
        InvariantBreachError: If b fails to generate the quotient
    """
    e = generator.e if e is None else e
    _check_contract(x, e)
    cofactor = (x.field.q - 1) // e
    target = x**cofactor
    step = generator.b**cofactor
    current = x.field.one()
    for exponent in range(e):
        if current == target:
            return exponent
        current = current * step
    raise InvariantBreachError(f"{generator.b} does not generate {x.field}^x / {x.field}^x{e}")

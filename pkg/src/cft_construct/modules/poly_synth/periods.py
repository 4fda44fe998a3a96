import logging
import math
from dataclasses import dataclass

import mpmath
from sympy import Poly, discriminant, mobius, symbols

from cft_construct.core.exceptions import PrecisionError
from cft_construct.modules.poly_synth.dirichlet import DirichletData
from cft_construct.settings import settings

logger = logging.getLogger(__name__)

X = symbols("X")


@dataclass(frozen=True)
class IntegerPolynomial:
    """A polynomial with integer coefficients, constant term first."""
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coefficients)), X)

    def discriminant(self) -> int:
        if self.degree < 1:
            return 1
        return int(discriminant(self.to_sympy().as_expr(), X))

    def __str__(self):
        return str(self.to_sympy().as_expr()).replace("**", "^")


def working_precision(dd: DirichletData) -> int:
    """Bits needed to round the period polynomial of dd reliably."""
    if dd.f <= 1:
        return 64
    return int(dd.n * math.log2(dd.f)) + 64


def _periods(dd: DirichletData, bits: int) -> list[mpmath.mpc]:
    sign = int(mobius(dd.f))
    with mpmath.workprec(bits):
        return [
            sign * mpmath.fsum(mpmath.expj(2 * mpmath.pi * h / dd.f) for h in coset)
            for coset in dd.cosets()
        ]


def _expand(roots: list[mpmath.mpc], bits: int) -> list[mpmath.mpc]:
    with mpmath.workprec(bits):
        coefficients = [mpmath.mpc(1)]
        for root in roots:
            shifted = [mpmath.mpc(0)] + coefficients
            coefficients = [a - root * b for a, b in zip(shifted, coefficients + [mpmath.mpc(0)])]
        return coefficients


def _round(coefficients: list[mpmath.mpc], bits: int) -> tuple[int, ...] | None:
    tolerance = settings.PERIOD_TOLERANCE
    rounded = []
    with mpmath.workprec(bits):
        for c in coefficients:
            nearest = mpmath.nint(c.real)
            if abs(c.real - nearest) >= tolerance or abs(c.imag) >= tolerance:
                return None
            rounded.append(int(nearest))
    return tuple(rounded)


def gaussian_period_polynomial(dd: DirichletData, precision: int | None = None) -> IntegerPolynomial:
    """The minimal polynomial of the normalised Gaussian period of the character.

    The periods mu(f) * sum(zeta_f^h for h in a coset of the kernel) are
    expanded numerically and rounded; the rounding is confirmed at twice the
    precision before it is accepted.

    Args:
        dd: The character data
        precision: Starting precision in bits (defaults to n log2 f + 64)

    Returns:
        The monic polynomial of degree n, X - 1 for the trivial character

    Raises:
        PrecisionError: If the coefficients do not settle below the precision cap
        SearchBoundExceededError: If f is too large to enumerate the kernel
    """
    if dd.n == 1:
        return IntegerPolynomial((-1, 1))

    bits = precision or working_precision(dd)
    cap = settings.PERIOD_MAX_PRECISION
    while bits <= cap:
        candidate = _round(_expand(_periods(dd, bits), bits), bits)
        if candidate is not None:
            confirmation = _round(_expand(_periods(dd, 2 * bits), 2 * bits), 2 * bits)
            if confirmation == candidate:
                polynomial = IntegerPolynomial(candidate)
                logger.info(f"Period polynomial for conductor {dd.f}, degree {dd.n}: {polynomial} at {bits} bits")
                return polynomial
            logger.warning(f"Rounding at {bits} bits not confirmed at {2 * bits} bits for conductor {dd.f}")
        else:
            logger.debug(f"Coefficients not yet integral at {bits} bits for conductor {dd.f}")
        bits *= 2
    raise PrecisionError(f"Period polynomial for conductor {dd.f} did not round below {cap} bits", suggested_precision=bits)

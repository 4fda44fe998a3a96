import logging
import random
from math import prod

from sympy import Poly, primerange

from cft_construct.modules.base_field import places_above
from cft_construct.modules.extension_analyzer import Projection, artin_symbol, ramified_places
from cft_construct.modules.morphism_builder import CharMorphismData
from cft_construct.modules.poly_synth.periods import X, IntegerPolynomial
from cft_construct.settings import settings

logger = logging.getLogger(__name__)


def factor_degrees(polynomial: IntegerPolynomial, p: int) -> list[int]:
    """Degrees of the irreducible factors of the polynomial modulo p, with multiplicity."""
    _, factors = Poly(list(reversed(polynomial.coefficients)), X, modulus=p).factor_list()
    return sorted(factor.degree() for factor, multiplicity in factors for _ in range(multiplicity))


def frobenius_verify(
    polynomial: IntegerPolynomial,
    data: CharMorphismData,
    projection: Projection | None = None,
    trials: int | None = None,
    seed: int | None = None,
) -> bool:
    """Check that the polynomial factors modulo p the way the Artin symbol predicts.

    For `trials` primes drawn with a seeded generator from those below
    FROBENIUS_PRIME_BOUND that do not divide f * disc, every irreducible
    factor must have degree equal to the order of the Frobenius. The same
    seed always checks the same primes.

    Raises:
        ValueError: If the base field is not Q
    """
    if not data.field.is_rational:
        raise ValueError("Frobenius verification needs polynomials over Q")
    projection = projection or Projection.identity(data.plan.group)
    trials = settings.FROBENIUS_TRIALS if trials is None else trials
    if polynomial.degree <= 1:
        return True

    f = prod(v.p for v in ramified_places(data, projection))
    excluded = abs(f * polynomial.discriminant())
    candidates = [p for p in primerange(2, settings.FROBENIUS_PRIME_BOUND) if excluded % p]
    rng = random.Random(settings.FROBENIUS_SEED if seed is None else seed)
    checked = 0
    for p in sorted(rng.sample(candidates, min(trials, len(candidates)))):
        order = projection.element_order(artin_symbol(data, places_above(data.field, p)[0], projection))
        degrees = factor_degrees(polynomial, p)
        if any(degree != order for degree in degrees):
            logger.warning(f"{polynomial} factors as {degrees} mod {p} but Frobenius has order {order}")
            return False
        checked += 1
    logger.info(f"{polynomial} agrees with the Artin symbol at {checked} primes")
    return True

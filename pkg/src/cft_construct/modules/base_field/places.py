import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator

from sympy import factorint, isprime, multiplicity, nextprime, sqrt_mod

from cft_construct.core.exceptions import NotIntegralError
from cft_construct.modules.base_field.field import BaseField, FieldElement
from cft_construct.modules.residue_arith import FiniteField, Residue

logger = logging.getLogger(__name__)

_INFINITE_VALUATION = 10**9
_PLACE_PATTERN = re.compile(r"^\(\s*(\d+)\s*(?:,(.*))?\)$")


class PlaceKind(str, Enum):
    RATIONAL = "rational"
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"
    ARCHIMEDEAN = "archimedean"


@dataclass(frozen=True)
class PrimePlace:
    """A place of K.

    Finite places of Q(sqrt(d)) are stored by the rational prime p below them and,
    for split and ramified primes, by the image `root` of the integral generator
    theta in F_p. theta is (1+sqrt(d))/2 when d = 1 mod 4 and sqrt(d) otherwise.
    """
    field: BaseField
    p: int
    kind: PlaceKind
    root: int = 0

    @property
    def is_finite(self) -> bool:
        return self.kind != PlaceKind.ARCHIMEDEAN

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind == PlaceKind.INERT else 1

    @property
    def q(self) -> int:
        return self.p**self.residue_degree

    @property
    def coordinate(self) -> int | None:
        """The a of (p, (a+sqrt(d))/2) in [0, 2p), or the b of (p, b+sqrt(d)) in [0, p)."""
        if self.kind not in (PlaceKind.SPLIT, PlaceKind.RAMIFIED):
            return None
        if self.field.omega_is_half:
            return (1 - 2 * self.root) % (2 * self.p)
        return -self.root % self.p

    @property
    def sort_key(self) -> tuple[int, int]:
        return self.p, self.coordinate or 0

    def __lt__(self, other: "PrimePlace") -> bool:
        return self.sort_key < other.sort_key

    def conjugate(self) -> "PrimePlace":
        if self.kind != PlaceKind.SPLIT:
            return self
        c1 = self.field.minimal_polynomial[1]
        return PrimePlace(self.field, self.p, self.kind, (c1 - self.root) % self.p)

    def generators(self) -> tuple[int, FieldElement]:
        """Two generators (p, g) of the prime ideal."""
        K = self.field
        if self.kind in (PlaceKind.SPLIT, PlaceKind.RAMIFIED):
            return self.p, K.from_integral_coords(-self.root, 1)
        return self.p, K.element(self.p)

    def __str__(self) -> str:
        if self.kind == PlaceKind.ARCHIMEDEAN:
            return "inf"
        if self.coordinate is None:
            return f"({self.p})"
        root = f"sqrt({self.field.d})"
        if self.field.omega_is_half:
            return f"({self.p},({self.coordinate}+{root})/2)"
        if self.coordinate == 0:
            return f"({self.p},{root})"
        return f"({self.p},{self.coordinate}+{root})"


def archimedean_place(K: BaseField) -> PrimePlace:
    return PrimePlace(K, 0, PlaceKind.ARCHIMEDEAN)


@lru_cache(maxsize=65536)
def places_above(K: BaseField, p: int) -> tuple[PrimePlace, ...]:
    """The places of K above the rational prime p, ordered by coordinate."""
    if K.is_rational:
        return (PrimePlace(K, p, PlaceKind.RATIONAL),)

    if p == 2:
        if not K.omega_is_half:
            return (PrimePlace(K, 2, PlaceKind.RAMIFIED, K.d % 2),)
        if K.d % 8 == 1:
            places = [PrimePlace(K, 2, PlaceKind.SPLIT, root) for root in (0, 1)]
            return tuple(sorted(places))
        return (PrimePlace(K, 2, PlaceKind.INERT),)

    inv2 = pow(2, -1, p)
    if K.d % p == 0:
        root = inv2 if K.omega_is_half else 0
        return (PrimePlace(K, p, PlaceKind.RAMIFIED, root),)

    roots = sqrt_mod(K.d % p, p, all_roots=True)
    if not roots:
        return (PrimePlace(K, p, PlaceKind.INERT),)
    if K.omega_is_half:
        roots = [(1 + r) * inv2 % p for r in roots]
    return tuple(sorted(PrimePlace(K, p, PlaceKind.SPLIT, r) for r in roots))


def iter_places(K: BaseField, bound: int | None = None, start: int = 2) -> Iterator[PrimePlace]:
    """Iterate over the finite places of K above primes start <= p <= bound in canonical order."""
    p = start if isprime(start) else nextprime(start)
    while bound is None or p <= bound:
        yield from places_above(K, p)
        p = nextprime(p)


def _vp(n: int, p: int) -> int:
    if n == 0:
        return _INFINITE_VALUATION
    return multiplicity(p, abs(n))


def _coords_norm(K: BaseField, u: int, v: int) -> int:
    c0, c1 = K.minimal_polynomial
    return u * u + c1 * u * v - c0 * v * v


def valuation(x: FieldElement, place: PrimePlace) -> int:
    """The normalised valuation of a nonzero element at a finite place."""
    if x.is_zero():
        raise ValueError("Valuation of zero is undefined")
    if not place.is_finite:
        raise ValueError("Valuations are only defined at finite places")

    p = place.p
    if place.kind == PlaceKind.RATIONAL:
        return _vp(x.x, p) - _vp(x.den, p)
    if place.kind == PlaceKind.RAMIFIED:
        norm = x.norm()
        return _vp(norm.numerator, p) - _vp(norm.denominator, p)

    u, v, n = x.integral_coords()
    content = min(_vp(u, p), _vp(v, p))
    if place.kind == PlaceKind.INERT:
        return content - _vp(n, p)

    scale = p**content
    u, v = u // scale, v // scale
    extra = 0
    if (u + v * place.root) % p == 0:
        extra = _vp(_coords_norm(place.field, u, v), p)
    return content + extra - _vp(n, p)


@lru_cache(maxsize=65536)
def residue_field(place: PrimePlace) -> FiniteField:
    if not place.is_finite:
        raise ValueError("The archimedean place has no residue field")
    if place.kind != PlaceKind.INERT:
        return FiniteField(place.p)
    if place.p == 2:
        # t is the image of (1+sqrt(d))/2 and t^2 = t + 1
        return FiniteField(2, 2, c0=1, c1=1)
    return FiniteField(place.p, 2, c0=place.field.d % place.p, c1=0)


def _theta_residue(place: PrimePlace) -> tuple[int, int]:
    if place.kind != PlaceKind.INERT:
        return place.root, 0
    if place.p != 2 and place.field.omega_is_half:
        inv2 = pow(2, -1, place.p)
        return inv2, inv2
    return 0, 1


def _lift_root(K: BaseField, root: int, p: int, exponent: int) -> int:
    """Hensel-lift a simple root of the minimal polynomial of theta to Z/p^exponent."""
    c0, c1 = K.minimal_polynomial
    r, modulus = root, p
    derivative_inverse = pow(2 * root - c1, -1, p)
    for _ in range(exponent - 1):
        modulus *= p
        r = (r - (r * r - c1 * r - c0) * derivative_inverse) % modulus
    return r


def reduce(x: FieldElement, place: PrimePlace) -> Residue:
    """Reduce a v-integral element into the residue field of v.

    Raises:
        NotIntegralError: If x has negative valuation at v
    """
    F = residue_field(place)
    if x.is_zero():
        return F.element(0)

    val = valuation(x, place)
    if val < 0:
        raise NotIntegralError(f"{x} is not integral at {place} (valuation {val})")
    if val > 0:
        return F.element(0)

    p = place.p
    u, v, n = x.integral_coords()
    k = _vp(n, p)
    if k and place.kind == PlaceKind.SPLIT:
        # the numerator is divisible by p^k at this place only
        lifted = _lift_root(place.field, place.root, p, k + 1)
        numerator = (u + v * lifted) % p ** (k + 1)
        return F.element(numerator // p**k * pow(n // p**k, -1, p))
    if k:
        scale = p**k
        u, v, n = u // scale, v // scale, n // scale

    theta_x, theta_y = _theta_residue(place)
    n_inv = pow(n, -1, p)
    return F.element((u + v * theta_x) * n_inv, v * theta_y * n_inv)


def factor_principal(x: FieldElement) -> list[tuple[PrimePlace, int]]:
    """Factor the fractional ideal generated by x into prime places.

    Args:
        x: A nonzero element

    Returns:
        list[tuple[PrimePlace, int]]: (place, exponent) pairs with nonzero exponents,
        in canonical place order
    """
    if x.is_zero():
        raise ValueError("Cannot factor the zero ideal")

    norm = abs(x.norm())
    primes = sorted(set(factorint(norm.numerator)) | set(factorint(norm.denominator)))
    factors = []
    for p in primes:
        for place in places_above(x.field, p):
            exponent = valuation(x, place)
            if exponent:
                factors.append((place, exponent))
    return factors


def place_from_generator(x: FieldElement) -> PrimePlace:
    """The degree-one place v with (x) = v."""
    factors = factor_principal(x)
    if len(factors) != 1 or factors[0][1] != 1 or factors[0][0].residue_degree != 1:
        raise ValueError(f"{x} does not generate a prime ideal of degree one")
    return factors[0][0]


def _unique_place_above(K: BaseField, p: int, text: str) -> PrimePlace:
    if not isprime(p):
        raise ValueError(f"{p} in {text!r} is not prime")
    places = places_above(K, p)
    if len(places) != 1:
        raise ValueError(f"{p} splits in {K}; {text!r} must name one of {[str(v) for v in places]}")
    return places[0]


def parse_place(K: BaseField, text: str) -> PrimePlace:
    """Parse "inf", "p", "(p)", "(p,(a+sqrt(d))/2)", "(p,b+sqrt(d))" or a generator element.

    Raises:
        ValueError: If the text does not name a place of K
    """
    compact = text.strip()
    if compact.lower() in ("inf", "oo", "infinity"):
        return archimedean_place(K)
    if compact.isdigit():
        return _unique_place_above(K, int(compact), text)

    match = _PLACE_PATTERN.match(compact)
    if match is None:
        return place_from_generator(K.parse_element(compact))

    p = int(match.group(1))
    if match.group(2) is None:
        return _unique_place_above(K, p, text)
    if not isprime(p):
        raise ValueError(f"{p} in {text!r} is not prime")

    generator = K.parse_element(match.group(2))
    if not generator.is_integral() or generator.is_zero():
        raise ValueError(f"{generator} in {text!r} is not a nonzero integral element")
    matches = [place for place in places_above(K, p) if valuation(generator, place) > 0]
    if len(matches) != 1:
        raise ValueError(f"{text!r} does not describe a prime ideal above {p}")
    return matches[0]

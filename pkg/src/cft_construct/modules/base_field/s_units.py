import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod

from sympy import Matrix

from cft_construct.core.exceptions import ElementSearchError, SUnitError
from cft_construct.core.lattice import lattice_invariants, smith_form
from cft_construct.modules.base_field.class_group import class_group
from cft_construct.modules.base_field.field import BaseField, FieldElement
from cft_construct.modules.base_field.places import (
    PlaceKind,
    PrimePlace,
    archimedean_place,
    factor_principal,
    iter_places,
    valuation,
)
from cft_construct.settings import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SUnitBasis:
    """Generators gamma_0, ..., gamma_r of the S-units, gamma_0 generating the torsion."""
    field: BaseField
    S: tuple[PrimePlace, ...]
    gamma: tuple[FieldElement, ...]

    @property
    def rank(self) -> int:
        return len(self.gamma) - 1

    @property
    def finite_places(self) -> tuple[PrimePlace, ...]:
        return tuple(v for v in self.S if v.is_finite)

    def valuation_matrix(self) -> list[list[int]]:
        """Rows gamma_1..gamma_r, columns the finite places of S."""
        return [[valuation(g, v) for v in self.finite_places] for g in self.gamma[1:]]


def build_S(K: BaseField, alphas: list[FieldElement]) -> tuple[PrimePlace, ...]:
    """Choose S: infinity, the supports of the alphas, then places that kill the class group.

    Args:
        K: The base field
        alphas: Nonzero elements that must become S-units

    Returns:
        tuple[PrimePlace, ...]: The archimedean place followed by the finite places in order
    """
    finite: set[PrimePlace] = set()
    for alpha in alphas:
        if alpha.is_zero():
            raise ValueError("The elements to be realised as norms must be nonzero")
        finite.update(place for place, _ in factor_principal(alpha))

    cl = class_group(K)
    vectors = [cl.class_of(v) for v in finite]
    current = cl.subgroup_order(vectors)
    if current < cl.order:
        for place in iter_places(K):
            if place.kind == PlaceKind.INERT or place in finite:
                continue
            vector = cl.class_of(place)
            enlarged = cl.subgroup_order(vectors + [vector])
            if enlarged > current:
                finite.add(place)
                vectors.append(vector)
                current = enlarged
                logger.debug(f"Added {place} to S, class subgroup now of order {current}")
                if current == cl.order:
                    break

    S = (archimedean_place(K), *sorted(finite))
    logger.info(f"S = {{{', '.join(str(v) for v in S)}}}")
    return S


def _norm_equation_solutions(K: BaseField, norm: int):
    """Yield the integral elements of the given norm by increasing |y|."""
    d = K.d
    scale = 4 if K.omega_is_half else 1
    target = scale * norm
    y = 0
    while target + d * y * y >= 0:
        square = target + d * y * y
        x = isqrt(square)
        if x * x == square and (not K.omega_is_half or (x - y) % 2 == 0):
            seen = set()
            for sx, sy in ((x, y), (-x, y), (x, -y), (-x, -y)):
                if (sx, sy) in seen:
                    continue
                seen.add((sx, sy))
                yield K.element(sx, sy, 2 if K.omega_is_half else 1)
        y += 1


@lru_cache(maxsize=4096)
def _find_generator(K: BaseField, exponents: tuple[tuple[PrimePlace, int], ...]) -> FieldElement:
    norm = prod(place.q**e for place, e in exponents)
    if K.is_rational:
        return K.element(norm)
    if norm > settings.ELEMENT_NORM_BOUND:
        raise ElementSearchError(f"Norm {norm} exceeds the element search bound {settings.ELEMENT_NORM_BOUND}")

    for candidate in _norm_equation_solutions(K, norm):
        if all(valuation(candidate, place) == e for place, e in exponents):
            return candidate
    raise ElementSearchError(f"No generator of norm {norm} for {[(str(v), e) for v, e in exponents]}")


def find_generator(K: BaseField, exponents: dict[PrimePlace, int]) -> FieldElement:
    """Find a generator of the integral ideal prod v^e.

    Raises:
        ValueError: If an exponent is negative or a place is archimedean
        ElementSearchError: If the ideal is not principal or its norm is too large
    """
    if any(e < 0 or not v.is_finite for v, e in exponents.items()):
        raise ValueError("Generators are only searched for integral ideals")
    key = tuple(sorted((v, e) for v, e in exponents.items() if e))
    return _find_generator(K, key)


def _principal_candidates(K: BaseField, places: tuple[PrimePlace, ...], bound: int, offset: list[int]):
    """Exponent vectors in [0, bound]^n whose class cancels `offset`, ordered by norm."""
    cl = class_group(K)
    vectors = [cl.class_of(v) for v in places]
    candidates = sorted(
        itertools.product(range(bound + 1), repeat=len(places)),
        key=lambda a: (prod(v.q**e for v, e in zip(places, a)), a),
    )
    for a in candidates:
        total = cl.combine(vectors + [offset], list(a) + [1])
        if not any(total):
            yield list(a)


def s_unit_generators(K: BaseField, S: tuple[PrimePlace, ...]) -> SUnitBasis:
    """Compute generators of the S-unit group.

    The valuation vectors of gamma_1..gamma_r form a basis of the lattice of
    exponent vectors over the finite places of S giving principal ideals.

    Raises:
        ValueError: If the class group of O_S is not trivial
        ElementSearchError: If a generator search exceeds its bound
    """
    finite = tuple(sorted(v for v in S if v.is_finite))
    torsion = K.torsion_generator()

    if K.is_rational:
        gamma = (torsion, *(K.element(v.p) for v in finite))
        return SUnitBasis(K, (archimedean_place(K), *finite), gamma)

    cl = class_group(K)
    n = len(finite)
    if cl.subgroup_order([cl.class_of(v) for v in finite]) != cl.order:
        raise ValueError("The places of S do not generate the class group")
    if n == 0:
        return SUnitBasis(K, (archimedean_place(K),), (torsion,))

    accepted: list[list[int]] = []
    elements: list[FieldElement] = []
    state = (0, 1)
    zero = [0] * len(cl.orders)
    for a in _principal_candidates(K, finite, cl.order, zero):
        if not any(a):
            continue
        invariants = lattice_invariants(accepted + [a], n)
        if invariants[0] == state[0] and invariants[1] >= state[1]:
            continue
        accepted.append(a)
        elements.append(find_generator(K, dict(zip(finite, a))))
        state = invariants
        logger.debug(f"Principal exponent vector {a} accepted, lattice rank {state[0]} covolume {state[1]}")
        if state == (n, cl.order):
            break

    if state != (n, cl.order):
        raise SUnitError(f"Could not complete the S-unit lattice for S={[str(v) for v in S]}")

    if len(accepted) > n:
        _, U, _ = smith_form(accepted)
        elements = [
            prod((g**c for g, c in zip(elements, U[j])), start=K.one()) for j in range(n)
        ]

    basis = SUnitBasis(K, (archimedean_place(K), *finite), (torsion, *elements))
    logger.info(f"S-unit generators: {', '.join(str(g) for g in basis.gamma)}")
    return basis


@lru_cache(maxsize=4096)
def uniformiser(S: tuple[PrimePlace, ...], v: PrimePlace) -> FieldElement:
    """The integral S-unit uniformiser at v of smallest norm.

    Args:
        S: A set of places whose finite part generates the class group
        v: A finite place outside S

    Returns:
        FieldElement: pi with valuation 1 at v and support in S and v
    """
    if not v.is_finite or v in S:
        raise ValueError(f"{v} must be a finite place outside S")
    K = v.field
    if K.is_rational:
        return K.element(v.p)

    finite = tuple(sorted(w for w in S if w.is_finite))
    cl = class_group(K)
    offset = cl.class_of(v)
    for a in _principal_candidates(K, finite, max(cl.order - 1, 0), offset):
        exponents = dict(zip(finite, a))
        exponents[v] = 1
        return find_generator(K, exponents)
    raise ElementSearchError(f"No principal ideal v*S^a found for {v}")


def is_uniformiser(pi: FieldElement, S: tuple[PrimePlace, ...], v: PrimePlace) -> bool:
    """Check that pi has valuation 1 at v and is a unit outside S and v."""
    if pi.is_zero():
        return False
    allowed = set(S) | {v}
    factors = factor_principal(pi)
    return dict(factors).get(v) == 1 and all(place in allowed for place, _ in factors)


def s_unit_exponents(basis: SUnitBasis, alpha: FieldElement) -> tuple[int, list[int]]:
    """Write alpha as gamma_0^c0 * prod gamma_i^ci.

    Returns:
        tuple[int, list[int]]: c0 in [0, torsion order) and c1..cr

    Raises:
        SUnitError: If alpha is not an S-unit
    """
    if alpha.is_zero():
        raise SUnitError("0 is not an S-unit")
    finite = basis.finite_places
    outside = [str(v) for v, _ in factor_principal(alpha) if v not in finite]
    if outside:
        raise SUnitError(f"{alpha} is not a unit at {', '.join(outside)}")

    exponents: list[int] = []
    if basis.rank:
        target = Matrix([[valuation(alpha, v) for v in finite]])
        solution = target * Matrix(basis.valuation_matrix()).inv()
        if any(entry.q != 1 for entry in solution):
            raise SUnitError(f"{alpha} is not in the group generated by {[str(g) for g in basis.gamma]}")
        exponents = [int(entry) for entry in solution]

    residual = alpha
    for g, c in zip(basis.gamma[1:], exponents):
        residual = residual / g**c
    torsion = basis.gamma[0]
    power = basis.field.one()
    for k in range(basis.field.torsion_order):
        if power == residual:
            return k, exponents
        power = power * torsion
    raise SUnitError(f"{alpha} leaves the non-torsion residual {residual}")

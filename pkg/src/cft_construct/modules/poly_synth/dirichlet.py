import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd, prod

from sympy import discrete_log, factorint, primefactors, primerange, primitive_root
from sympy.ntheory.modular import crt

from cft_construct.core.exceptions import InvariantBreachError, SearchBoundExceededError
from cft_construct.core.lattice import lattice_invariants
from cft_construct.modules.base_field import places_above
from cft_construct.modules.extension_analyzer import Projection, artin_symbol, ramified_places
from cft_construct.modules.morphism_builder import CharMorphismData
from cft_construct.settings import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DirichletData:
    """The Artin character of an abelian extension of Q seen on (Z/fZ)^x.

    The character is stored by its values on the generators of (Z/fZ)^x, so
    nothing of size phi(f) is built until the kernel is asked for.

    Attributes:
        f: The conductor
        n: The degree, i.e. the index of the kernel
        generators: Generators of (Z/fZ)^x, one per prime factor of f
        images: Character value of every generator, in the coordinates of H
        moduli: Cyclic orders of H
        subgroup: The kernel, when it was given directly instead of a character
    """
    f: int
    n: int
    generators: tuple[int, ...] = ()
    images: tuple[tuple[int, ...], ...] = ()
    moduli: tuple[int, ...] = ()
    subgroup: frozenset[int] | None = None

    @classmethod
    def from_subgroup(cls, f: int, kernel: set[int] | frozenset[int]) -> "DirichletData":
        units = unit_residues(f)
        kernel = frozenset(a % f for a in kernel)
        if not kernel <= set(units) or len(units) % len(kernel):
            raise ValueError(f"{sorted(kernel)} is not a subgroup of (Z/{f})^x")
        return cls(f=f, n=len(units) // len(kernel), subgroup=kernel)

    @property
    def primes(self) -> list[int]:
        return sorted(factorint(self.f)) if self.f > 1 else []

    def character(self, a: int) -> tuple[int, ...]:
        """The value at a unit residue, from its discrete logs at the prime factors of f."""
        if self.subgroup is not None:
            raise ValueError("Character values are unknown for a kernel given as a subgroup")
        if gcd(a, self.f) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.f}")
        value = [0] * len(self.moduli)
        for q, g, image in zip(self.primes, self.generators, self.images):
            x = discrete_log(q, a % q, g % q) if q > 2 else 0
            value = [(v + x * y) % m for v, y, m in zip(value, image, self.moduli)]
        return tuple(value)

    @cached_property
    def kernel(self) -> frozenset[int]:
        """Residues a mod f whose Artin symbol is trivial.

        Raises:
            SearchBoundExceededError: If f is above CHARACTER_CONDUCTOR_BOUND
        """
        if self.subgroup is not None:
            return self.subgroup
        check_enumerable(self.f)
        if self.f == 1:
            return frozenset({0})
        kernel = set()
        for exponents in product(*(range(q - 1) for q in self.primes)):
            value = [sum(x * image[j] for x, image in zip(exponents, self.images)) % m for j, m in enumerate(self.moduli)]
            if not any(value):
                kernel.add(prod(pow(g, x, self.f) for g, x in zip(self.generators, exponents)) % self.f)
        return frozenset(kernel)

    def cosets(self) -> list[list[int]]:
        """The cosets of the kernel, each sorted, ordered by smallest element."""
        kernel = self.kernel
        remaining = set(unit_residues(self.f))
        cosets = []
        for a in unit_residues(self.f):
            if a not in remaining:
                continue
            coset = sorted({a * h % self.f for h in kernel})
            remaining.difference_update(coset)
            cosets.append(coset)
        return cosets


def check_enumerable(f: int) -> None:
    bound = settings.CHARACTER_CONDUCTOR_BOUND
    if f > bound:
        raise SearchBoundExceededError(f"Conductor {f} is above the enumeration bound {bound}")


def unit_residues(f: int) -> list[int]:
    check_enumerable(f)
    return [a for a in range(f) if gcd(a, f) == 1] if f > 1 else [0]


def unit_group_generators(f: int) -> list[int]:
    """Generators of (Z/fZ)^x for squarefree f, one per prime factor, lifted through CRT."""
    factors = factorint(f)
    if any(exponent > 1 for exponent in factors.values()):
        raise ValueError(f"Tame conductors are squarefree, got {f}")
    primes = sorted(factors)
    generators = []
    for q in primes:
        residues = [primitive_root(q) if p == q else 1 for p in primes]
        generators.append(int(crt(primes, residues)[0]))
    return generators


def image_order(images: list[tuple[int, ...]] | tuple[tuple[int, ...], ...], moduli: tuple[int, ...]) -> int:
    """Order of the subgroup of Z/h_1 x ... x Z/h_s generated by the images."""
    relations = [[h if i == j else 0 for j in range(len(moduli))] for i, h in enumerate(moduli)]
    _, covolume = lattice_invariants([list(image) for image in images] + relations, len(moduli))
    return prod(moduli) // covolume


def _integer_character(data: CharMorphismData, a: int, projection: Projection) -> tuple[int, ...]:
    # Frobenius is multiplicative on ideals, so (a) is the sum over its prime factors
    moduli = projection.moduli
    value = [0] * len(moduli)
    for p, k in factorint(a).items():
        symbol = artin_symbol(data, places_above(data.field, p)[0], projection)
        value = [(x + k * y) % m for x, y, m in zip(value, symbol, moduli)]
    return tuple(value)


def character_kernel(data: CharMorphismData, projection: Projection | None = None) -> DirichletData:
    """The Artin character of L_Pi / Q on (Z/fZ)^x.

    The character is evaluated once per CRT generator of (Z/fZ)^x, through
    the prime factorisation of the generator, and its degree is the order of
    the subgroup the values generate. The result is then compared with the
    Artin symbol at the first CHARACTER_CHECK_PRIMES primes outside f.

    Raises:
        ValueError: If the base field is not Q
        InvariantBreachError: If the character disagrees with an Artin symbol
    """
    if not data.field.is_rational:
        raise ValueError("Character kernels are only computed over Q")
    projection = projection or Projection.identity(data.plan.group)
    f = prod(v.p for v in ramified_places(data, projection))
    moduli = tuple(projection.moduli)

    generators = tuple(unit_group_generators(f)) if f > 1 else ()
    images = tuple(_integer_character(data, g, projection) for g in generators)
    dd = DirichletData(f=f, n=image_order(images, moduli), generators=generators, images=images, moduli=moduli)

    wanted = settings.CHARACTER_CHECK_PRIMES
    checked = 0
    excluded = set(primefactors(f))
    for p in primerange(2, 2**31):
        if checked == wanted:
            break
        if p in excluded:
            continue
        expected = tuple(artin_symbol(data, places_above(data.field, p)[0], projection))
        if dd.character(p) != expected:
            raise InvariantBreachError(f"Character of {projection.name} disagrees with the Artin symbol at {p}")
        checked += 1

    logger.info(f"Character of {projection.name}: conductor {f}, degree {dd.n}")
    return dd

from dataclasses import dataclass
from itertools import combinations
from math import lcm, prod

from cft_construct.core.exceptions import DegenerateGroupError
from cft_construct.core.lattice import IntMatrix, identity, smith_form


def invariant_factors(orders: list[int]) -> list[int]:
    """Invariant factors n_1 | n_2 | ... of a product of cyclic groups, ones dropped."""
    if not orders:
        return []
    diagonal = [[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)]
    D, _, _ = smith_form(diagonal)
    return [D[i][i] for i in range(len(orders)) if D[i][i] != 1]


@dataclass(frozen=True)
class AbelianGroupSpec:
    """A finite abelian group Z/n_1 x ... x Z/n_m.

    The given cyclic factors are kept in their order when their number is already
    minimal, so that presentations like Z/6 x (Z/3)^3 survive. Otherwise the
    group is rewritten by its invariant factors.
    """
    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(n < 1 for n in self.factors):
            raise ValueError(f"Cyclic orders must be positive, got {self.factors}")
        nontrivial = tuple(n for n in self.factors if n != 1)
        canonical = tuple(invariant_factors(list(nontrivial)))
        object.__setattr__(self, "factors", nontrivial if len(nontrivial) == len(canonical) else canonical)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupSpec":
        """Parse "6,3,3,3" or "6x3x3x3"."""
        parts = [part for part in text.replace("x", ",").split(",") if part.strip()]
        try:
            return cls(tuple(int(part) for part in parts))
        except ValueError as e:
            raise ValueError(f"Cannot parse group {text!r}: {e}") from e

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return lcm(*self.factors) if self.factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        if self.is_trivial:
            return "1"
        return " x ".join(f"Z/{n}" for n in self.factors)


@dataclass(frozen=True)
class GroupPlan:
    """The data e, k, k' = C(k, 2), C and the pair enumeration for G."""
    group: AbelianGroupSpec
    e: int
    k: int
    C: IntMatrix
    pairs: tuple[tuple[int, int], ...]

    @property
    def kprime(self) -> int:
        return len(self.pairs)

    @property
    def moduli(self) -> list[int]:
        return list(self.group.factors)

    @property
    def is_cyclic(self) -> bool:
        return self.k == 1


def plan_group(G: AbelianGroupSpec) -> GroupPlan:
    """Choose e = exponent(G), k = number of cyclic factors and C the identity.

    Raises:
        DegenerateGroupError: If G is trivial, in which case L = K
    """
    if G.is_trivial:
        raise DegenerateGroupError("The trivial group gives L = K; every element is a norm")
    k = len(G.factors)
    return GroupPlan(
        group=G,
        e=G.exponent,
        k=k,
        C=identity(k),
        pairs=tuple(combinations(range(k), 2)),
    )

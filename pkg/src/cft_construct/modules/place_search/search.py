import dataclasses
import logging
from dataclasses import dataclass, replace

from cft_construct.core.exceptions import SearchBoundExceededError
from cft_construct.modules.base_field import (
    BaseField,
    FieldElement,
    PrimePlace,
    iter_places,
    reduce,
    valuation,
)
from cft_construct.modules.residue_arith import generates_quotient, is_eth_power
from cft_construct.settings import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchSpec:
    """Membership conditions for places of T(S; e; {xs}) or T(S; e; {xs}; y).

    Attributes:
        field: The base field
        S: Places that are never returned
        e: Exponent; every admissible place has q = 1 mod e
        xs: Elements that must be units and e-th powers at the place
        y: Optional element that must be a unit generating F_q^x / F_q^xe
        exclude: Further places that are never returned
        bound: Largest rational prime below an inspected place
    """
    field: BaseField
    S: tuple[PrimePlace, ...]
    e: int
    xs: tuple[FieldElement, ...]
    y: FieldElement | None = None
    exclude: frozenset[PrimePlace] = frozenset()
    bound: int = dataclasses.field(default_factory=lambda: settings.SEARCH_BOUND)

    def __post_init__(self) -> None:
        if not self.xs:
            raise ValueError("A place search needs at least one element to test")
        if self.e < 1:
            raise ValueError(f"e must be positive, got {self.e}")
        if self.bound < 2:
            raise ValueError(f"Search bound must be at least 2, got {self.bound}")

    def with_target(self, y: FieldElement | None, exclude=frozenset()) -> "SearchSpec":
        return replace(self, y=y, exclude=frozenset(exclude))


@dataclass(frozen=True)
class SearchCursor:
    """Position of a search: the last emitted place and the work done so far."""
    last: PrimePlace | None = None
    inspected: int = 0
    found: int = 0


def is_admissible(spec: SearchSpec, place: PrimePlace) -> bool:
    """Check every membership condition of the search at one place."""
    if not place.is_finite or place in spec.S or place in spec.exclude:
        return False
    if (place.q - 1) % spec.e:
        return False
    for x in spec.xs:
        if valuation(x, place) != 0 or not is_eth_power(reduce(x, place), spec.e):
            return False
    if spec.y is not None:
        if valuation(spec.y, place) != 0 or not generates_quotient(reduce(spec.y, place), spec.e):
            return False
    return True


def next_place(spec: SearchSpec, cursor: SearchCursor | None = None) -> tuple[PrimePlace, SearchCursor]:
    """Find the next admissible place after the cursor.

    Args:
        spec: The membership conditions
        cursor: Where the previous call stopped (None starts from the beginning)

    Returns:
        tuple[PrimePlace, SearchCursor]: The place and the cursor to resume from

    Raises:
        SearchBoundExceededError: If no admissible place lies below the bound
    """
    cursor = cursor or SearchCursor()
    start = cursor.last.p if cursor.last is not None else 2
    inspected = cursor.inspected

    for place in iter_places(spec.field, bound=spec.bound, start=start):
        if cursor.last is not None and place.sort_key <= cursor.last.sort_key:
            continue
        inspected += 1
        if inspected % settings.SEARCH_PROGRESS_EVERY == 0:
            logger.info(
                f"Place search progress: inspected={inspected} found={cursor.found}",
                extra={"inspected": inspected, "found": cursor.found},
            )
        if is_admissible(spec, place):
            logger.debug(f"Admissible place {place} after {inspected} inspected")
            return place, SearchCursor(place, inspected, cursor.found + 1)

    raise SearchBoundExceededError(
        f"No admissible place below {spec.bound} (e={spec.e}, inspected {inspected})",
        inspected=inspected,
    )


def stream(spec: SearchSpec, n: int, cursor: SearchCursor | None = None) -> list[PrimePlace]:
    """The next n admissible places in canonical order."""
    places = []
    for _ in range(n):
        place, cursor = next_place(spec, cursor)
        places.append(place)
    return places

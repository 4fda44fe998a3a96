import logging
from dataclasses import dataclass

from cft_construct.core.exceptions import RamifiedPlaceError, SearchBoundExceededError
from cft_construct.core.lattice import mat_vec
from cft_construct.modules.base_field import FieldElement, PrimePlace, iter_places, reduce, uniformiser
from cft_construct.modules.extension_analyzer.projection import Projection
from cft_construct.modules.morphism_builder import CharMorphismData
from cft_construct.modules.residue_arith import dlog_mod_e
from cft_construct.settings import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitPlace:
    place: PrimePlace
    in_s: bool


def _projection(data: CharMorphismData, projection: Projection | None) -> Projection:
    return projection or Projection.identity(data.plan.group)


def slot_images(data: CharMorphismData, projection: Projection | None = None) -> list[list[int]]:
    """The image in H of the standard basis element of every slot."""
    composed = _projection(data, projection).compose(data.R)
    return [list(column) for column in zip(*composed)]


def ramified_places(data: CharMorphismData, projection: Projection | None = None) -> list[PrimePlace]:
    """Slots whose standard basis element is not in the kernel of Pi o Phi'.

    All of them are tamely ramified, so their product is the conductor.
    """
    return [place for place, image in zip(data.slots, slot_images(data, projection)) if any(image)]


def ramification_indices(data: CharMorphismData, projection: Projection | None = None) -> list[tuple[PrimePlace, int, int]]:
    """(place, ramification index, discriminant exponent) for every ramified place."""
    projection = _projection(data, projection)
    H = projection.order
    indices = []
    for place, image in zip(data.slots, slot_images(data, projection)):
        if any(image):
            e_v = projection.element_order(image)
            indices.append((place, e_v, H - H // e_v))
    return indices


def standard_vector(data: CharMorphismData, v: PrimePlace, pi: FieldElement | None = None) -> list[int]:
    """Coordinates of the image of pi_v in the standard basis, with 0 at v's own slot.

    pi defaults to the S-unit uniformiser at v.
    """
    if pi is None:
        pi = uniformiser(data.basis.S, v)
    vector = []
    for place, generator in zip(data.slots, data.generators):
        if place == v:
            vector.append(0)
        else:
            vector.append(-dlog_mod_e(reduce(pi, place), generator) % data.e)
    return vector


def artin_symbol(data: CharMorphismData, v: PrimePlace, projection: Projection | None = None) -> list[int]:
    """The Frobenius of an unramified place as coordinates in H.

    Raises:
        RamifiedPlaceError: If v ramifies in the extension cut out by the projection
    """
    projection = _projection(data, projection)
    if not v.is_finite or v in data.basis.S:
        return [0] * len(projection.moduli)
    if v in ramified_places(data, projection):
        raise RamifiedPlaceError(f"Artin symbol undefined at the ramified place {v}")
    g = [x % n for x, n in zip(mat_vec(data.R, standard_vector(data, v)), data.plan.moduli)]
    return projection.apply(g)


def split_places(
    data: CharMorphismData,
    projection: Projection | None = None,
    n: int | None = None,
    bound: int | None = None,
) -> list[SplitPlace]:
    """The first n finite places, in canonical order, that split completely.

    Places of S are included and flagged.

    Raises:
        SearchBoundExceededError: If fewer than n places lie below the bound
    """
    n = settings.SPLIT_LIST_LENGTH if n is None else n
    bound = bound or settings.SEARCH_BOUND
    projection = _projection(data, projection)
    ramified = set(ramified_places(data, projection))
    found: list[SplitPlace] = []
    if n <= 0:
        return found

    inspected = 0
    for place in iter_places(data.field, bound=bound):
        inspected += 1
        if place in data.basis.S:
            found.append(SplitPlace(place, True))
        elif place not in ramified and not any(artin_symbol(data, place, projection)):
            found.append(SplitPlace(place, False))
        if len(found) == n:
            logger.debug(f"Split list for {projection.name} complete after {inspected} places")
            return found
    raise SearchBoundExceededError(
        f"Only {len(found)} of {n} split places below {bound} for {projection.name}", inspected=inspected
    )


def decomposition_groups(data: CharMorphismData) -> list[tuple[PrimePlace, list[list[int]]]]:
    """Generators of rho(K_v^x) in G for every v_i.

    The local units at v_i map to the column of R at v_i's slot. The image of
    pi_i is R applied to its discrete logarithms at the other slots, computed
    from the residues and not read off A.
    """
    moduli = data.plan.moduli
    slots = data.slots
    groups = []
    for place, pi in zip(data.v_places, data.pis):
        column = slots.index(place)
        generators = [[row[column] % n for row, n in zip(data.R, moduli)]]
        if not data.plan.is_cyclic:
            image = mat_vec(data.R, standard_vector(data, place, pi))
            generators.append([x % n for x, n in zip(image, moduli)])
        groups.append((place, generators))
    return groups

"""The wedge-square criterion for the Hasse norm principle."""
from itertools import combinations
from math import gcd

from pydantic import BaseModel, Field

from cft_construct.core.lattice import spans_quotient
from cft_construct.modules.extension_analyzer.artin import decomposition_groups
from cft_construct.modules.morphism_builder import AbelianGroupSpec, CharMorphismData


class HnpResult(BaseModel):
    verdict: bool = Field(..., description="Whether the local wedge squares generate the wedge square of G")
    wedge_moduli: list[int] = Field(..., description="Orders gcd(n_i, n_j) of the basis g_i ^ g_j")
    labels: list[str] = Field(..., description="Labels g_i^g_j of the wedge basis")
    witness: list[list[int]] = Field(..., description="Wedges x ^ y of the decomposition group generators")


def wedge_square(G: AbelianGroupSpec) -> tuple[list[int], list[tuple[int, int]]]:
    """The wedge square of G as a sum of Z/gcd(n_i, n_j) over the pairs i < j."""
    pairs = list(combinations(range(len(G.factors)), 2))
    return [gcd(G.factors[i], G.factors[j]) for i, j in pairs], pairs


def wedge(x: list[int], y: list[int], G: AbelianGroupSpec) -> list[int]:
    moduli, pairs = wedge_square(G)
    return [(x[i] * y[j] - x[j] * y[i]) % n for (i, j), n in zip(pairs, moduli)]


def wedge_span_check(G: AbelianGroupSpec, generator_pairs: list[tuple[list[int], list[int]]]) -> HnpResult:
    """Test whether the wedges x ^ y of the given pairs generate the wedge square of G."""
    moduli, pairs = wedge_square(G)
    labels = [f"g{i + 1}^g{j + 1}" for i, j in pairs]
    witness = [wedge(x, y, G) for x, y in generator_pairs]
    if not moduli:
        return HnpResult(verdict=True, wedge_moduli=[], labels=[], witness=[])
    return HnpResult(
        verdict=spans_quotient(witness, moduli),
        wedge_moduli=moduli,
        labels=labels,
        witness=witness,
    )


def hnp_check(data: CharMorphismData) -> HnpResult:
    """Check that the decomposition groups at the v_i jointly cover the wedge square of G."""
    G = data.plan.group
    if data.plan.is_cyclic:
        return wedge_span_check(G, [])
    pairs = [(generators[0], generators[1]) for _, generators in decomposition_groups(data)]
    return wedge_span_check(G, pairs)

"""Shipped worked examples and their recorded expected values."""
import logging
from importlib import resources
from typing import Any

import orjson
from pydantic import BaseModel, Field

from cft_construct.interfaces.cli.config import JobConfig, run_job
from cft_construct.modules.base_field import parse_place, reduce
from cft_construct.modules.extension_analyzer import Projection, analyze, ramified_places, split_places
from cft_construct.modules.morphism_builder import CharMorphismData, to_document
from cft_construct.modules.poly_synth import character_kernel, gaussian_period_polynomial

logger = logging.getLogger(__name__)

_PLACE_FIELDS = ("S", "v_places", "w_places")
_ELEMENT_FIELDS = ("alphas", "gamma", "pis")
_ROOT_FIELDS = {"b": "v_places", "b_prime": "w_places"}


class ExpectedValues(BaseModel):
    document: dict[str, Any] = Field(default_factory=dict, description="Fields of the data document")
    conductors: dict[str, list[str]] = Field(default_factory=dict, description="Ramified places per projection, in slot order")
    split: dict[str, list[str]] = Field(default_factory=dict, description="Split places per projection, in canonical place order")
    polynomials: dict[str, str] = Field(default_factory=dict, description="Period polynomial per projection")
    hnp: bool | None = None
    verdict: bool | None = None


class Fixture(BaseModel):
    name: str
    description: str
    job: JobConfig
    expected: ExpectedValues


def fixture_names() -> list[str]:
    return sorted(
        entry.name.removesuffix(".json")
        for entry in resources.files("cft_construct.fixtures").iterdir()
        if entry.name.endswith(".json")
    )


def load_fixture(name: str) -> Fixture:
    """Load a shipped example by name.

    Raises:
        ValueError: If no such fixture exists
    """
    if name not in fixture_names():
        raise ValueError(f"Unknown fixture {name!r}, available: {', '.join(fixture_names())}")
    payload = resources.files("cft_construct.fixtures").joinpath(f"{name}.json").read_bytes()
    return Fixture.model_validate(orjson.loads(payload))


def _places(data: CharMorphismData, texts: list[str]) -> list[str]:
    return [str(parse_place(data.field, text)) for text in texts]


def _normalise(data: CharMorphismData, key: str, value: Any) -> Any:
    K = data.field
    if key in _PLACE_FIELDS:
        return [str(parse_place(K, text)) for text in value]
    if key in _ELEMENT_FIELDS:
        return [str(K.parse_element(text)) for text in value]
    if key in _ROOT_FIELDS:
        slots = getattr(data, _ROOT_FIELDS[key])
        return [str(reduce(K.parse_element(text), place)) for text, place in zip(value, slots)]
    return value


def replay(fixture: Fixture) -> tuple[CharMorphismData, list[str]]:
    """Run a fixture's job and list every difference from its expected values."""
    data = run_job(fixture.job)
    expected = fixture.expected
    document = to_document(data).model_dump()
    G = data.plan.group
    mismatches: list[str] = []

    for key, value in expected.document.items():
        if key not in document:
            mismatches.append(f"document has no field {key!r}")
            continue
        want = _normalise(data, key, value)
        if document[key] != want:
            mismatches.append(f"{key}: expected {want}, got {document[key]}")

    for name, places in expected.conductors.items():
        got = [str(v) for v in ramified_places(data, Projection.parse(G, name))]
        if got != _places(data, places):
            mismatches.append(f"conductor of {name}: expected {_places(data, places)}, got {got}")

    for name, places in expected.split.items():
        split = split_places(data, Projection.parse(G, name), n=len(places))
        got = [str(entry.place) for entry in split]
        if got != _places(data, places):
            mismatches.append(f"split places of {name}: expected {_places(data, places)}, got {got}")

    for name, polynomial in expected.polynomials.items():
        got = str(gaussian_period_polynomial(character_kernel(data, Projection.parse(G, name))))
        if got != polynomial:
            mismatches.append(f"polynomial of {name}: expected {polynomial}, got {got}")

    if expected.hnp is not None or expected.verdict is not None:
        report = analyze(data, projections=[], split_count=0)
        if expected.hnp is not None and report.hnp.verdict != expected.hnp:
            mismatches.append(f"hnp: expected {expected.hnp}, got {report.hnp.verdict}")
        if expected.verdict is not None and report.verdict != expected.verdict:
            mismatches.append(f"verdict: expected {expected.verdict}, got {report.verdict}")

    logger.info(f"Fixture {fixture.name}: {len(mismatches)} mismatches")
    return data, mismatches

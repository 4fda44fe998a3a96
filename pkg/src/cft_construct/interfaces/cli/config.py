import logging
from pathlib import Path

import orjson
from pydantic import BaseModel, Field, field_validator

from cft_construct.modules.base_field import BaseField, FieldElement, build_S, s_unit_generators
from cft_construct.modules.morphism_builder import (
    AbelianGroupSpec,
    BuildOverrides,
    CharMorphismData,
    SearchMode,
    build,
    plan_group,
)
from cft_construct.modules.residue_arith import GeneratorOrdering

logger = logging.getLogger(__name__)


class JobConfig(BaseModel):
    """Class for a construction job read from a JSON job file"""

    d: int | None = Field(None, description="Squarefree negative d of Q(sqrt(d)); absent for Q")
    group: list[int] = Field(..., description="Cyclic orders of G, each at least 2")
    alphas: list[str] = Field(default_factory=list, description="Elements that must become norms")
    search_bound: int | None = Field(None, description="Largest rational prime below an inspected place")
    overrides: BuildOverrides = Field(default_factory=BuildOverrides)
    out: str | None = Field(None, description="Where to write the data document")
    search_mode: SearchMode | None = None
    ordering: GeneratorOrdering | None = None

    @field_validator("group")
    @classmethod
    def _check_group(cls, group: list[int]) -> list[int]:
        if not group or any(n < 2 for n in group):
            raise ValueError(f"Group factors must be at least 2, got {group}")
        return group

    @classmethod
    def load(cls, path: str | Path) -> "JobConfig":
        return cls.model_validate(orjson.loads(Path(path).read_bytes()))

    def base_field(self) -> BaseField:
        return BaseField.rational() if self.d is None else BaseField.imag_quadratic(self.d)

    def parsed_alphas(self) -> list[FieldElement]:
        K = self.base_field()
        return [K.parse_element(alpha) for alpha in self.alphas]


def run_job(job: JobConfig) -> CharMorphismData:
    """build_S, s_unit_generators, plan_group and build, in that order."""
    K = job.base_field()
    alphas = job.parsed_alphas()
    S = build_S(K, alphas)
    logger.info(f"S = {', '.join(str(v) for v in S)}")
    basis = s_unit_generators(K, S)
    logger.info(f"S-unit generators: {', '.join(str(g) for g in basis.gamma)}")
    plan = plan_group(AbelianGroupSpec(tuple(job.group)))
    return build(
        basis,
        plan,
        alphas,
        mode=job.search_mode,
        ordering=job.ordering,
        bound=job.search_bound,
        overrides=job.overrides,
    )

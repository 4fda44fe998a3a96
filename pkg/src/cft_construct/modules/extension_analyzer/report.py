import logging

import orjson
from pydantic import BaseModel, Field

from cft_construct.modules.extension_analyzer.artin import (
    decomposition_groups,
    ramification_indices,
    ramified_places,
    split_places,
)
from cft_construct.modules.extension_analyzer.certificate import LocalNormCertificate, local_norm_certificate
from cft_construct.modules.extension_analyzer.hnp import HnpResult, hnp_check
from cft_construct.modules.extension_analyzer.projection import Projection
from cft_construct.modules.morphism_builder import JSON_OPTIONS, CharMorphismData

logger = logging.getLogger(__name__)


class Ramification(BaseModel):
    place: str
    index: int = Field(..., description="Order of the inertia group")
    discriminant_exponent: int = Field(..., description="|H| - |H| / index")


class ProjectionReport(BaseModel):
    name: str
    moduli: list[int] = Field(..., description="Cyclic orders of the quotient H")
    conductor: list[str] = Field(..., description="Ramified places; their product is the conductor")
    ramification: list[Ramification]
    split: list[str] = Field(..., description="First completely split places in canonical order")
    split_in_s: list[str] = Field(..., description="The places of S among them")


class DecompositionGroup(BaseModel):
    place: str
    generators: list[list[int]]


class AnalysisReport(BaseModel):
    field: str
    group: list[int]
    conductor: list[str]
    ramified: list[str]
    decomposition_groups: list[DecompositionGroup]
    hnp: HnpResult
    local_norms: list[LocalNormCertificate]
    projections: list[ProjectionReport]

    @property
    def verdict(self) -> bool:
        return self.hnp.verdict and all(certificate.verdict for certificate in self.local_norms)

    def to_json(self) -> bytes:
        return orjson.dumps(self.model_dump(), option=JSON_OPTIONS)


def project(
    data: CharMorphismData,
    projection: Projection,
    split_count: int | None = None,
    bound: int | None = None,
) -> ProjectionReport:
    split = split_places(data, projection, split_count, bound)
    return ProjectionReport(
        name=projection.name,
        moduli=list(projection.moduli),
        conductor=[str(v) for v in ramified_places(data, projection)],
        ramification=[
            Ramification(place=str(v), index=index, discriminant_exponent=exponent)
            for v, index, exponent in ramification_indices(data, projection)
        ],
        split=[str(entry.place) for entry in split],
        split_in_s=[str(entry.place) for entry in split if entry.in_s],
    )


def analyze(
    data: CharMorphismData,
    projections: list[Projection] | None = None,
    split_count: int | None = None,
    bound: int | None = None,
) -> AnalysisReport:
    """Collect everything checkable about the extension defined by the data.

    Args:
        data: A constructed or loaded characteristic morphism
        projections: Quotients to describe (defaults to every cyclic factor and the identity)
        split_count: Length of every split list
        bound: Search bound for the split lists
    """
    projections = projections if projections is not None else Projection.all_for(data.plan.group)
    ramified = [str(v) for v in ramified_places(data)]
    report = AnalysisReport(
        field=str(data.field),
        group=list(data.plan.group.factors),
        conductor=ramified,
        ramified=ramified,
        decomposition_groups=[
            DecompositionGroup(place=str(v), generators=generators)
            for v, generators in decomposition_groups(data)
        ],
        hnp=hnp_check(data),
        local_norms=local_norm_certificate(data),
        projections=[project(data, projection, split_count, bound) for projection in projections],
    )
    logger.info(f"Analysis of {data.field} / {data.plan.group}: HNP {report.hnp.verdict}, verdict {report.verdict}")
    return report

from .artin import (
    SplitPlace,
    artin_symbol,
    decomposition_groups,
    ramification_indices,
    ramified_places,
    slot_images,
    split_places,
    standard_vector,
)
from .certificate import LocalNormCertificate, local_norm_certificate
from .hnp import HnpResult, hnp_check, wedge, wedge_span_check, wedge_square
from .projection import Projection
from .report import AnalysisReport, ProjectionReport, analyze, project

__all__ = [
    "AnalysisReport",
    "HnpResult",
    "LocalNormCertificate",
    "Projection",
    "ProjectionReport",
    "SplitPlace",
    "analyze",
    "artin_symbol",
    "decomposition_groups",
    "hnp_check",
    "local_norm_certificate",
    "project",
    "ramification_indices",
    "ramified_places",
    "slot_images",
    "split_places",
    "standard_vector",
    "wedge",
    "wedge_span_check",
    "wedge_square",
]

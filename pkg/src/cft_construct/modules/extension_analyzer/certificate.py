import logging

from pydantic import BaseModel, Field

from cft_construct.core.lattice import mat_vec
from cft_construct.modules.base_field import FieldElement, factor_principal, reduce, residue_field, s_unit_exponents
from cft_construct.modules.morphism_builder import CharMorphismData

logger = logging.getLogger(__name__)


class SClause(BaseModel):
    verified: bool = Field(..., description="R annihilates the standard coordinates of every S-unit generator")
    images: list[list[int]] = Field(..., description="Image in G of each gamma_i")


class ResidueWitness(BaseModel):
    place: str = Field(..., description="A place of T")
    residue: str = Field(..., description="alpha modulo the place")
    exponent: int = Field(..., description="(q - 1) / e")
    power: str = Field(..., description="residue ** exponent, which must be 1")
    verified: bool


class OutsideClause(BaseModel):
    verified: bool = Field(..., description="alpha is a unit at every place outside S")
    support: list[str] = Field(..., description="Places where alpha has nonzero valuation")


class LocalNormCertificate(BaseModel):
    alpha: str
    s_unit_exponents: list[int] = Field(..., description="Exponents of gamma_0..gamma_r in alpha")
    s_clause: SClause
    t_clauses: list[ResidueWitness]
    outside: OutsideClause
    verdict: bool


def local_norm_certificate(data: CharMorphismData, alphas: list[FieldElement] | None = None) -> list[LocalNormCertificate]:
    """Certify that each alpha is a local norm everywhere.

    At S the local maps are trivial because R kills every S-unit; at the
    places of T alpha is an e-th power in the residue field; everywhere else
    alpha is a unit and the extension is unramified.

    Raises:
        SUnitError: If some alpha is not an S-unit, so that S must be enlarged
    """
    alphas = data.alphas if alphas is None else alphas
    moduli = data.plan.moduli
    images = [
        [x % n for x, n in zip(mat_vec(data.R, data.standard_coordinates(gamma)), moduli)]
        for gamma in data.basis.gamma
    ]
    s_clause = SClause(verified=not any(any(image) for image in images), images=images)

    certificates = []
    for alpha in alphas:
        torsion_exponent, exponents = s_unit_exponents(data.basis, alpha)

        witnesses = []
        for place in data.slots:
            residue = reduce(alpha, place)
            exponent = (residue_field(place).q - 1) // data.e
            power = residue**exponent
            witnesses.append(
                ResidueWitness(
                    place=str(place),
                    residue=str(residue),
                    exponent=exponent,
                    power=str(power),
                    verified=power.is_one(),
                )
            )

        support = [v for v, _ in factor_principal(alpha)]
        outside = OutsideClause(
            verified=all(v in data.basis.S for v in support),
            support=[str(v) for v in support],
        )
        verdict = s_clause.verified and outside.verified and all(w.verified for w in witnesses)
        logger.info(f"Local norm certificate for {alpha}: {'valid' if verdict else 'INVALID'}")
        certificates.append(
            LocalNormCertificate(
                alpha=str(alpha),
                s_unit_exponents=[torsion_exponent, *exponents],
                s_clause=s_clause,
                t_clauses=witnesses,
                outside=outside,
                verdict=verdict,
            )
        )
    return certificates

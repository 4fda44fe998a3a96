import orjson
from pydantic import BaseModel, Field

from cft_construct.core.exceptions import InvariantBreachError, NotIntegralError, ResidueFieldError
from cft_construct.modules.base_field import BaseField, SUnitBasis, parse_place, residue_field
from cft_construct.modules.morphism_builder.builder import CharMorphismData, check_invariants
from cft_construct.modules.morphism_builder.group_plan import AbelianGroupSpec, plan_group

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2


class CharMorphismDocument(BaseModel):
    """Canonical interchange form of CharMorphismData; every value is a string or an integer."""

    d: int | None = Field(None, description="d of Q(sqrt(d)), absent for Q")
    group: list[int] = Field(..., description="Cyclic orders of G")
    e: int = Field(..., description="Exponent used for the construction")
    pairs: list[list[int]] = Field(..., description="Pair enumeration (m_i, n_i), 0-based")
    C: list[list[int]] = Field(..., description="Matrix of (Z/eZ)^k -> G")
    alphas: list[str] = Field(..., description="Elements realised as norms")
    S: list[str] = Field(..., description="The places of S")
    gamma: list[str] = Field(..., description="S-unit generators, torsion first")
    v_places: list[str] = Field(..., description="Places v_1..v_k'")
    w_places: list[str] = Field(..., description="Places w_1..w_k'")
    b: list[str] = Field(..., description="Roots b_i as residues at v_i")
    b_prime: list[str] = Field(..., description="Roots b_i' as residues at w_i")
    pis: list[str] = Field(..., description="Uniformisers pi_i at v_i")
    c_vectors: list[list[int]] = Field(..., description="Exponents c of u_j = prod pi_s^-c_s")
    l: list[list[int]] = Field(..., description="dlog of pi_j^-1 at v_m")
    l_prime: list[list[int]] = Field(..., description="dlog of pi_j^-1 at w_m")
    A: list[list[int]] = Field(..., description="Change of basis matrix")
    B: list[list[int]] = Field(..., description="Matrix of Psi")
    R: list[list[int]] = Field(..., description="R = C B A^-1 modulo e")

    def to_json(self) -> bytes:
        return orjson.dumps(self.model_dump(), option=JSON_OPTIONS)

    @classmethod
    def from_json(cls, payload: bytes | str) -> "CharMorphismDocument":
        return cls.model_validate(orjson.loads(payload))


def to_document(data: CharMorphismData) -> CharMorphismDocument:
    return CharMorphismDocument(
        d=data.field.d,
        group=list(data.plan.group.factors),
        e=data.e,
        pairs=[list(pair) for pair in data.plan.pairs],
        C=data.plan.C,
        alphas=[str(alpha) for alpha in data.alphas],
        S=[str(v) for v in data.basis.S],
        gamma=[str(g) for g in data.basis.gamma],
        v_places=[str(v) for v in data.v_places],
        w_places=[str(w) for w in data.w_places],
        b=[str(root) for root in data.b],
        b_prime=[str(root) for root in data.b_prime],
        pis=[str(pi) for pi in data.pis],
        c_vectors=data.c_vectors,
        l=data.l,
        l_prime=data.l_prime,
        A=data.A,
        B=data.B,
        R=data.R,
    )


def from_document(document: CharMorphismDocument) -> CharMorphismData:
    """Rebuild CharMorphismData from its document and re-check its invariants.

    The discrete logarithms behind l, l', A and B are recomputed from the
    places, roots and uniformisers, so a document whose matrices were edited
    by hand is rejected.

    Raises:
        ValueError: If the document is malformed or inconsistent
    """
    K = BaseField.rational() if document.d is None else BaseField.imag_quadratic(document.d)
    plan = plan_group(AbelianGroupSpec(tuple(document.group)))
    if plan.e != document.e or [list(pair) for pair in plan.pairs] != document.pairs:
        raise ValueError("Document group data does not match its plan")

    basis = SUnitBasis(
        field=K,
        S=tuple(parse_place(K, text) for text in document.S),
        gamma=tuple(K.parse_element(text) for text in document.gamma),
    )
    v_places = [parse_place(K, text) for text in document.v_places]
    w_places = [parse_place(K, text) for text in document.w_places]
    expected_slots = 1 if plan.is_cyclic else plan.kprime
    if len(v_places) != expected_slots or len(w_places) != (0 if plan.is_cyclic else plan.kprime):
        raise ValueError(f"Document lists {len(v_places)} v and {len(w_places)} w places for {plan.group}")

    data = CharMorphismData(
        basis=basis,
        plan=plan,
        alphas=[K.parse_element(text) for text in document.alphas],
        v_places=v_places,
        w_places=w_places,
        b=[residue_field(v).parse(text) for v, text in zip(v_places, document.b)],
        b_prime=[residue_field(w).parse(text) for w, text in zip(w_places, document.b_prime)],
        pis=[K.parse_element(text) for text in document.pis],
        c_vectors=document.c_vectors,
        l=document.l,
        l_prime=document.l_prime,
        A=document.A,
        B=document.B,
        R=document.R,
    )
    try:
        check_invariants(data)
    except (InvariantBreachError, NotIntegralError, ResidueFieldError) as e:
        raise ValueError(f"Document fails the construction invariants: {e}") from e
    return data

import logging
from dataclasses import dataclass
from enum import Enum
from math import prod

from pydantic import BaseModel, Field

from cft_construct.core.exceptions import InvariantBreachError
from cft_construct.core.lattice import IntMatrix, mat_mul, mat_vec
from cft_construct.modules.base_field import (
    BaseField,
    FieldElement,
    PrimePlace,
    SUnitBasis,
    is_uniformiser,
    parse_place,
    reduce,
    residue_field,
    uniformiser,
)
from cft_construct.modules.morphism_builder.group_plan import GroupPlan
from cft_construct.modules.morphism_builder.linalg import (
    invert_mod_e,
    is_invertible_mod_e,
    is_surjective,
    solve_mod_e,
)
from cft_construct.modules.place_search import SearchCursor, SearchSpec, is_admissible, next_place
from cft_construct.modules.residue_arith import (
    GeneratorOrdering,
    QuotientGenerator,
    Residue,
    dlog_mod_e,
    generates_quotient,
    pick_generator,
)
from cft_construct.settings import settings


class SearchMode(str, Enum):
    INTERLEAVED = "interleaved"
    V_FIRST = "v_first"


class BuildOverrides(BaseModel):
    """Pinned choices for the construction; None entries are searched as usual."""

    v_places: list[str | None] = Field(default_factory=list, description="Places v_1..v_k'")
    w_places: list[str | None] = Field(default_factory=list, description="Places w_1..w_k'")
    b: list[str | None] = Field(default_factory=list, description="Elements reducing to the roots b_i at v_i")
    b_prime: list[str | None] = Field(default_factory=list, description="Elements reducing to the roots b_i' at w_i")
    pis: list[str | None] = Field(default_factory=list, description="Uniformisers pi_i at v_i")

    def pinned(self, name: str, index: int) -> str | None:
        values = getattr(self, name)
        return values[index] if index < len(values) else None


@dataclass(frozen=True)
class CharMorphismData:
    """Everything that determines the characteristic morphism rho_S^T.

    Slots are ordered v_1, w_1, ..., v_k', w_k' (just v_1 for cyclic groups).
    l[m][j] and l_prime[m][j] are the discrete logarithms of pi_j^-1 at v_m and
    w_m, with l[m][m] = 0. R = C * B * A^-1 is stored modulo e; row i is read
    modulo the i-th cyclic order of G.
    """
    basis: SUnitBasis
    plan: GroupPlan
    alphas: list[FieldElement]
    v_places: list[PrimePlace]
    w_places: list[PrimePlace]
    b: list[Residue]
    b_prime: list[Residue]
    pis: list[FieldElement]
    c_vectors: list[list[int]]
    l: IntMatrix
    l_prime: IntMatrix
    A: IntMatrix
    B: IntMatrix
    R: IntMatrix

    @property
    def field(self) -> BaseField:
        return self.basis.field

    @property
    def e(self) -> int:
        return self.plan.e

    @property
    def slots(self) -> list[PrimePlace]:
        if self.plan.is_cyclic:
            return list(self.v_places)
        return [place for pair in zip(self.v_places, self.w_places) for place in pair]

    @property
    def generators(self) -> list[QuotientGenerator]:
        if self.plan.is_cyclic:
            roots = list(self.b)
        else:
            roots = [root for pair in zip(self.b, self.b_prime) for root in pair]
        return [QuotientGenerator(root, self.e) for root in roots]

    def reduced_R(self) -> IntMatrix:
        return [[x % n for x in row] for row, n in zip(self.R, self.plan.moduli)]

    def standard_coordinates(self, x: FieldElement) -> list[int]:
        """Coordinates in the standard basis of the image of a unit at every slot."""
        return [
            dlog_mod_e(reduce(x, place), generator)
            for place, generator in zip(self.slots, self.generators)
        ]


def change_of_basis_matrix(l: IntMatrix, l_prime: IntMatrix, e: int) -> IntMatrix:
    """A: column 2j is the unit vector at v_j, column 2j+1 stacks l[m][j] over l_prime[m][j]."""
    kprime = len(l)
    A = [[0] * (2 * kprime) for _ in range(2 * kprime)]
    for j in range(kprime):
        A[2 * j][2 * j] = 1
        for m in range(kprime):
            A[2 * m][2 * j + 1] = l[m][j] % e
            A[2 * m + 1][2 * j + 1] = l_prime[m][j] % e
    return A


def pair_matrix(plan: GroupPlan) -> IntMatrix:
    """B: e_i maps to f_{m_i} and e_i' to f_{n_i}."""
    B = [[0] * (2 * plan.kprime) for _ in range(plan.k)]
    for i, (m, n) in enumerate(plan.pairs):
        B[m][2 * i] = 1
        B[n][2 * i + 1] = 1
    return B


def u_values(data: CharMorphismData) -> list[FieldElement]:
    """u_j = prod_s pi_s^-c_s for every step j."""
    K = data.field
    return [
        prod((pi ** (-c) for pi, c in zip(data.pis, c_vector)), start=K.one())
        for c_vector in data.c_vectors
    ]


class CharMorphismBuilder:
    """Chooses the places v_i, w_i and assembles the matrices A, B and R."""

    def __init__(
        self,
        basis: SUnitBasis,
        plan: GroupPlan,
        alphas: list[FieldElement] | None = None,
        mode: SearchMode | str | None = None,
        ordering: GeneratorOrdering | str | None = None,
        bound: int | None = None,
        overrides: BuildOverrides | None = None,
    ):
        self.logger = logging.getLogger(__name__)
        self.basis = basis
        self.plan = plan
        self.alphas = list(alphas or [])
        self.mode = SearchMode(mode or settings.SEARCH_MODE)
        self.ordering = GeneratorOrdering(ordering or settings.GENERATOR_ORDERING)
        self.overrides = overrides or BuildOverrides()
        self.v_spec = SearchSpec(
            field=basis.field,
            S=basis.S,
            e=plan.e,
            xs=basis.gamma,
            bound=bound or settings.SEARCH_BOUND,
        )

        self._used: set[PrimePlace] = set()
        self._v_cursor: SearchCursor | None = None
        self.v_places: list[PrimePlace] = []
        self.w_places: list[PrimePlace] = []
        self.b: list[Residue] = []
        self.b_prime: list[Residue] = []
        self.pis: list[FieldElement] = []
        self.c_vectors: list[list[int]] = []
        kprime = plan.kprime
        self.l_prime: IntMatrix = [[0] * kprime for _ in range(kprime)]

    def _pick_root(self, place: PrimePlace, name: str, index: int) -> Residue:
        pinned = self.overrides.pinned(name, index)
        override = None
        if pinned is not None:
            override = reduce(self.basis.field.parse_element(pinned), place)
        return pick_generator(residue_field(place), self.plan.e, self.ordering, override).b

    def _choose_v(self, j: int) -> None:
        pinned = self.overrides.pinned("v_places", j)
        spec = self.v_spec.with_target(None, self._used)
        if pinned is not None:
            v = parse_place(self.basis.field, pinned)
            if not is_admissible(spec, v):
                raise ValueError(f"Pinned place v_{j + 1} = {v} violates the membership conditions")
        else:
            v, self._v_cursor = next_place(spec, self._v_cursor)
        self._used.add(v)
        self.v_places.append(v)
        self.b.append(self._pick_root(v, "b", j))

        pinned_pi = self.overrides.pinned("pis", j)
        if pinned_pi is not None:
            pi = self.basis.field.parse_element(pinned_pi)
            if not is_uniformiser(pi, self.basis.S, v):
                raise ValueError(f"Pinned {pi} is not an S-unit uniformiser at {v}")
        else:
            pi = uniformiser(self.basis.S, v)
        self.pis.append(pi)
        self.logger.info(f"v_{j + 1} = {v}, b_{j + 1} = {self.b[-1]}, pi_{j + 1} = {pi}")

    def _dlog_inverse(self, x: FieldElement, place: PrimePlace, root: Residue) -> int:
        return -dlog_mod_e(reduce(x, place), QuotientGenerator(root, self.plan.e)) % self.plan.e

    def _choose_w(self, j: int) -> None:
        e = self.plan.e
        for m in range(j):
            self.l_prime[m][j] = self._dlog_inverse(self.pis[j], self.w_places[m], self.b_prime[m])

        block = [[self.l_prime[m][s] for s in range(j)] for m in range(j)]
        c_vector = solve_mod_e(block, [self.l_prime[m][j] for m in range(j)], e)
        self.c_vectors.append(c_vector)
        u = prod((pi ** (-c) for pi, c in zip(self.pis, c_vector)), start=self.basis.field.one())
        target = u * self.pis[j]

        spec = self.v_spec.with_target(target, self._used)
        pinned = self.overrides.pinned("w_places", j)
        if pinned is not None:
            w = parse_place(self.basis.field, pinned)
            if not is_admissible(spec, w):
                raise ValueError(f"Pinned place w_{j + 1} = {w} violates the membership conditions")
        else:
            w, _ = next_place(spec)
        self._used.add(w)
        self.w_places.append(w)
        self.b_prime.append(self._pick_root(w, "b_prime", j))
        for s in range(j + 1):
            self.l_prime[j][s] = self._dlog_inverse(self.pis[s], w, self.b_prime[j])
        self.logger.info(f"w_{j + 1} = {w}, b'_{j + 1} = {self.b_prime[-1]}, c_{j + 1} = {c_vector}")

        prefix = [[self.l_prime[m][s] for s in range(j + 1)] for m in range(j + 1)]
        if not is_invertible_mod_e(prefix, e):
            raise InvariantBreachError(f"Leading {j + 1}x{j + 1} block of l' is not invertible mod {e}", step=j + 1)

    def _assemble(self) -> CharMorphismData:
        e = self.plan.e
        kprime = self.plan.kprime
        if self.plan.is_cyclic:
            l = [[0]]
            A = [[1]]
            B = [[1]]
        else:
            l = [
                [0 if m == j else self._dlog_inverse(self.pis[j], self.v_places[m], self.b[m]) for j in range(kprime)]
                for m in range(kprime)
            ]
            A = change_of_basis_matrix(l, self.l_prime, e)
            B = pair_matrix(self.plan)

        R = mat_mul(mat_mul(self.plan.C, B), invert_mod_e(A, e), e)
        data = CharMorphismData(
            basis=self.basis,
            plan=self.plan,
            alphas=self.alphas,
            v_places=self.v_places,
            w_places=self.w_places,
            b=self.b,
            b_prime=self.b_prime,
            pis=self.pis,
            c_vectors=self.c_vectors,
            l=l,
            l_prime=self.l_prime if not self.plan.is_cyclic else [],
            A=A,
            B=B,
            R=R,
        )
        check_invariants(data)
        return data

    def build(self) -> CharMorphismData:
        """Run the construction.

        Returns:
            CharMorphismData: The places, roots, uniformisers and matrices

        Raises:
            SearchBoundExceededError: If a place search exhausts its bound
            InvariantBreachError: If a construction invariant fails
            ValueError: If a pinned choice is invalid
        """
        self.logger.info(f"Building characteristic morphism for {self.plan.group} with e={self.plan.e}, mode={self.mode.value}")
        if self.plan.is_cyclic:
            self._choose_v(0)
        elif self.mode == SearchMode.INTERLEAVED:
            for j in range(self.plan.kprime):
                self._choose_v(j)
                self._choose_w(j)
        else:
            for j in range(self.plan.kprime):
                self._choose_v(j)
            for j in range(self.plan.kprime):
                self._choose_w(j)
        return self._assemble()


def recompute_dlogs(data: CharMorphismData) -> tuple[IntMatrix, IntMatrix]:
    """l and l' recomputed from the uniformisers, places and roots of data."""
    e = data.e
    if data.plan.is_cyclic:
        return [[0]], []

    def entry(pi: FieldElement, place: PrimePlace, root: Residue) -> int:
        return -dlog_mod_e(reduce(pi, place), QuotientGenerator(root, e)) % e

    kprime = data.plan.kprime
    l = [
        [0 if m == j else entry(data.pis[j], data.v_places[m], data.b[m]) for j in range(kprime)]
        for m in range(kprime)
    ]
    l_prime = [[entry(data.pis[j], data.w_places[m], data.b_prime[m]) for j in range(kprime)] for m in range(kprime)]
    return l, l_prime


def _check_matrices(data: CharMorphismData) -> None:
    e = data.e
    for i, (place, root) in enumerate(zip(data.slots, [g.b for g in data.generators])):
        if not generates_quotient(root, e):
            raise InvariantBreachError(f"The root at {place} does not generate F^x / F^x{e}", step=i // 2 + 1)
    for i, (pi, v) in enumerate(zip(data.pis, data.v_places)):
        if not is_uniformiser(pi, data.basis.S, v):
            raise InvariantBreachError(f"{pi} is not an S-unit uniformiser at {v}", step=i + 1)

    l, l_prime = recompute_dlogs(data)
    if l != data.l or l_prime != data.l_prime:
        raise InvariantBreachError("l and l' do not match the discrete logarithms of the uniformisers")

    if data.plan.is_cyclic:
        A, B = [[1]], [[1]]
    else:
        A, B = change_of_basis_matrix(l, l_prime, e), pair_matrix(data.plan)
        for j, c_vector in enumerate(data.c_vectors):
            block = [[l_prime[m][s] for s in range(j)] for m in range(j)]
            if mat_vec(block, c_vector, e) != [l_prime[m][j] % e for m in range(j)]:
                raise InvariantBreachError(f"c_{j + 1} does not solve its correction system", step=j + 1)
        for j in range(data.plan.kprime):
            prefix = [row[: j + 1] for row in l_prime[: j + 1]]
            if not is_invertible_mod_e(prefix, e):
                raise InvariantBreachError(f"Leading {j + 1}x{j + 1} block of l' is not invertible mod {e}", step=j + 1)
    if A != data.A or B != data.B:
        raise InvariantBreachError("A or B does not match the one rebuilt from l, l' and the pairs")
    if not is_invertible_mod_e(A, e):
        raise InvariantBreachError(f"A is not invertible modulo {e}")
    if mat_mul(data.R, A, e) != mat_mul(data.plan.C, B, e):
        raise InvariantBreachError(f"R * A differs from C * B modulo {e}")


def check_invariants(data: CharMorphismData) -> None:
    """Verify distinct places, the stored matrices, S-unit annihilation and surjectivity of R.

    l and l' are recomputed from the uniformisers and roots, A and B are
    rebuilt from them, and R * A must equal C * B modulo e.

    Raises:
        InvariantBreachError: If one of them fails
    """
    slots = data.slots
    if len(set(slots)) != len(slots) or any(place in data.basis.S for place in slots):
        raise InvariantBreachError("The places of T must be distinct and outside S")
    _check_matrices(data)

    moduli = data.plan.moduli
    for gamma in data.basis.gamma:
        image = mat_vec(data.R, data.standard_coordinates(gamma))
        if any(x % n for x, n in zip(image, moduli)):
            raise InvariantBreachError(f"R does not vanish on the S-unit {gamma}")

    if not is_surjective(data.R, moduli):
        raise InvariantBreachError("R is not surjective onto G")


def build(
    basis: SUnitBasis,
    plan: GroupPlan,
    alphas: list[FieldElement] | None = None,
    mode: SearchMode | str | None = None,
    ordering: GeneratorOrdering | str | None = None,
    bound: int | None = None,
    overrides: BuildOverrides | None = None,
) -> CharMorphismData:
    return CharMorphismBuilder(basis, plan, alphas, mode, ordering, bound, overrides).build()

from dataclasses import dataclass
from math import gcd, lcm, prod

from cft_construct.core.lattice import IntMatrix, mat_mul, mat_vec
from cft_construct.modules.morphism_builder import AbelianGroupSpec


@dataclass(frozen=True)
class Projection:
    """An epimorphism Pi: G -> H = Z/h_1 x ... x Z/h_s, as a matrix on G-coordinates."""
    name: str
    moduli: tuple[int, ...]
    matrix: IntMatrix

    @classmethod
    def identity(cls, G: AbelianGroupSpec) -> "Projection":
        m = len(G.factors)
        return cls("identity", G.factors, [[int(i == j) for j in range(m)] for i in range(m)])

    @classmethod
    def coordinate(cls, G: AbelianGroupSpec, index: int) -> "Projection":
        """Projection onto the index-th cyclic factor (0-based)."""
        if not 0 <= index < len(G.factors):
            raise ValueError(f"{G} has no cyclic factor {index + 1}")
        row = [int(j == index) for j in range(len(G.factors))]
        return cls(f"pi_{index + 1}", (G.factors[index],), [row])

    @classmethod
    def zero(cls, G: AbelianGroupSpec) -> "Projection":
        return cls("zero", (1,), [[0] * len(G.factors)])

    @classmethod
    def parse(cls, G: AbelianGroupSpec, text: str) -> "Projection":
        """Parse "identity", "zero" or a 1-based factor index."""
        label = text.strip().lower()
        if label in ("identity", "id", "all"):
            return cls.identity(G)
        if label == "zero":
            return cls.zero(G)
        try:
            index = int(label.removeprefix("pi_"))
        except ValueError as e:
            raise ValueError(f"Unknown projection {text!r}: {e}") from e
        return cls.coordinate(G, index - 1)

    @classmethod
    def all_for(cls, G: AbelianGroupSpec) -> list["Projection"]:
        """One projection per cyclic factor, then the identity."""
        return [cls.coordinate(G, i) for i in range(len(G.factors))] + [cls.identity(G)]

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def reduce(self, vector: list[int]) -> list[int]:
        return [x % h for x, h in zip(vector, self.moduli)]

    def apply(self, g: list[int]) -> list[int]:
        return self.reduce(mat_vec(self.matrix, g))

    def compose(self, R: IntMatrix) -> IntMatrix:
        """Pi * R with row i reduced modulo h_i."""
        return [[x % h for x in row] for row, h in zip(mat_mul(self.matrix, R), self.moduli)]

    def element_order(self, h: list[int]) -> int:
        return lcm(*(n // gcd(x, n) for x, n in zip(h, self.moduli))) if h else 1

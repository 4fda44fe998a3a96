from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from sympy import factorint


@dataclass(frozen=True)
class FiniteField:
    """The field F_p (degree 1) or F_p[t]/(t^2 - c1*t - c0) (degree 2).

    For residue fields of inert places of Q(sqrt(d)) with p odd, t is the image
    of sqrt(d) and the modulus is t^2 - d. For p = 2 the image of sqrt(d) is 1,
    so t is the image of (1 + sqrt(d))/2 instead.
    """
    p: int
    degree: int = 1
    c0: int = 0
    c1: int = 0

    @property
    def q(self) -> int:
        return self.p**self.degree

    def element(self, x: int, y: int = 0) -> "Residue":
        if self.degree == 1:
            y = 0
        return Residue(self, x % self.p, y % self.p)

    def one(self) -> "Residue":
        return self.element(1)

    def elements(self) -> Iterator["Residue"]:
        """Iterate over the nonzero elements, ordered by (y, x)."""
        for y in range(self.p if self.degree == 2 else 1):
            for x in range(self.p):
                if x or y:
                    yield Residue(self, x, y)

    def multiplicative_order_factors(self) -> dict[int, int]:
        return _factor(self.q - 1)

    def parse(self, text: str) -> "Residue":
        """Parse a residue written as "x" or "x+y*s"."""
        compact = text.replace(" ", "")
        if "*s" not in compact:
            return self.element(int(compact))
        head, _, _ = compact.rpartition("*s")
        split_at = max(head.rfind("+"), head.rfind("-", 1))
        if split_at <= 0:
            return self.element(0, int(head))
        return self.element(int(head[:split_at]), int(head[split_at:]))

    def __str__(self) -> str:
        if self.degree == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^2"


@lru_cache(maxsize=4096)
def _factor(n: int) -> dict[int, int]:
    return factorint(n)


@dataclass(frozen=True)
class Residue:
    """A nonzero or zero element x + y*t of a FiniteField."""
    field: FiniteField
    x: int
    y: int = 0

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_one(self) -> bool:
        return self.x == 1 and self.y == 0

    def __mul__(self, other: "Residue") -> "Residue":
        F = self.field
        p = F.p
        if F.degree == 1:
            return Residue(F, self.x * other.x % p, 0)
        a, b, c, d = self.x, self.y, other.x, other.y
        bd = b * d
        return Residue(F, (a * c + bd * F.c0) % p, (a * d + b * c + bd * F.c1) % p)

    def inverse(self) -> "Residue":
        if self.is_zero():
            raise ZeroDivisionError(f"Zero has no inverse in {self.field}")
        F = self.field
        p = F.p
        if F.degree == 1:
            return Residue(F, pow(self.x, -1, p), 0)
        x, y = self.x, self.y
        norm = (x * x + F.c1 * x * y - F.c0 * y * y) % p
        norm_inv = pow(norm, -1, p)
        return Residue(F, (x + F.c1 * y) * norm_inv % p, -y * norm_inv % p)

    def __pow__(self, exponent: int) -> "Residue":
        F = self.field
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if F.degree == 1:
            return Residue(F, pow(self.x, exponent, F.p), 0)
        result, base = F.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        if self.field.degree == 1 or self.y == 0:
            return str(self.x)
        return f"{self.x}+{self.y}*s"

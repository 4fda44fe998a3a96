"""Class groups of imaginary quadratic fields via reduced binary quadratic forms."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from sympy import Matrix
from sympy.core.intfunc import igcdex

from cft_construct.core.exceptions import ClassGroupError
from cft_construct.core.lattice import lattice_invariants, smith_form
from cft_construct.modules.base_field.field import BaseField
from cft_construct.modules.base_field.places import PlaceKind, PrimePlace
from cft_construct.settings import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class QuadraticForm:
    """The positive definite form a*x^2 + b*x*y + c*y^2."""
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def reduced(self) -> "QuadraticForm":
        a, b, c = self.a, self.b, self.c
        D = self.discriminant
        while True:
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            b = r
            c = (b * b - D) // (4 * a)
            if a <= c:
                break
            a, b = c, -b
        if a == c and b < 0:
            b = -b
        return QuadraticForm(a, b, c)

    def is_reduced(self) -> bool:
        return self == self.reduced()

    def compose(self, other: "QuadraticForm") -> "QuadraticForm":
        """Gaussian composition followed by reduction."""
        D = self.discriminant
        f1, f2 = (self, other) if self.a <= other.a else (other, self)
        a1, b1 = f1.a, f1.b
        a2, b2, c2 = f2.a, f2.b, f2.c

        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            u, _, d = (int(t) for t in igcdex(a2, a1))
            y1 = u
        if s % d == 0:
            y2, x2, d1 = -1, 0, d
        else:
            x2, y2, d1 = (int(t) for t in igcdex(s, d))
            y2 = -y2

        v1, v2 = a1 // d1, a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (b3 * b3 - D) // (4 * a3)
        return QuadraticForm(a3, b3, c3).reduced()

    def inverse(self) -> "QuadraticForm":
        return QuadraticForm(self.a, -self.b, self.c).reduced()

    def __pow__(self, exponent: int) -> "QuadraticForm":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = identity_form(self.discriminant), self
        while exponent:
            if exponent & 1:
                result = result.compose(base)
            base = base.compose(base)
            exponent >>= 1
        return result

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def identity_form(D: int) -> QuadraticForm:
    b = D % 2
    return QuadraticForm(1, b, (b * b - D) // 4)


def reduced_forms(D: int) -> list[QuadraticForm]:
    """All primitive reduced forms of discriminant D < 0, sorted."""
    forms = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0) or gcd(a, b, c) != 1:
                continue
            forms.append(QuadraticForm(a, b, c))
    return sorted(forms)


class ClassGroup:
    """The class group of K as a product of cyclic groups.

    Elements are represented by exponent vectors with respect to `generators`,
    coordinate i taken modulo `orders[i]`.
    """

    def __init__(self, field: BaseField):
        self.logger = logging.getLogger(__name__)
        self.field = field
        self.orders: list[int] = []
        self.generators: list[QuadraticForm] = []
        self._table: dict[QuadraticForm, list[int]] = {}
        self._V: list[list[int]] = []
        self._diagonal: list[int] = []

        if field.is_rational:
            return

        D = field.discriminant
        if abs(D) > settings.CLASS_GROUP_DISCRIMINANT_BOUND:
            raise ClassGroupError(
                f"Class group too large: |D|={abs(D)} exceeds {settings.CLASS_GROUP_DISCRIMINANT_BOUND}"
            )
        self._compute(reduced_forms(D))

    def _compute(self, forms: list[QuadraticForm]) -> None:
        h = len(forms)
        identity = identity_form(self.field.discriminant)
        table = {identity: []}
        greedy: list[QuadraticForm] = []
        relations: list[list[int]] = []

        for f in forms:
            if len(table) == h:
                break
            if f in table:
                continue
            n, power = 1, f
            while power not in table:
                power = power.compose(f)
                n += 1
            relation = [-c for c in table[power]] + [n]
            relations = [row + [0] for row in relations] + [relation]

            extended = {}
            for form, vector in table.items():
                current = form
                for k in range(n):
                    extended[current] = vector + [k]
                    current = current.compose(f)
            table = extended
            greedy.append(f)

        self._table = table
        if not greedy:
            return

        D_, _, V = smith_form(relations)
        V_inv = Matrix(V).inv()
        self._V = V
        self._diagonal = [D_[i][i] for i in range(len(relations))]
        for j, order in enumerate(self._diagonal):
            if order == 1:
                continue
            generator = identity
            for i, f in enumerate(greedy):
                generator = generator.compose(f ** int(V_inv[j, i]))
            self.orders.append(order)
            self.generators.append(generator)
        self.logger.debug(f"Class group of {self.field}: orders {self.orders}, generators {[str(g) for g in self.generators]}")

    @property
    def order(self) -> int:
        h = 1
        for n in self.orders:
            h *= n
        return h

    def dlog(self, form: QuadraticForm) -> list[int]:
        """Exponent vector of a form of the field discriminant."""
        if self.field.is_rational:
            return []
        vector = self._table[form.reduced()]
        if not vector:
            return [0] * len(self.orders)
        transformed = [
            sum(vector[i] * self._V[i][j] for i in range(len(vector))) for j in range(len(self._V))
        ]
        return [x % n for x, n in zip(transformed, self._diagonal) if n != 1]

    def place_form(self, place: PrimePlace) -> QuadraticForm:
        """The reduced form attached to the ideal class of a finite place."""
        D = self.field.discriminant
        if place.kind not in (PlaceKind.SPLIT, PlaceKind.RAMIFIED):
            return identity_form(D)
        coordinate = place.coordinate
        if self.field.omega_is_half:
            b = -coordinate
        else:
            b = -2 * coordinate
        return QuadraticForm(place.p, b, (b * b - D) // (4 * place.p)).reduced()

    def class_of(self, place: PrimePlace) -> list[int]:
        if self.field.is_rational or not place.is_finite:
            return [0] * len(self.orders)
        return self.dlog(self.place_form(place))

    def combine(self, vectors: list[list[int]], exponents: list[int]) -> list[int]:
        total = [0] * len(self.orders)
        for vector, exponent in zip(vectors, exponents):
            total = [t + exponent * x for t, x in zip(total, vector)]
        return [t % n for t, n in zip(total, self.orders)]

    def subgroup_order(self, vectors: list[list[int]]) -> int:
        """Order of the subgroup generated by the given class vectors."""
        if not self.orders:
            return 1
        relations = [[n if i == j else 0 for j in range(len(self.orders))] for i, n in enumerate(self.orders)]
        _, covolume = lattice_invariants(list(vectors) + relations, len(self.orders))
        return self.order // covolume


@lru_cache(maxsize=256)
def class_group(K: BaseField) -> ClassGroup:
    return ClassGroup(K)

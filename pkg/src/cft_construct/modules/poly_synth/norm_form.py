from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from sympy import Poly, Rational as SympyRational, resultant

from cft_construct.modules.poly_synth.periods import X

Coordinates = list[Fraction | int]


def _as_fraction(value: Rational | str) -> Fraction:
    return Fraction(value)


def _mul_sqrt(u: tuple[Fraction, Fraction], v: tuple[Fraction, Fraction], a: int) -> tuple[Fraction, Fraction]:
    """(p + q sqrt(a)) * (p' + q' sqrt(a))"""
    return u[0] * v[0] + a * u[1] * v[1], u[0] * v[1] + u[1] * v[0]


@dataclass(frozen=True)
class BiquadraticBasis:
    """The basis 1, sqrt(a), sqrt(b), sqrt(a)sqrt(b) of Q(sqrt(a), sqrt(b))."""
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b or 1 in (self.a, self.b):
            raise ValueError(f"sqrt({self.a}) and sqrt({self.b}) do not generate a biquadratic field")

    @property
    def dimension(self) -> int:
        return 4

    @property
    def labels(self) -> list[str]:
        return ["1", f"sqrt({self.a})", f"sqrt({self.b})", f"sqrt({self.a * self.b})"]

    def _split(self, coords: Coordinates) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        x = [_as_fraction(c) for c in coords]
        return (x[0], x[1]), (x[2], x[3])

    def norm(self, coords: Coordinates) -> Fraction:
        """N(A + B sqrt(b)) through the tower Q(sqrt(a), sqrt(b)) / Q(sqrt(a)) / Q."""
        A, B = self._split(coords)
        A2, B2 = _mul_sqrt(A, A, self.a), _mul_sqrt(B, B, self.a)
        C, D = A2[0] - self.b * B2[0], A2[1] - self.b * B2[1]
        return C * C - self.a * D * D

    def multiply(self, u: Coordinates, v: Coordinates) -> list[Fraction]:
        A, B = self._split(u)
        A_, B_ = self._split(v)
        BB = _mul_sqrt(B, B_, self.a)
        AA = _mul_sqrt(A, A_, self.a)
        first = (AA[0] + self.b * BB[0], AA[1] + self.b * BB[1])
        AB, BA = _mul_sqrt(A, B_, self.a), _mul_sqrt(B, A_, self.a)
        second = (AB[0] + BA[0], AB[1] + BA[1])
        return [first[0], first[1], second[0], second[1]]

    def minimal_polynomial(self) -> list[int]:
        """Coefficients of X^4 - 2(a+b) X^2 + (a-b)^2, constant first, for theta = sqrt(a) + sqrt(b)."""
        return [(self.a - self.b) ** 2, 0, -2 * (self.a + self.b), 0, 1]

    def to_power_basis(self, coords: Coordinates) -> list[Fraction]:
        """Coefficients of the element as a polynomial in theta = sqrt(a) + sqrt(b), constant first."""
        x0, x1, x2, x3 = (_as_fraction(c) for c in coords)
        a, b = self.a, self.b
        # sqrt(a) = (theta^3 - (3a + b) theta) / (2 (b - a)), sqrt(b) = theta - sqrt(a)
        sqrt_a = [Fraction(0), Fraction(-(3 * a + b), 2 * (b - a)), Fraction(0), Fraction(1, 2 * (b - a))]
        sqrt_b = [Fraction(0), 1 - sqrt_a[1], Fraction(0), -sqrt_a[3]]
        sqrt_ab = [Fraction(-(a + b), 2), Fraction(0), Fraction(1, 2), Fraction(0)]
        one = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
        return [x0 * e + x1 * s + x2 * t + x3 * u for e, s, t, u in zip(one, sqrt_a, sqrt_b, sqrt_ab)]

    def power_basis(self) -> "PowerBasis":
        return PowerBasis(tuple(self.minimal_polynomial()))


@dataclass(frozen=True)
class PowerBasis:
    """The basis 1, theta, ..., theta^(n-1) for theta a root of the given polynomial."""
    minimal_polynomial: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.minimal_polynomial) - 1

    def norm(self, coords: Coordinates) -> Fraction:
        """Res_X(f, g) / lc(f)^deg(g) for the element g(theta)."""
        f = Poly(list(reversed(self.minimal_polynomial)), X)
        g = Poly([SympyRational(str(_as_fraction(c))) for c in reversed(coords)], X, domain="QQ")
        if g.is_zero:
            return Fraction(0)
        value = resultant(f.as_expr(), g.as_expr(), X) / f.LC() ** g.degree()
        return Fraction(str(SympyRational(value)))


def norm_form_eval(basis: BiquadraticBasis | PowerBasis, coords: Coordinates) -> Fraction:
    """The exact norm N_{L/Q} of the element with the given coordinates.

    Raises:
        ValueError: If the number of coordinates does not match the basis
    """
    if len(coords) != basis.dimension:
        raise ValueError(f"Expected {basis.dimension} coordinates, got {len(coords)}")
    return basis.norm(coords)


def parse_basis(text: str) -> BiquadraticBasis | PowerBasis:
    """Parse "41,137" as a biquadratic basis or "poly:c0,c1,...,1" as a power basis."""
    label = text.strip()
    try:
        if label.startswith("poly:"):
            return PowerBasis(tuple(int(c) for c in label.removeprefix("poly:").split(",")))
        a, b = (int(c) for c in label.split(","))
    except ValueError as e:
        raise ValueError(f"Cannot parse basis {text!r}: {e}") from e
    return BiquadraticBasis(a, b)


def parse_coordinates(text: str) -> list[Fraction]:
    try:
        return [Fraction(c.strip()) for c in text.split(",")]
    except ValueError as e:
        raise ValueError(f"Cannot parse coordinates {text!r}: {e}") from e

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

from sympy import Poly, QQ, Symbol, SympifyError, factorint, fraction, sympify, together

_ROOT_PATTERN = re.compile(r"sqrt\(\s*(-?\d+)\s*\)")


class FieldKind(str, Enum):
    RATIONAL = "rational"
    IMAG_QUADRATIC = "imag_quadratic"


@dataclass(frozen=True)
class BaseField:
    """The base field K: either Q or Q(sqrt(d)) with d < 0 squarefree."""
    kind: FieldKind
    d: int | None = None

    def __post_init__(self) -> None:
        if self.kind == FieldKind.RATIONAL:
            if self.d is not None:
                raise ValueError("The rational field takes no d")
            return
        if self.d is None or self.d >= 0:
            raise ValueError(f"Imaginary quadratic fields need d < 0, got {self.d}")
        if any(exp > 1 for exp in factorint(-self.d).values()):
            raise ValueError(f"d={self.d} is not squarefree")

    @classmethod
    def rational(cls) -> "BaseField":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def imag_quadratic(cls, d: int) -> "BaseField":
        return cls(FieldKind.IMAG_QUADRATIC, d)

    @property
    def is_rational(self) -> bool:
        return self.kind == FieldKind.RATIONAL

    @property
    def discriminant(self) -> int:
        if self.is_rational:
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def omega_is_half(self) -> bool:
        """True when the ring of integers is Z[(1+sqrt(d))/2]."""
        return not self.is_rational and self.d % 4 == 1

    @property
    def minimal_polynomial(self) -> tuple[int, int]:
        """(c0, c1) with theta^2 = c1*theta + c0 for the integral generator theta."""
        if self.is_rational:
            return 0, 0
        if self.omega_is_half:
            return (self.d - 1) // 4, 1
        return self.d, 0

    def element(self, x: int, y: int = 0, den: int = 1) -> "FieldElement":
        return FieldElement(self, x, y, den)

    def from_fraction(self, value: Fraction | int) -> "FieldElement":
        value = Fraction(value)
        return FieldElement(self, value.numerator, 0, value.denominator)

    def from_integral_coords(self, u: int, v: int, n: int = 1) -> "FieldElement":
        """Build (u + v*theta)/n, where theta is the integral generator."""
        if self.omega_is_half:
            return FieldElement(self, 2 * u + v, v, 2 * n)
        return FieldElement(self, u, v, n)

    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def torsion_order(self) -> int:
        if self.d == -1:
            return 4
        if self.d == -3:
            return 6
        return 2

    def torsion_generator(self) -> "FieldElement":
        if self.d == -1:
            return self.element(0, 1)
        if self.d == -3:
            return self.element(1, 1, 2)
        return self.element(-1)

    def parse_element(self, text: str) -> "FieldElement":
        """Parse strings such as "37/16", "2+3*sqrt(-47)" or "(1+sqrt(-47))/2".

        Raises:
            ValueError: If the text is not an element of this field
        """
        s = Symbol("s")

        def _root(match: re.Match) -> str:
            if self.is_rational or int(match.group(1)) != self.d:
                raise ValueError(f"{match.group(0)} does not belong to {self}")
            return "s"

        cleaned = _ROOT_PATTERN.sub(_root, text.strip())
        try:
            expr = sympify(cleaned, locals={"s": s})
        except (SympifyError, TypeError, SyntaxError) as e:
            raise ValueError(f"Cannot parse element {text!r}: {e}") from e

        free = getattr(expr, "free_symbols", None)
        if free is None or free - {s}:
            raise ValueError(f"Cannot parse element {text!r}: unexpected symbols")

        numerator, denominator = fraction(together(expr))
        try:
            value = self._from_polynomial(numerator, s) / self._from_polynomial(denominator, s)
        except ZeroDivisionError as e:
            raise ValueError(f"Element {text!r} is not defined: {e}") from e
        return value

    def _from_polynomial(self, expr, s: Symbol) -> "FieldElement":
        poly = Poly(expr, s, domain=QQ)
        if self.is_rational:
            if poly.degree() > 0:
                raise ValueError(f"{expr} is not rational")
        else:
            poly = poly.rem(Poly(s**2 - self.d, s, domain=QQ))
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        c0 = coeffs[0] if coeffs else Fraction(0)
        c1 = coeffs[1] if len(coeffs) > 1 else Fraction(0)
        common = lcm(c0.denominator, c1.denominator)
        return FieldElement(self, int(c0 * common), int(c1 * common), common)

    def __str__(self) -> str:
        if self.is_rational:
            return "Q"
        return f"Q(sqrt({self.d}))"


@dataclass(frozen=True)
class FieldElement:
    """The element (x + y*sqrt(d))/den, kept in lowest terms with den > 0."""
    field: BaseField
    x: int
    y: int = 0
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ZeroDivisionError("Denominator must be nonzero")
        if self.field.is_rational and self.y:
            raise ValueError("Rational elements have no sqrt(d) part")
        sign = -1 if self.den < 0 else 1
        g = gcd(self.x, self.y, self.den)
        object.__setattr__(self, "x", sign * self.x // g)
        object.__setattr__(self, "y", sign * self.y // g)
        object.__setattr__(self, "den", sign * self.den // g)

    def _coerce(self, other: "FieldElement | int | Fraction") -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"Cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return NotImplemented

    @property
    def _d(self) -> int:
        return self.field.d or 0

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_one(self) -> bool:
        return self.x == 1 and self.y == 0 and self.den == 1

    def is_rational(self) -> bool:
        return self.y == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(
            self.field,
            self.x * other.den + other.x * self.den,
            self.y * other.den + other.y * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, -self.x, -self.y, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(
            self.field,
            self.x * other.x + self._d * self.y * other.y,
            self.x * other.y + self.y * other.x,
            self.den * other.den,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.field, self.x, -self.y, self.den)

    def norm(self) -> Fraction:
        return Fraction(self.x * self.x - self._d * self.y * self.y, self.den * self.den)

    def trace(self) -> Fraction:
        return Fraction(2 * self.x, self.den)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError(f"Zero has no inverse in {self.field}")
        norm_numerator = self.x * self.x - self._d * self.y * self.y
        return FieldElement(self.field, self.x * self.den, -self.y * self.den, norm_numerator)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.field.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def integral_coords(self) -> tuple[int, int, int]:
        """(u, v, n) with self = (u + v*theta)/n in the integral basis (1, theta)."""
        if self.field.omega_is_half:
            u, v, n = self.x - self.y, 2 * self.y, self.den
        else:
            u, v, n = self.x, self.y, self.den
        g = gcd(u, v, n)
        return u // g, v // g, n // g

    def is_integral(self) -> bool:
        return self.integral_coords()[2] == 1

    def __str__(self) -> str:
        if self.y == 0:
            return str(Fraction(self.x, self.den))
        root = f"sqrt({self.field.d})"
        if self.y == 1:
            tail = root
        elif self.y == -1:
            tail = f"-{root}"
        else:
            tail = f"{self.y}*{root}"
        if self.x == 0:
            body = tail
        elif tail.startswith("-"):
            body = f"{self.x}{tail}"
        else:
            body = f"{self.x}+{tail}"
        return body if self.den == 1 else f"({body})/{self.den}"

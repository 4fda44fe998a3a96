import random
from fractions import Fraction

import pytest
from sympy import legendre_symbol, primerange

from cft_construct.core.exceptions import PrecisionError, SearchBoundExceededError
from cft_construct.interfaces.cli.config import JobConfig, run_job
from cft_construct.modules.extension_analyzer import Projection
from cft_construct.modules.poly_synth import (
    BiquadraticBasis,
    DirichletData,
    IntegerPolynomial,
    PowerBasis,
    character_kernel,
    factor_degrees,
    frobenius_verify,
    gaussian_period_polynomial,
    norm_form_eval,
    parse_basis,
    parse_coordinates,
    unit_group_generators,
    unit_residues,
    working_precision,
)
from cft_construct.settings import settings


def _projection(data, name):
    return Projection.parse(data.plan.group, name)


class TestCharacters:
    def test_first_factor(self, biquadratic_data):
        dd = character_kernel(biquadratic_data, _projection(biquadratic_data, "pi_1"))
        assert (dd.f, dd.n) == (41, 2)
        assert dd.kernel == frozenset(a * a % 41 for a in range(1, 41))

    def test_zero_projection(self, biquadratic_data):
        dd = character_kernel(biquadratic_data, _projection(biquadratic_data, "zero"))
        assert (dd.f, dd.n) == (1, 1)
        assert str(gaussian_period_polynomial(dd)) == "X - 1"

    def test_identity(self, biquadratic_data):
        dd = character_kernel(biquadratic_data)
        assert (dd.f, dd.n) == (5617, 4)
        assert len(dd.cosets()) == 4

    def test_only_over_rationals(self, imag47_data):
        with pytest.raises(ValueError):
            character_kernel(imag47_data)

    def test_unit_group(self):
        assert unit_residues(10) == [1, 3, 7, 9]
        assert unit_residues(1) == [0]
        generators = unit_group_generators(35)
        assert len(generators) == 2
        assert [g % 5 for g in generators][1] == 1
        with pytest.raises(ValueError):
            unit_group_generators(12)

    def test_subgroup(self):
        dd = DirichletData.from_subgroup(7, {1, 6})
        assert dd.n == 3
        assert dd.cosets() == [[1, 6], [2, 5], [3, 4]]
        with pytest.raises(ValueError):
            DirichletData.from_subgroup(7, {1, 2, 3, 4})

    def test_character_is_multiplicative(self, biquadratic_data):
        dd = character_kernel(biquadratic_data)
        rng = random.Random(5617)
        for _ in range(30):
            a, b = rng.choice(sorted(dd.kernel | {3, 5, 7})), rng.randrange(1, 5617)
            if b % 41 == 0 or b % 137 == 0:
                continue
            expected = tuple((x + y) % 2 for x, y in zip(dd.character(a), dd.character(b)))
            assert dd.character(a * b % 5617) == expected

    def test_character_matches_legendre_symbols(self, biquadratic_data):
        dd = character_kernel(biquadratic_data)
        for p in primerange(3, 300):
            if p in (41, 137):
                continue
            assert dd.character(p) == (int(legendre_symbol(p, 41) == -1), int(legendre_symbol(p, 137) == -1))

    def test_conductor_bound(self, monkeypatch, biquadratic_data):
        monkeypatch.setattr(settings, "CHARACTER_CONDUCTOR_BOUND", 1000)
        assert character_kernel(biquadratic_data, _projection(biquadratic_data, "pi_1")).kernel
        dd = character_kernel(biquadratic_data)
        assert dd.n == 4
        with pytest.raises(SearchBoundExceededError):
            gaussian_period_polynomial(dd)


class TestLargeConductors:
    @pytest.fixture(scope="class")
    def cube_data(self):
        return run_job(JobConfig(group=[2, 2, 2], alphas=["7"]))

    def test_first_factor(self, cube_data):
        dd = character_kernel(cube_data, _projection(cube_data, "pi_1"))
        assert (dd.f, dd.n) == (302789, 2)

    def test_identity_without_enumerating_residues(self, cube_data):
        dd = character_kernel(cube_data)
        assert dd.f == 3729452113
        assert dd.n == 8
        assert len(dd.generators) == 6
        with pytest.raises(SearchBoundExceededError):
            dd.kernel


class TestPeriods:
    @pytest.mark.parametrize(
        "f, kernel, expected",
        [
            (41, {a * a % 41 for a in range(1, 41)}, "X^2 - X - 10"),
            (137, {a * a % 137 for a in range(1, 137)}, "X^2 - X - 34"),
            (5, {1, 4}, "X^2 - X - 1"),
            (7, {1, 6}, "X^3 - X^2 - 2*X + 1"),
        ],
    )
    def test_period_polynomials(self, f, kernel, expected):
        assert str(gaussian_period_polynomial(DirichletData.from_subgroup(f, kernel))) == expected

    def test_discriminant_only_involves_conductor(self):
        polynomial = gaussian_period_polynomial(DirichletData.from_subgroup(7, {1, 6}))
        assert polynomial.discriminant() == 49

    @pytest.mark.parametrize("f, kernel", [(41, {a * a % 41 for a in range(1, 41)}), (7, {1, 6}), (13, {1, 5, 8, 12})])
    def test_doubled_precision_reproduces(self, f, kernel):
        dd = DirichletData.from_subgroup(f, kernel)
        polynomial = gaussian_period_polynomial(dd)
        assert gaussian_period_polynomial(dd, precision=2 * working_precision(dd)) == polynomial

    def test_precision_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "PERIOD_MAX_PRECISION", 2)
        with pytest.raises(PrecisionError):
            gaussian_period_polynomial(DirichletData.from_subgroup(5, {1, 4}))

    def test_biquadratic_subfields(self, biquadratic_data):
        for name, expected in (("pi_1", "X^2 - X - 10"), ("pi_2", "X^2 - X - 34")):
            dd = character_kernel(biquadratic_data, _projection(biquadratic_data, name))
            assert str(gaussian_period_polynomial(dd)) == expected


class TestFrobenius:
    def test_factor_degrees(self):
        assert factor_degrees(IntegerPolynomial((-10, -1, 1)), 3) == [2]
        assert factor_degrees(IntegerPolynomial((-10, -1, 1)), 2) == [1, 1]

    def test_matching_polynomial(self, biquadratic_data):
        pi_1 = _projection(biquadratic_data, "pi_1")
        assert frobenius_verify(IntegerPolynomial((-10, -1, 1)), biquadratic_data, pi_1)

    def test_wrong_polynomial(self, biquadratic_data):
        pi_1 = _projection(biquadratic_data, "pi_1")
        assert not frobenius_verify(IntegerPolynomial((-34, -1, 1)), biquadratic_data, pi_1)

    def test_seeded_primes(self, biquadratic_data):
        pi_1 = _projection(biquadratic_data, "pi_1")
        wrong = IntegerPolynomial((-34, -1, 1))
        for seed in range(5):
            assert frobenius_verify(IntegerPolynomial((-10, -1, 1)), biquadratic_data, pi_1, trials=20, seed=seed)
            assert not frobenius_verify(wrong, biquadratic_data, pi_1, trials=40, seed=seed)

    def test_linear_polynomial(self, biquadratic_data):
        assert frobenius_verify(IntegerPolynomial((-1, 1)), biquadratic_data)


class TestNormForms:
    solution = [Fraction(4449545), Fraction(-1389743, 2), Fraction(760267, 2), Fraction(-118739, 2)]

    def test_recorded_solution(self):
        assert norm_form_eval(BiquadraticBasis(41, 137), self.solution) == Fraction(37, 16)

    def test_recorded_solution_through_power_basis(self):
        basis = BiquadraticBasis(41, 137)
        assert norm_form_eval(basis.power_basis(), basis.to_power_basis(self.solution)) == Fraction(37, 16)

    def test_small_norms(self):
        basis = BiquadraticBasis(41, 137)
        assert norm_form_eval(basis, [1, 0, 0, 0]) == 1
        assert norm_form_eval(basis, [1, 1, 0, 0]) == 1600
        assert norm_form_eval(basis, [0, 0, 1, 0]) == 18769

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            norm_form_eval(BiquadraticBasis(41, 137), [1, 2, 3])

    def test_methods_agree(self):
        rng = random.Random(2024)
        basis = BiquadraticBasis(5, 13)
        for _ in range(10):
            coords = [Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(4)]
            assert basis.norm(coords) == basis.power_basis().norm(basis.to_power_basis(coords))

    def test_multiplicative(self):
        rng = random.Random(99)
        basis = BiquadraticBasis(41, 137)
        for _ in range(10):
            u = [rng.randint(-20, 20) for _ in range(4)]
            v = [rng.randint(-20, 20) for _ in range(4)]
            assert basis.norm(basis.multiply(u, v)) == basis.norm(u) * basis.norm(v)

    def test_parse_basis(self):
        basis = parse_basis("poly:-2,0,1")
        assert isinstance(basis, PowerBasis)
        assert norm_form_eval(basis, [0, 1]) == -2
        assert parse_basis("41,137") == BiquadraticBasis(41, 137)
        assert parse_coordinates("1, -3/2") == [1, Fraction(-3, 2)]
        for text in ("41", "poly:a", "41,41"):
            with pytest.raises(ValueError):
                parse_basis(text)

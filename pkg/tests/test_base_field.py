import random
from collections import Counter
from fractions import Fraction

import pytest

from cft_construct.core.exceptions import ElementSearchError, NotIntegralError, SUnitError
from cft_construct.modules.base_field import (
    BaseField,
    PlaceKind,
    build_S,
    factor_principal,
    find_generator,
    is_uniformiser,
    iter_places,
    parse_place,
    place_from_generator,
    places_above,
    reduce,
    residue_field,
    s_unit_exponents,
    s_unit_generators,
    uniformiser,
    valuation,
)


class TestElements:
    def test_parse_and_print(self, K47):
        x = K47.parse_element("2+3*sqrt(-47)")
        assert x == K47.element(2, 3)
        assert str(x) == "2+3*sqrt(-47)"
        omega = K47.parse_element("(1+sqrt(-47))/2")
        assert omega == K47.element(1, 1, 2)
        assert str(omega) == "(1+sqrt(-47))/2"
        assert str(K47.element(0, -1)) == "-sqrt(-47)"

    def test_parse_rational(self, Q):
        assert Q.parse_element("37/16") == Q.from_fraction(Fraction(37, 16))
        assert str(Q.parse_element("37/16")) == "37/16"

    @pytest.mark.parametrize("text", ["sqrt(-5)", "x+1", "2+"])
    def test_parse_rejects(self, K47, text):
        with pytest.raises(ValueError):
            K47.parse_element(text)

    def test_rational_field_rejects_roots(self, Q):
        with pytest.raises(ValueError):
            Q.parse_element("sqrt(-47)")

    @pytest.mark.parametrize("d", [-12, 5, 0])
    def test_invalid_d(self, d):
        with pytest.raises(ValueError):
            BaseField.imag_quadratic(d)

    def test_norms(self, K47):
        assert K47.element(2, 3).norm() == 427
        assert K47.element(128, 3).norm() == 16807
        assert K47.element(-353, 48).norm() == 97 * 7**4

    def test_field_operations(self, K47):
        x = K47.element(2, 3)
        y = K47.element(1, 1, 2)
        assert (x * x.inverse()).is_one()
        assert (x / y) * y == x
        assert (x + y) - y == x
        assert x ** -2 * x**2 == K47.one()
        assert (x * x.conjugate()).norm() == x.norm() ** 2
        assert 1 + x == K47.element(3, 3)

    def test_integrality(self, K47):
        assert K47.element(1, 1, 2).is_integral()
        assert not BaseField.imag_quadratic(-5).element(1, 1, 2).is_integral()
        assert K47.element(1, 1, 2).integral_coords() == (0, 1, 1)


class TestPlaces:
    def test_places_above_two_split(self, K47):
        places = places_above(K47, 2)
        assert [str(v) for v in places] == ["(2,(1+sqrt(-47))/2)", "(2,(3+sqrt(-47))/2)"]
        assert all(v.kind == PlaceKind.SPLIT for v in places)

    def test_decomposition_types(self, K47):
        assert places_above(K47, 5)[0].kind == PlaceKind.INERT
        assert places_above(K47, 47)[0].kind == PlaceKind.RAMIFIED
        ramified_two = places_above(BaseField.imag_quadratic(-5), 2)
        assert [str(v) for v in ramified_two] == ["(2,1+sqrt(-5))"]

    def test_canonical_order(self, K47):
        labels = [str(v) for v in iter_places(K47, bound=11)]
        assert labels == [
            "(2,(1+sqrt(-47))/2)",
            "(2,(3+sqrt(-47))/2)",
            "(3,(1+sqrt(-47))/2)",
            "(3,(5+sqrt(-47))/2)",
            "(5)",
            "(7,(3+sqrt(-47))/2)",
            "(7,(11+sqrt(-47))/2)",
            "(11)",
        ]

    def test_conjugate(self, K47):
        first, second = places_above(K47, 7)
        assert first.conjugate() == second
        assert places_above(K47, 5)[0].conjugate() == places_above(K47, 5)[0]

    def test_parse_place(self, K47, Q):
        v = parse_place(K47, "(97,(27+sqrt(-47))/2)")
        assert str(v) == "(97,(27+sqrt(-47))/2)"
        assert parse_place(K47, "(97, (-167+sqrt(-47))/2)") == v
        assert parse_place(K47, "(569)") == places_above(K47, 569)[0]
        assert parse_place(K47, "5") == places_above(K47, 5)[0]
        assert parse_place(K47, "inf").is_finite is False
        assert str(parse_place(Q, "37")) == "(37)"

    @pytest.mark.parametrize("text", ["7", "(6)", "(97,1)", "3+sqrt(-47)"])
    def test_parse_place_rejects(self, K47, text):
        with pytest.raises(ValueError):
            parse_place(K47, text)

    def test_place_from_generator(self, K47):
        v = place_from_generator(K47.parse_element("65+12*sqrt(-47)"))
        assert v.p == 10993
        assert v.residue_degree == 1

    def test_valuations(self, K47, Q):
        x = K47.element(2, 3)
        assert [(str(v), e) for v, e in factor_principal(x)] == [
            ("(7,(3+sqrt(-47))/2)", 1),
            ("(61,(21+sqrt(-47))/2)", 1),
        ]
        assert valuation(x, places_above(K47, 7)[1]) == 0
        assert valuation(K47.element(1, 0, 7), places_above(K47, 7)[0]) == -1
        assert valuation(Q.from_fraction(Fraction(37, 16)), places_above(Q, 2)[0]) == -4

    def test_reduce(self, K47, Q):
        omega = K47.element(1, 1, 2)
        first, second = places_above(K47, 3)
        assert reduce(omega, first).is_zero()
        assert reduce(omega, second).is_one()
        assert reduce(Q.from_fraction(Fraction(37, 16)), places_above(Q, 5)[0]).x == 2
        assert str(residue_field(places_above(K47, 809)[0])) == "F_809^2"

    def test_reduce_with_cancelled_denominator(self, K47):
        first, _ = places_above(K47, 7)
        # (3+sqrt(-47))/14 * (3-sqrt(-47))/2 = 2
        x = K47.element(3, 1, 14)
        assert valuation(x, first) == 0
        assert reduce(x, first).x == 3
        assert reduce(x, first) * reduce(K47.element(3, -1, 2), first) == reduce(K47.element(2), first)

    def test_reduce_not_integral(self, K47):
        with pytest.raises(NotIntegralError):
            reduce(K47.element(1, 0, 7), places_above(K47, 7)[0])


class TestSUnits:
    def test_rational_example(self, Q):
        alpha = Q.from_fraction(Fraction(37, 16))
        S = build_S(Q, [alpha])
        assert [str(v) for v in S] == ["inf", "(2)", "(37)"]
        basis = s_unit_generators(Q, S)
        assert [str(g) for g in basis.gamma] == ["-1", "2", "37"]
        assert s_unit_exponents(basis, alpha) == (0, [-4, 1])

    def test_imag_quadratic_example(self, K47):
        alpha = K47.element(2, 3)
        S = build_S(K47, [alpha])
        assert [str(v) for v in S] == ["inf", "(7,(3+sqrt(-47))/2)", "(61,(21+sqrt(-47))/2)"]
        basis = s_unit_generators(K47, S)
        assert basis.gamma == (K47.element(-1), K47.element(2, 3), K47.element(128, 3))
        assert s_unit_exponents(basis, alpha) == (0, [1, 0])
        assert s_unit_exponents(basis, -alpha * K47.element(128, 3) ** 2) == (1, [1, 2])

    def test_build_S_kills_class_group(self, K47):
        S = build_S(K47, [K47.element(3)])
        basis = s_unit_generators(K47, S)
        assert basis.rank == len(basis.finite_places)

    def test_s_units_need_class_group_generators(self, K47):
        with pytest.raises(ValueError):
            s_unit_generators(K47, (parse_place(K47, "inf"),))

    def test_not_an_s_unit(self, K47):
        basis = s_unit_generators(K47, build_S(K47, [K47.element(2, 3)]))
        with pytest.raises(SUnitError):
            s_unit_exponents(basis, K47.element(3))

    def test_find_generator(self, K47):
        v = places_above(K47, 7)[0]
        g = find_generator(K47, {v: 5})
        assert g.norm() == 16807
        assert valuation(g, v) == 5
        with pytest.raises(ElementSearchError):
            find_generator(K47, {v: 1})

    def test_uniformiser(self, K47):
        S = build_S(K47, [K47.element(2, 3)])
        v = parse_place(K47, "(97,(27+sqrt(-47))/2)")
        pi = uniformiser(S, v)
        assert valuation(pi, v) == 1
        assert is_uniformiser(pi, S, v)
        assert is_uniformiser(K47.element(-353, 48), S, v)
        assert not is_uniformiser(K47.element(97), S, v)
        with pytest.raises(ValueError):
            uniformiser(S, S[1])


def _integral(rng, K):
    a, b = rng.randint(-60, 60), rng.randint(-60, 60)
    if (a - b) % 2:
        b += 1
    return K.element(a, b, 2)


class TestHomomorphisms:
    def test_factorisation_is_multiplicative(self, K47):
        rng = random.Random(41)
        for _ in range(25):
            x, y = _integral(rng, K47), _integral(rng, K47)
            if x.is_zero() or y.is_zero():
                continue
            expected = Counter(dict(factor_principal(x)))
            expected.update(dict(factor_principal(y)))
            product = dict(factor_principal(x * y))
            assert product == {v: n for v, n in expected.items() if n}, (x, y)

    @pytest.mark.parametrize("p", [2, 3, 5, 11, 13, 47])
    def test_reduction_is_a_ring_homomorphism(self, K47, p):
        rng = random.Random(p)
        S = build_S(K47, [K47.element(2, 3)])
        for v in places_above(K47, p):
            modulus = v.p
            for _ in range(20):
                x, y = _integral(rng, K47), _integral(rng, K47)
                rx, ry = reduce(x, v), reduce(y, v)
                assert reduce(x * y, v) == rx * ry
                total = reduce(x + y, v)
                assert (total.x, total.y) == ((rx.x + ry.x) % modulus, (rx.y + ry.y) % modulus)
            assert reduce(uniformiser(S, v), v).is_zero()

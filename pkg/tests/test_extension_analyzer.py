import math
import random
from dataclasses import replace
from itertools import combinations, product

import orjson
import pytest
from sympy import legendre_symbol, prime, primerange

from cft_construct.core.exceptions import RamifiedPlaceError, SUnitError
from cft_construct.core.lattice import mat_vec
from cft_construct.interfaces.cli.fixtures import replay
from cft_construct.modules.base_field import iter_places, places_above, uniformiser
from cft_construct.modules.extension_analyzer import (
    Projection,
    analyze,
    artin_symbol,
    decomposition_groups,
    hnp_check,
    local_norm_certificate,
    ramification_indices,
    ramified_places,
    split_places,
    standard_vector,
    wedge,
    wedge_span_check,
    wedge_square,
)
from cft_construct.modules.morphism_builder import AbelianGroupSpec, CharMorphismDocument, from_document, to_document


class TestRationalBiquadratic:
    def test_ramification(self, biquadratic_data):
        assert [v.p for v in ramified_places(biquadratic_data)] == [41, 137]
        assert [(v.p, e, f) for v, e, f in ramification_indices(biquadratic_data)] == [(41, 2, 2), (137, 2, 2)]

    def test_artin_symbols_match_legendre_symbols(self, Q, biquadratic_data):
        for p in primerange(3, 1000):
            if p in (37, 41, 137):
                continue
            expected = [int(legendre_symbol(p, 41) == -1), int(legendre_symbol(p, 137) == -1)]
            assert artin_symbol(biquadratic_data, places_above(Q, p)[0]) == expected, p

    def test_artin_symbol_at_ramified_place(self, Q, biquadratic_data):
        with pytest.raises(RamifiedPlaceError):
            artin_symbol(biquadratic_data, places_above(Q, 41)[0])

    def test_projection_to_one_factor(self, Q, biquadratic_data):
        pi_2 = Projection.coordinate(biquadratic_data.plan.group, 1)
        assert [v.p for v in ramified_places(biquadratic_data, pi_2)] == [137]
        assert artin_symbol(biquadratic_data, places_above(Q, 41)[0], pi_2) == [1]

    def test_split_places(self, biquadratic_data):
        pi_1 = Projection.coordinate(biquadratic_data.plan.group, 0)
        split = split_places(biquadratic_data, pi_1, n=5)
        assert [str(entry.place) for entry in split] == ["(2)", "(5)", "(23)", "(31)", "(37)"]
        assert [entry.in_s for entry in split] == [True, False, False, False, True]

    def test_decomposition_groups(self, biquadratic_data):
        [(place, generators)] = decomposition_groups(biquadratic_data)
        assert place.p == 41
        assert generators == [[1, 0], [0, 1]]

    def test_hnp(self, biquadratic_data):
        result = hnp_check(biquadratic_data)
        assert result.verdict
        assert result.witness == [[1]]

    def test_local_norm_certificate(self, biquadratic_data):
        [certificate] = local_norm_certificate(biquadratic_data)
        assert certificate.verdict
        assert certificate.s_unit_exponents == [0, -4, 1]
        assert [w.power for w in certificate.t_clauses] == ["1", "1"]
        assert certificate.outside.support == ["(2)", "(37)"]

    def test_local_norm_certificate_needs_s_units(self, Q, biquadratic_data):
        with pytest.raises(SUnitError):
            local_norm_certificate(biquadratic_data, [Q.element(3)])

    def test_report(self, biquadratic_data):
        report = analyze(biquadratic_data, split_count=5)
        assert [p.name for p in report.projections] == ["pi_1", "pi_2", "identity"]
        assert report.conductor == ["(41)", "(137)"]
        assert report.verdict
        payload = orjson.loads(report.to_json())
        assert payload["hnp"]["verdict"] is True
        assert payload["projections"][0]["split_in_s"] == ["(2)", "(37)"]

    def test_replay(self, biquadratic_fixture):
        _, mismatches = replay(biquadratic_fixture)
        assert mismatches == []


class TestWedgeSquare:
    @pytest.mark.parametrize(
        "factors, moduli",
        [((2, 2), [2]), ((6, 3, 3, 3), [3, 3, 3, 3, 3, 3]), ((5,), []), ((2, 4), [2])],
    )
    def test_moduli(self, factors, moduli):
        assert wedge_square(AbelianGroupSpec(factors))[0] == moduli

    def test_wedge_is_alternating(self):
        G = AbelianGroupSpec((3, 3, 3))
        x, y = [1, 2, 0], [0, 1, 1]
        assert wedge(x, y, G) == [(-z) % 3 for z in wedge(y, x, G)]
        assert wedge(x, x, G) == [0, 0, 0]

    def test_span(self):
        G = AbelianGroupSpec((2, 2))
        assert not wedge_span_check(G, []).verdict
        assert not wedge_span_check(G, [([1, 0], [1, 0])]).verdict
        assert wedge_span_check(G, [([1, 1], [0, 1])]).verdict
        assert wedge_span_check(AbelianGroupSpec((7,)), []).verdict


class TestProjection:
    def test_parse(self):
        G = AbelianGroupSpec((6, 3, 3, 3))
        assert Projection.parse(G, "2").name == "pi_2"
        assert Projection.parse(G, "pi_1").moduli == (6,)
        assert Projection.parse(G, "identity").order == 162
        assert Projection.parse(G, "zero").order == 1
        for text in ("bogus", "5", "0"):
            with pytest.raises(ValueError):
                Projection.parse(G, text)

    def test_element_order(self):
        identity = Projection.identity(AbelianGroupSpec((6, 3, 3, 3)))
        assert identity.element_order([3, 0, 0, 0]) == 2
        assert identity.element_order([1, 1, 0, 0]) == 6
        assert identity.element_order([0, 0, 0, 0]) == 1


class TestImagQuadratic:
    def test_replay(self, imag47_fixture):
        _, mismatches = replay(imag47_fixture)
        assert mismatches == []

    def test_certificate(self, imag47_data):
        [certificate] = local_norm_certificate(imag47_data)
        assert certificate.s_clause.verified
        assert len(certificate.t_clauses) == 12
        assert certificate.verdict

    def test_hnp(self, imag47_data):
        result = hnp_check(imag47_data)
        assert result.verdict
        assert result.wedge_moduli == [3] * 6


class TestStatistics:
    def test_split_fraction(self, Q, biquadratic_data):
        # Chebotarev: 1/|G| of the primes split completely
        primes = [p for p in primerange(2, prime(1000) + 1) if p not in (41, 137)]
        split = sum(not any(artin_symbol(biquadratic_data, places_above(Q, p)[0])) for p in primes)
        n = len(primes)
        sigma = math.sqrt(n * 0.25 * 0.75)
        assert abs(split - n / 4) < 5 * sigma


class TestConsistency:
    def test_report_survives_document_round_trip(self, biquadratic_data):
        restored = from_document(CharMorphismDocument.from_json(to_document(biquadratic_data).to_json()))
        assert analyze(restored, split_count=5).to_json() == analyze(biquadratic_data, split_count=5).to_json()

    def test_artin_symbol_ignores_s_unit_factors(self, imag47_data):
        data = imag47_data
        moduli = data.plan.moduli
        outside = [v for v in iter_places(data.field, bound=40) if v not in data.basis.S][:6]
        for v in outside:
            pi = uniformiser(data.basis.S, v)
            base = [x % n for x, n in zip(mat_vec(data.R, standard_vector(data, v, pi)), moduli)]
            for gamma in data.basis.gamma:
                shifted = mat_vec(data.R, standard_vector(data, v, pi * gamma))
                assert [x % n for x, n in zip(shifted, moduli)] == base, (v, gamma)

    def test_decomposition_groups_do_not_read_A(self, biquadratic_data):
        tampered = replace(biquadratic_data, A=[[1, 0], [0, 0]])
        assert decomposition_groups(tampered) == decomposition_groups(biquadratic_data)

    def test_replay_compares_in_order(self, biquadratic_fixture):
        fixture = biquadratic_fixture.model_copy(deep=True)
        fixture.expected.conductors["identity"] = ["137", "41"]
        _, mismatches = replay(fixture)
        assert [m.split(":")[0] for m in mismatches] == ["conductor of identity"]

    def test_split_places_above_two(self, imag47_data):
        pi_4 = Projection.coordinate(imag47_data.plan.group, 3)
        split = [str(entry.place) for entry in split_places(imag47_data, pi_4, n=3)]
        assert split == ["(2,(1+sqrt(-47))/2)", "(2,(3+sqrt(-47))/2)", "(5)"]


def _alternating_maps(G):
    """Every alternating bilinear map G x G -> Z/N, N the exponent, as its values a_ij on g_i, g_j."""
    factors = G.factors
    N = math.lcm(*factors)
    pairs = list(combinations(range(len(factors)), 2))
    maps = []
    for values in product(range(N), repeat=len(pairs)):
        # well defined iff n_i g_i and n_j g_j pair to zero
        if all(factors[i] * a % N == 0 and factors[j] * a % N == 0 for (i, j), a in zip(pairs, values)):
            maps.append(dict(zip(pairs, values)))
    return N, maps


class TestWedgeAgainstBruteForce:
    def test_random_groups(self):
        rng = random.Random(20)
        for _ in range(20):
            G = AbelianGroupSpec(tuple(rng.choice([2, 3, 4, 6]) for _ in range(rng.randint(1, 3))))
            moduli, _ = wedge_square(G)
            N, maps = _alternating_maps(G)
            assert len(maps) == math.prod(moduli), G
            for _ in range(5):
                x = [rng.randrange(n) for n in G.factors]
                y = [rng.randrange(n) for n in G.factors]
                w = wedge(x, y, G)
                for f in maps:
                    direct = sum(a * (x[i] * y[j] - x[j] * y[i]) for (i, j), a in f.items()) % N
                    through_wedge = sum(a * w_ij for a, w_ij in zip(f.values(), w)) % N
                    assert direct == through_wedge

    def test_cyclic_decomposition_groups_fail(self, biquadratic_data):
        # both columns of R land in the first factor, so every decomposition group is cyclic
        collapsed = replace(biquadratic_data, R=[[1, 1], [0, 0]])
        assert decomposition_groups(collapsed)[0][1] == [[1, 0], [1, 0]]
        assert not hnp_check(collapsed).verdict


class TestImagQuadraticUnpinned:
    def test_hnp(self, imag47_free_data):
        assert hnp_check(imag47_free_data).verdict

    def test_certificate(self, K47, imag47_free_data):
        [certificate] = local_norm_certificate(imag47_free_data)
        assert certificate.alpha == str(K47.element(2, 3))
        assert certificate.s_clause.verified
        assert certificate.verdict

    def test_report(self, imag47_free_data):
        assert analyze(imag47_free_data, split_count=3).verdict

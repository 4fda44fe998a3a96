import random

import pytest
from sympy import divisors, legendre_symbol, primerange

from cft_construct.core.exceptions import InvariantBreachError, ResidueFieldError
from cft_construct.modules.residue_arith import (
    FiniteField,
    GeneratorOrdering,
    QuotientGenerator,
    dlog_mod_e,
    generates_quotient,
    is_eth_power,
    pick_generator,
)


@pytest.fixture
def F97():
    return FiniteField(97)


@pytest.fixture
def F25():
    # t^2 = 3, a non-residue mod 5
    return FiniteField(5, 2, c0=3, c1=0)


@pytest.mark.parametrize("p, e, expected", [(97, 6, 5), (7, 2, 3), (7, 3, 2), (41, 2, 3), (13, 1, 1)])
def test_smallest_generator(p, e, expected):
    assert pick_generator(FiniteField(p), e).b.x == expected


def test_primitive_root_ordering():
    generator = pick_generator(FiniteField(7), 3, GeneratorOrdering.PRIMITIVE_ROOT)
    assert generator.b.x == 3


def test_override(F97):
    assert pick_generator(F97, 6, override=F97.element(10)).b == F97.element(10)
    with pytest.raises(ValueError):
        pick_generator(F97, 6, override=F97.element(4))


def test_eth_powers(F97):
    assert is_eth_power(F97.element(4), 2)
    assert not is_eth_power(F97.element(5), 2)
    assert is_eth_power(F97.element(5) ** 6, 6)
    assert generates_quotient(F97.element(5), 6)
    assert not generates_quotient(F97.element(2), 6)


def test_contract_violations(F97):
    with pytest.raises(ResidueFieldError):
        is_eth_power(FiniteField(7).element(3), 4)
    with pytest.raises(ResidueFieldError):
        pick_generator(FiniteField(7), 4)
    with pytest.raises(ValueError):
        is_eth_power(F97.element(0), 2)


def test_discrete_logarithm(F97):
    generator = QuotientGenerator(F97.element(5), 6)
    assert dlog_mod_e(F97.one(), generator) == 0
    assert dlog_mod_e(F97.element(5) ** 4, generator) == 4
    assert dlog_mod_e(F97.element(5) * F97.element(11) ** 6, generator) == 1
    assert dlog_mod_e(F97.element(5) ** 4, generator, 3) == 1


def test_discrete_logarithm_rejects_bad_generator(F97):
    with pytest.raises(InvariantBreachError):
        dlog_mod_e(F97.element(5), QuotientGenerator(F97.element(4), 6))


def test_quadratic_extension_arithmetic(F25):
    t = F25.element(0, 1)
    assert t * t == F25.element(3)
    elements = list(F25.elements())
    assert len(elements) == 24
    assert all((x * x.inverse()).is_one() for x in elements)
    assert all((x**24).is_one() for x in elements)


def test_quadratic_extension_primitive_root(F25):
    b = pick_generator(F25, 24, GeneratorOrdering.PRIMITIVE_ROOT).b
    assert not (b**12).is_one()
    assert not (b**8).is_one()


def test_parse_residues(F25):
    assert F25.parse("2+3*s") == F25.element(2, 3)
    assert F25.parse("3*s") == F25.element(0, 3)
    assert F25.parse("-2-3*s") == F25.element(3, 2)
    assert F25.parse("4") == F25.element(4)
    assert str(F25.element(2, 3)) == "2+3*s"


def _random_fields(rng, count):
    """Prime fields below 10^4 and a few quadratic fields F_{p^2} with p^2 below 10^4."""
    small = list(primerange(3, 100))
    large = list(primerange(3, 10**4))
    fields = []
    for i in range(count):
        if i % 5 == 4:
            p = rng.choice(small)
            nonresidue = next(a for a in range(2, p) if legendre_symbol(a, p) == -1)
            fields.append(FiniteField(p, 2, c0=nonresidue, c1=0))
        else:
            fields.append(FiniteField(rng.choice(large)))
    return fields


def test_quotient_predicates_against_power_table():
    rng = random.Random(30)
    for F in _random_fields(rng, 30):
        e = rng.choice([d for d in divisors(F.q - 1) if d <= 60])
        elements = list(F.elements())
        powers = {x**e for x in elements}
        assert len(powers) == (F.q - 1) // e
        for x in elements:
            assert is_eth_power(x, e) == (x in powers), (F, e, x)

        def class_order(x):
            k, current = 1, x
            while current not in powers:
                k, current = k + 1, current * x
            return k

        sample = rng.sample(elements, min(40, len(elements)))
        for x in sample:
            assert generates_quotient(x, e) == (class_order(x) == e), (F, e, x)

        generator = pick_generator(F, e)
        b_inverse = generator.b.inverse()
        for x in sample:
            l, current = 0, x
            while current not in powers:
                l, current = l + 1, current * b_inverse
            assert dlog_mod_e(x, generator) == l, (F, e, x)


def test_discrete_logarithm_is_additive():
    rng = random.Random(31)
    for F in _random_fields(rng, 10):
        e = rng.choice([d for d in divisors(F.q - 1) if d <= 60])
        generator = pick_generator(F, e)
        elements = list(F.elements())
        for _ in range(20):
            x, y = rng.choice(elements), rng.choice(elements)
            assert dlog_mod_e(x * y, generator) == (dlog_mod_e(x, generator) + dlog_mod_e(y, generator)) % e

import itertools

import pytest
from hypothesis import given, strategies as st

from codecensus.field import (
    add, field_of_order, frobenius, inv, irreducible_modulus, is_prime, make_field,
    mul, multiplicative_order, neg, power, prime_power, primitive_element, sub, units,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    for bad in (0, 1, 6, 12, -4):
        with pytest.raises(ValueError):
            prime_power(bad)
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_make_field_rejects():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(2, 9)  # 512 is over the table ceiling
    with pytest.raises(ValueError):
        field_of_order(6)


def test_moduli():
    # coefficients, constant term first
    assert irreducible_modulus(2, 2) == (1, 1, 1)
    assert irreducible_modulus(2, 3) == (1, 1, 0, 1)
    assert irreducible_modulus(3, 2) == (1, 0, 1)


def test_gf4_tables():
    f = field_of_order(4)
    # x * x = x + 1
    assert mul(f, 2, 2) == 3
    assert mul(f, 2, 3) == 1
    assert add(f, 2, 3) == 1
    assert inv(f, 2) == 3
    assert frobenius(f, 1, 2) == 3
    with pytest.raises(ZeroDivisionError):
        inv(f, 0)
    with pytest.raises(ValueError):
        frobenius(f, 2, 1)


def test_gf256_aes_product():
    # FIPS-197 worked example: {57} * {83} = {c1}
    f = field_of_order(256)
    assert mul(f, 0x57, 0x83) == 0xC1


@pytest.mark.parametrize("q", ORDERS)
def test_axioms_exhaustive(q):
    f = field_of_order(q)
    E = list(f.elements())
    for a, b in itertools.product(E, E):
        assert add(f, a, b) == add(f, b, a)
        assert mul(f, a, b) == mul(f, b, a)
        assert sub(f, add(f, a, b), b) == a
    for a, b, c in itertools.product(E, E, E):
        assert mul(f, a, add(f, b, c)) == add(f, mul(f, a, b), mul(f, a, c))
        assert mul(f, mul(f, a, b), c) == mul(f, a, mul(f, b, c))
    for a in E:
        assert add(f, a, neg(f, a)) == 0
        if a:
            assert mul(f, a, inv(f, a)) == 1


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius_is_automorphism(q):
    f = field_of_order(q)
    E = list(f.elements())
    for e in range(f.h):
        for a, b in itertools.product(E, E):
            assert frobenius(f, e, add(f, a, b)) == add(f, frobenius(f, e, a), frobenius(f, e, b))
            assert frobenius(f, e, mul(f, a, b)) == mul(f, frobenius(f, e, a), frobenius(f, e, b))
        assert sorted(frobenius(f, e, a) for a in E) == E
    # fixes exactly the prime subfield
    assert sum(frobenius(f, 1 % f.h, a) == a for a in E) == (f.p if f.h > 1 else q)


@pytest.mark.parametrize("q", ORDERS)
def test_primitive(q):
    f = field_of_order(q)
    g = primitive_element(f)
    assert multiplicative_order(f, g) == q - 1
    assert sorted(power(f, g, i) for i in range(q - 1)) == units(f)


@given(st.sampled_from(ORDERS), st.data())
def test_fermat(q, data):
    f = field_of_order(q)
    a = data.draw(st.integers(0, q - 1))
    assert power(f, a, q) == a

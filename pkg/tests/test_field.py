import itertools

import pytest

from semiarcs.errors import DegreeDoesNotDivide, DependentBasis, NonPrimeCharacteristic, OrderDoesNotDivide, ReducibleModulus
from semiarcs.field import (
    add_subgroup,
    canonical_basis,
    divisors,
    field_of_order,
    make_field,
    mult_subgroup,
    prime_power,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]


def polymul(a, b, mod, p):
    """Schoolbook product reduced by a monic modulus; independent of the library."""
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    r = len(mod) - 1
    for k in range(len(out) - 1, r - 1, -1):
        c = out[k]
        if c:
            for i in range(r + 1):
                out[k - r + i] = (out[k - r + i] - c * mod[i]) % p
    return (out + [0] * r)[:r]


def to_poly(F, a):
    return [(a // F.p**i) % F.p for i in range(F.r)]


@pytest.mark.parametrize("q", ORDERS)
def test_multiplication_matches_polynomial_arithmetic(q):
    F = field_of_order(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert to_poly(F, F.mul(a, b)) == polymul(to_poly(F, a), to_poly(F, b), F.modulus, F.p)
        assert to_poly(F, F.add(a, b)) == [(x + y) % F.p for x, y in zip(to_poly(F, a), to_poly(F, b))]


@pytest.mark.parametrize("q", ORDERS)
def test_field_basics(q):
    F = field_of_order(q)
    assert F.add(0, 5 % q) == 5 % q and F.mul(1, q - 1) == q - 1
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0
    g = F.generator
    assert len({F.pow(g, k) for k in range(q - 1)}) == q - 1
    assert all(F.exp(F.log(a)) == a for a in range(1, q))


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27])
def test_frobenius_is_an_automorphism(q):
    F = field_of_order(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
        assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert all(F.frob(a, F.r) == a for a in range(q))


@pytest.mark.parametrize("q", ORDERS)
def test_subfields_and_squares(q):
    F = field_of_order(q)
    for d in divisors(F.r):
        K = F.subfield(d)
        assert len(K) == F.p**d
        assert all(F.mul(a, b) in K and F.add(a, b) in K for a in K for b in K)
    assert F.squares() == sorted({F.mul(a, a) for a in range(1, q)})
    assert len(F.squares()) == (q - 1 if F.p == 2 else (q - 1) // 2)


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_subgroups(q):
    F = field_of_order(q)
    for n in divisors(q - 1):
        A = mult_subgroup(F, n)
        assert len(A.elements) == n and 1 in A.elements
        assert all(F.mul(a, b) in A.elements for a in A.elements for b in A.elements)


def test_additive_subgroup_invariance():
    F = field_of_order(16)
    A3 = mult_subgroup(F, 3)
    B = add_subgroup(F, 2, canonical_basis(F, 2, 1), A3)
    assert B.order == 4 and B.h == 2 and B.invariant
    B1 = add_subgroup(F, 1, canonical_basis(F, 1, 2), A3)
    # span of 1 and x over GF(2) is not closed under the cube roots of unity
    direct = all(F.mul(a, b) in B1.elements for a in A3.elements for b in B1.elements)
    assert B1.order == 4 and B1.invariant is False and direct is False


def test_errors():
    with pytest.raises(NonPrimeCharacteristic):
        field_of_order(6)
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4, 1)
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, (1, 0, 1))
    with pytest.raises(OrderDoesNotDivide):
        mult_subgroup(field_of_order(9), 3)
    with pytest.raises(DegreeDoesNotDivide):
        add_subgroup(field_of_order(8), 2, [1])
    with pytest.raises(DependentBasis):
        add_subgroup(field_of_order(9), 1, [1, 2])
    assert prime_power(12) is None and prime_power(27) == (3, 3)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        field_of_order(10)

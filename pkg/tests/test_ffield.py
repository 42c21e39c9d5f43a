import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionclean.errors import (
    DegreeOutOfRange,
    DivisionByZero,
    NonPrime,
    NotIrreducible,
    SizeGuardExceeded,
    SpecMismatch,
    ZeroElement,
)
from torsionclean.ffield import FieldSpec, field_elem_order, field_from_order, field_inv, field_make

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)]
MID_FIELDS = [(5, 2), (3, 3), (2, 5), (7, 2), (2, 6), (13, 1)]


def test_gf2():
    F = field_make(2, 1)
    assert F.q == 2
    assert [int(x) for x in F.elements()] == [0, 1]
    assert F.modulus[-1] == 1 and len(F.modulus) == 2


def test_gf4_modulus_is_the_only_quadratic():
    assert field_make(2, 2).modulus == (1, 1, 1)


def test_modulus_is_lexicographically_smallest():
    for p, k in SMALL_FIELDS + MID_FIELDS:
        F = field_make(p, k)
        # every lexicographically smaller monic candidate must be reducible
        for low in itertools.product(range(p), repeat=k):
            if low == F.modulus[:-1]:
                break
            with pytest.raises(NotIrreducible):
                FieldSpec(p, k, low + (1,))


def test_gf9_multiplicative_group_is_cyclic_of_order_8():
    F = field_make(3, 2)
    orders = sorted(field_elem_order(x) for x in F.elements()[1:])
    assert F.q == 9
    assert max(orders) == 8
    assert orders.count(8) == 4  # phi(8) generators


def test_gf4_products():
    F = field_make(2, 2)
    x = F.elem(2)
    assert x * x == F.elem(3)  # x^2 = x + 1
    # inverse by exhaustive search
    inv = [y for y in F.elements() if x * y == F.one()]
    assert inv == [F.elem(3)] == [field_inv(x)]


def test_gf2_char_two():
    F = field_make(2, 1)
    assert F.one() + F.one() == F.zero()


def test_orders():
    assert field_elem_order(field_make(5, 1).one()) == 1
    F4 = field_make(2, 2)
    assert field_elem_order(F4.elem(2)) == 3
    F8 = field_make(2, 3)
    assert {field_elem_order(x) for x in F8.elements()[1:]} == {1, 7}


@pytest.mark.parametrize("pk", SMALL_FIELDS + MID_FIELDS)
def test_fermat_and_order_divides(pk):
    F = field_make(*pk)
    for x in F.elements()[1:]:
        assert x ** (F.q - 1) == F.one()
        assert (F.q - 1) % field_elem_order(x) == 0


@pytest.mark.parametrize("pk", SMALL_FIELDS)
def test_axioms_exhaustive(pk):
    F = field_make(*pk)
    els = F.elements()
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a and a * b == b * a
    for a in els[1:]:
        assert a * a.inverse() == F.one()


@pytest.mark.parametrize("pk", MID_FIELDS)
def test_axioms_random(pk):
    F = field_make(*pk)
    rnd = random.Random(7)
    for _ in range(10_000 // len(MID_FIELDS)):
        a, b, c = (F.elem(rnd.randrange(F.q)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a


@pytest.mark.parametrize("pk", SMALL_FIELDS + MID_FIELDS)
def test_encoding_round_trip(pk):
    F = field_make(*pk)
    assert [int(F.elem(i)) for i in range(F.q)] == list(range(F.q))
    assert len({F.elem(i).coeffs for i in range(F.q)}) == F.q


@pytest.mark.parametrize("pk", SMALL_FIELDS + MID_FIELDS + [(2, 8), (3, 4)])
def test_bulk_arithmetic_matches_polynomial_arithmetic(pk):
    F = field_make(*pk)
    fa = F.arith
    a = np.repeat(np.arange(F.q), F.q) if F.q <= 64 else np.random.default_rng(1).integers(0, F.q, 4000)
    b = np.tile(np.arange(F.q), F.q) if F.q <= 64 else np.random.default_rng(2).integers(0, F.q, 4000)
    mul, add, neg = fa.mul(a, b), fa.add(a, b), fa.neg(a)
    for i in range(len(a)):
        x, y = F.elem(a[i]), F.elem(b[i])
        assert int(mul[i]) == int(x * y)
        assert int(add[i]) == int(x + y)
        assert int(neg[i]) == int(-x)
    nz = np.arange(1, F.q)
    assert np.all(fa.mul(nz, fa.inv(nz)) == 1)


def test_explicit_alternative_modulus():
    F = FieldSpec(2, 3, (1, 1, 0, 1))  # x^3 + x + 1, the other cubic
    assert F != field_make(2, 3)
    assert {field_elem_order(x) for x in F.elements()[1:]} == {1, 7}


def test_errors():
    with pytest.raises(NonPrime):
        field_make(4, 1)
    with pytest.raises(DegreeOutOfRange):
        field_make(2, 0)
    with pytest.raises(SizeGuardExceeded):
        field_make(2, 21)
    with pytest.raises(NotIrreducible):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(NonPrime):
        field_from_order(12)
    F4, F8 = field_make(2, 2), field_make(2, 3)
    with pytest.raises(SpecMismatch):
        F4.one() + F8.one()
    with pytest.raises(DivisionByZero):
        F4.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        F4.arith.inv(np.array([0, 1]))
    with pytest.raises(ZeroElement):
        field_elem_order(F4.zero())


def test_str():
    assert str(field_make(2, 3)) == "GF(8)"
    assert field_from_order(8) is field_make(2, 3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_FIELDS + MID_FIELDS), st.data())
def test_inverse_and_distributivity_property(pk, data):
    F = field_make(*pk)
    a, b, c = (F.elem(data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert a * (b - c) == a * b - a * c
    if not a.is_zero():
        assert (b / a) * a == b

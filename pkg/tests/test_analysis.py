import itertools
import math

import numpy as np
import pytest
from conftest import CORPUS, SMALL, TINY
from oracles import naive_idempotents, naive_jacobson, naive_order, naive_units

from torsionclean import analysis as A
from torsionclean.errors import NotCentralIdempotent, NotNil
from torsionclean.rings import ring_make


def test_idempotent_examples():
    for q in (2, 4, 9):
        assert [e.enc for e in A.idempotents(ring_make(f"GF({q})"))] == [0, 1]
    assert len(A.idempotents(ring_make("M(2,GF(2))"))) == 8
    assert len(A.idempotents(ring_make("P(GF(2),GF(4))"))) == 4


def test_unit_examples():
    us = A.units(ring_make("M(2,GF(2))"))
    assert len(us) == 6 and {o for _, o in us} == {1, 2, 3}
    R = ring_make("M(3,GF(2))")
    assert len(A.units(R)) == 168 and A.unit_group_exponent(R) == 84
    R = ring_make("GF(8)")
    assert len(A.units(R)) == 7 and A.unit_group_exponent(R) == 7


def test_jacobson_examples():
    for s in ("M(2,GF(2))", "M(3,GF(2))", "M(2,GF(3))"):
        assert [x.enc for x in A.jacobson_radical(ring_make(s))] == [0]
    R = ring_make("T(3,GF(2))")
    J = A.jacobson_radical(R)
    assert len(J) == 8
    assert all(x.literal()[i][i] == 0 for x in J for i in range(3))
    R = ring_make("Q(GF(4),2,1)")
    assert sorted(x.literal()[0] for x in A.jacobson_radical(R)) == [0, 0, 0, 0]
    assert len(A.jacobson_radical(R)) == 4


def test_nil_index_examples():
    R = ring_make("T(3,GF(2))")
    assert A.nil_index([R.zero()]) == 1
    assert A.nil_index(A.jacobson_radical(R)) == 3
    # a witness of exact index 3: the strictly upper shift
    z = R.parse_element("[[0,1,0],[0,0,1],[0,0,0]]")
    assert z**2 != R.zero() and z**3 == R.zero()
    assert A.nil_index(A.jacobson_radical(ring_make("M(2,GF(2))"))) == 1
    with pytest.raises(NotNil) as info:
        A.nil_index([R.zero(), R.one()])
    assert info.value.witness == R.one()


def test_flag_examples():
    R = ring_make("GF(4)")
    assert A.is_abelian(R) and A.is_reduced(R) and not A.is_boolean(R)
    R = ring_make("M(2,GF(2))")
    assert not A.is_abelian(R)
    e, r = A.abelian_witness(R)
    assert e * e == e and e * r != r * e
    assert A.is_boolean(ring_make("P(GF(2),GF(2))"))
    assert "abelian" in A.structure_report(R).to_dict()["flags"]


def test_primitive_central_idempotent_examples():
    R = ring_make("P(GF(2),GF(4))")
    assert sorted(e.literal() for e in A.primitive_central_idempotents(R)) == [[0, 1], [1, 0]]
    for s in ("GF(8)", "M(2,GF(2))"):
        R = ring_make(s)
        assert A.primitive_central_idempotents(R) == [R.one()]


def test_corner_is_field_examples():
    R = ring_make("P(GF(2),GF(4))")
    assert A.corner_is_field(R, R.parse_element("[1,0]"))
    R = ring_make("M(2,GF(2))")
    assert not A.corner_is_field(R, R.one())
    with pytest.raises(NotCentralIdempotent):
        A.corner_is_field(R, R.parse_element("[[1,0],[0,0]]"))
    R = ring_make("Q(GF(4),2,1)")
    assert not A.corner_is_field(R, R.one())


@pytest.mark.parametrize("spec", CORPUS)
def test_unit_group_laws(spec):
    R = ring_make(spec)
    us = A.unit_encs(R)
    orders = A.unit_orders(R)
    E = A.unit_group_exponent(R)
    assert len(us) % E == 0
    assert all(len(us) % int(o) == 0 and E % int(o) == 0 for o in orders[us])
    assert E == math.lcm(*(int(o) for o in orders[us]))
    if len(us) <= 600:
        prods = R.mul(us[:, None], us[None, :])
        assert A.unit_mask(R)[prods].all()
    inv = A.unit_inverse(R, us)
    assert np.all(R.mul(us, inv) == R.one_enc) and np.all(R.mul(inv, us) == R.one_enc)
    # 1 + J inside U
    assert A.unit_mask(R)[R.add(A.jacobson_encs(R), R.one_enc)].all()


@pytest.mark.parametrize("spec", ["M(2,GF(2))", "M(2,GF(3))", "M(3,GF(2))", "GF(16)", "P(GF(2),GF(4),GF(8))", "P(GF(3),GF(3))"])
def test_semisimple_have_zero_radical(spec):
    assert list(A.jacobson_encs(ring_make(spec))) == [0]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_triangular_units_are_one_plus_radical(m):
    R = ring_make(f"T({m},GF(2))")
    assert A.units_equal_one_plus_J(R)
    assert len(A.jacobson_encs(R)) == 2 ** (m * (m - 1) // 2)
    assert A.jacobson_nil_index(R) == m


@pytest.mark.parametrize("spec", CORPUS)
def test_primitive_central_idempotents(spec):
    R = ring_make(spec)
    prims = A.primitive_central_idempotents(R)
    total = R.zero()
    for e, f in itertools.combinations(prims, 2):
        assert e * f == R.zero()
    for e in prims:
        total = total + e
        # minimal: no nonzero central idempotent strictly below e
        for c in A.central_idempotent_encs(R):
            c = R.element(c)
            if c != R.zero() and c * e == c:
                assert c == e
    assert total == R.one()


@pytest.mark.parametrize("spec", CORPUS)
def test_reduced_implies_abelian(spec):
    R = ring_make(spec)
    assert not A.is_reduced(R) or A.is_abelian(R)


@pytest.mark.parametrize("spec", SMALL)
def test_against_naive_oracles(spec):
    R = ring_make(spec)
    inv = naive_units(R)
    assert sorted(inv) == [int(u) for u in A.unit_encs(R)]
    orders = A.unit_orders(R)
    for u in list(inv)[:80]:
        assert naive_order(R.element(u), R.size) == orders[u]
    assert naive_idempotents(R) == [int(e) for e in A.idempotent_encs(R)]
    if R.size <= 64:
        assert naive_jacobson(R, inv) == [int(x) for x in A.jacobson_encs(R)]


@pytest.mark.parametrize("spec", TINY)
def test_flags_by_brute_force(spec):
    R = ring_make(spec)
    els = list(R.elements())
    idem = [e for e in els if e * e == e]
    assert A.is_commutative(R) == all(a * b == b * a for a in els for b in els)
    assert A.is_abelian(R) == all(e * r == r * e for e in idem for r in els)
    assert A.is_reduced(R) == all(x == R.zero() or x * x != R.zero() for x in els)
    assert A.is_boolean(R) == all(x * x == x for x in els)
    assert A.center_size(R) == sum(all(a * b == b * a for b in els) for a in els)


@pytest.mark.parametrize("spec", TINY)
def test_corner_is_field_by_brute_force(spec):
    R = ring_make(spec)
    for e in A.central_idempotent_encs(R):
        e = R.element(e)
        C = {(e * x * e).enc for x in R.elements()}
        C = [R.element(c) for c in sorted(C)]
        is_field = e != R.zero() and all(a * b == b * a for a in C for b in C) and all(
            any(a * b == e for b in C) for a in C if a != R.zero()
        )
        assert A.corner_is_field(R, e) == is_field


def test_structure_report_is_stable():
    R = ring_make("T(3,GF(2))")
    d1 = A.structure_report(R).to_dict()
    assert d1 == A.structure_report(ring_make("T(3,GF(2))")).to_dict()
    assert d1["size"] == 64 and d1["nil_index_of_jacobson"] == 3
    assert d1["flags"]["units_equal_one_plus_J"]

"""Structural invariants of a finite ring.

All scans run over the whole carrier as numpy arrays of encodings, so results
come out already sorted by encoding. Per-ring results are memoised on the
ring handle; recomputing one gives an identical value, so concurrent builders
may race harmlessly.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .errors import NotCentralIdempotent, NotNil
from .rings import RingElem


def _memo(fn):
    name = fn.__name__

    @functools.wraps(fn)
    def wrapper(R):
        try:
            return R._memo[name]
        except KeyError:
            val = R._memo[name] = fn(R)
            return val

    return wrapper


def _elems(R, arr):
    return [RingElem(R, int(x)) for x in arr]


# -- units --------------------------------------------------------------------

@_memo
def unit_mask(R):
    return R.unit_mask()


@_memo
def unit_orders(R):
    """Order of every carrier element as a unit (0 for non-units), shape (|R|,).

    Orders divide |U(R)|, so each one is found by stripping prime factors off
    |U(R)| while the power stays 1.
    """
    mask = unit_mask(R)
    us = np.flatnonzero(mask)
    count = len(us)
    ords = np.full(count, count, dtype=np.int64)
    for p, a in sympy.factorint(count).items():
        for _ in range(a):
            divisible = ords % p == 0
            cand = np.where(divisible, ords // p, ords)
            hit = divisible & (R.power(us, cand) == R.one_enc)
            ords = np.where(hit, cand, ords)
    if not np.all(R.power(us, ords) == R.one_enc):
        raise AssertionError(f"unit order computation is inconsistent for {R}")
    out = np.zeros(R.size, dtype=np.int64)
    out[us] = ords
    return out


@_memo
def unit_encs(R):
    return np.flatnonzero(unit_mask(R))


def units(R):
    """All units with their multiplicative orders, in encoding order."""
    orders = unit_orders(R)
    return [(RingElem(R, int(u)), int(orders[u])) for u in unit_encs(R)]


@_memo
def unit_group_exponent(R):
    orders = unit_orders(R)[unit_encs(R)]
    return int(functools.reduce(math.lcm, (int(o) for o in np.unique(orders)), 1))


def unit_inverse(R, u):
    """Inverses of the units in u (array), as u^(o(u)-1)."""
    u = np.asarray(u, dtype=np.int64)
    return R.power(u, unit_orders(R)[u] - 1)


# -- idempotents, nilpotents, center ------------------------------------------

@_memo
def idempotent_encs(R):
    a = R.carrier()
    return np.flatnonzero(R.mul(a, a) == a)


def idempotents(R):
    return _elems(R, idempotent_encs(R))


@_memo
def nilpotent_mask(R):
    y = R.carrier()
    for _ in range(max(1, (R.size - 1).bit_length()) + 1):
        y = R.mul(y, y)
    return y == 0


@_memo
def center_mask(R):
    a = R.carrier()
    mask = np.ones(R.size, dtype=bool)
    for b in R.additive_generators():
        mask &= R.mul(a, b) == R.mul(b, a)
    return mask


def center_size(R):
    return int(center_mask(R).sum())


def is_commutative(R):
    gens = np.array(R.additive_generators(), dtype=np.int64)
    return bool(np.all(R.mul(gens[:, None], gens[None, :]) == R.mul(gens[None, :], gens[:, None])))


def abelian_witness(R):
    """(e, b) with e idempotent and eb != be, or None when every idempotent is central."""
    center = center_mask(R)
    for e in idempotent_encs(R):
        if not center[e]:
            for b in R.additive_generators():
                if R.mul(e, b) != R.mul(b, e):
                    return RingElem(R, int(e)), RingElem(R, int(b))
    return None


def is_abelian(R):
    return abelian_witness(R) is None


def is_reduced(R):
    a = R.carrier()
    return int(np.count_nonzero(R.mul(a, a) == 0)) == 1


def is_boolean(R):
    a = R.carrier()
    return bool(np.all(R.mul(a, a) == a))


# -- Jacobson radical -----------------------------------------------------------

def _additive_closure(R, members, gens):
    """Smallest additive subgroup containing the subgroup ``members`` (bool mask) and gens."""
    for g in gens:
        if members[g]:
            continue
        base = np.flatnonzero(members)
        shift = g
        while not members[shift]:
            members[R.add(base, shift)] = True
            shift = int(R.add(shift, g))
    return members


def _left_quasi_regular(R, x, order, units_mask):
    """True iff 1 - r*x is a unit for every r (scanned in chunks, early exit)."""
    lo, step = 0, 64
    while lo < R.size:
        r = order[lo : lo + step]
        if not units_mask[R.sub(R.one_enc, R.mul(r, x))].all():
            return False
        lo += step
        step *= 4
    return True


@_memo
def jacobson_mask(R):
    """J(R) = {x : 1 - r x is a unit for all r}.

    Only nilpotent x with 1 - x a unit can qualify. Each confirmed member
    pulls in the two-sided ideal it generates (additive span of b x b' over
    additive generators b, b'), so confirmed members are never rescanned.
    """
    umask = unit_mask(R)
    one = R.one_enc
    carrier = R.carrier()
    cand = nilpotent_mask(R) & umask[R.sub(one, carrier)]
    order = np.random.default_rng(0).permutation(R.size).astype(np.int64)
    members = np.zeros(R.size, dtype=bool)
    members[0] = True
    gens = np.array(R.additive_generators(), dtype=np.int64)
    for x in np.flatnonzero(cand):
        if members[x] or not _left_quasi_regular(R, int(x), order, umask):
            continue
        spanning = np.unique(R.mul(R.mul(gens[:, None], int(x)), gens[None, :]))
        _additive_closure(R, members, [int(g) for g in spanning])
    J = np.flatnonzero(members)
    # ideal check on generators, and 1 + J inside U(R)
    for b in gens:
        if not (members[R.mul(J, b)].all() and members[R.mul(b, J)].all()):
            raise AssertionError(f"computed radical of {R} is not an ideal")
    if not umask[R.sub(one, J)].all():
        raise AssertionError(f"computed radical of {R} has 1 - x non-invertible")
    return members


@_memo
def jacobson_encs(R):
    return np.flatnonzero(jacobson_mask(R))


def jacobson_radical(R):
    return _elems(R, jacobson_encs(R))


def nil_index_encs(R, arr):
    arr = np.asarray(arr, dtype=np.int64)
    nil = nilpotent_mask(R)
    if not nil[arr].all():
        raise NotNil(RingElem(R, int(arr[~nil[arr]][0])))
    k, y = 1, arr.copy()
    while np.any(y != 0):
        y = R.mul(y, arr)
        k += 1
    return k


def nil_index(I):
    """Least k with r^k = 0 for every r in I; 1 for I = {0}."""
    I = list(I)
    if not I:
        return 1
    R = I[0].ring
    return nil_index_encs(R, [x.enc for x in I])


@_memo
def jacobson_nil_index(R):
    return nil_index_encs(R, jacobson_encs(R))


def units_equal_one_plus_J(R):
    return len(unit_encs(R)) == len(jacobson_encs(R))


# -- central idempotent decomposition ---------------------------------------------

@_memo
def central_idempotent_encs(R):
    idem = idempotent_encs(R)
    return idem[center_mask(R)[idem]]


def primitive_central_idempotents(R):
    """Minimal nonzero central idempotents under e <= f iff ef = e."""
    ci = central_idempotent_encs(R)
    nz = ci[ci != 0]
    prims = []
    for e in nz:
        below = R.mul(e, nz) == nz  # f <= e
        if np.count_nonzero(below) == 1:
            prims.append(int(e))
    return _elems(R, prims)


def corner(R, e):
    return np.unique(R.mul(R.carrier(), int(e)))


def corner_is_field(R, e):
    """Whether eRe (unit e) is a field, for a central idempotent e.

    A finite commutative ring is a field exactly when it is reduced and its
    only idempotents are 0 and its unit.
    """
    e = int(getattr(e, "enc", e))
    if not (R.mul(e, e) == e and center_mask(R)[e]):
        raise NotCentralIdempotent(f"{RingElem(R, e)} is not a central idempotent")
    if e == 0:
        return False
    gens = np.unique(R.mul(np.array(R.additive_generators(), dtype=np.int64), e))
    if not np.all(R.mul(gens[:, None], gens[None, :]) == R.mul(gens[None, :], gens[:, None])):
        return False
    C = corner(R, e)
    if np.count_nonzero(nilpotent_mask(R)[C]) != 1:
        return False
    idem_in = np.intersect1d(C, idempotent_encs(R))
    return len(idem_in) == 2


# -- report ---------------------------------------------------------------------

@dataclass
class StructureReport:
    ring: str
    size: int
    char: int
    idempotents: list
    units: list
    unit_group_exponent: int
    jacobson: list
    nil_index_of_jacobson: int
    center_size: int
    primitive_central_idempotents: list
    flags: dict
    abelian_witness: list | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "ring": self.ring,
            "size": self.size,
            "char": self.char,
            "idempotents": self.idempotents,
            "units": [[u, o] for u, o in self.units],
            "unit_group_exponent": self.unit_group_exponent,
            "jacobson": self.jacobson,
            "nil_index_of_jacobson": self.nil_index_of_jacobson,
            "center_size": self.center_size,
            "primitive_central_idempotents": self.primitive_central_idempotents,
            "flags": self.flags,
            "abelian_witness": self.abelian_witness,
        }


def flags(R):
    return {
        "abelian": is_abelian(R),
        "reduced": is_reduced(R),
        "boolean": is_boolean(R),
        "commutative": is_commutative(R),
        "units_equal_one_plus_J": units_equal_one_plus_J(R),
    }


def structure_report(R):
    orders = unit_orders(R)
    w = abelian_witness(R)
    return StructureReport(
        ring=R.spec,
        size=R.size,
        char=R.char,
        idempotents=[int(e) for e in idempotent_encs(R)],
        units=[(int(u), int(orders[u])) for u in unit_encs(R)],
        unit_group_exponent=unit_group_exponent(R),
        jacobson=[int(x) for x in jacobson_encs(R)],
        nil_index_of_jacobson=jacobson_nil_index(R),
        center_size=center_size(R),
        primitive_central_idempotents=[e.enc for e in primitive_central_idempotents(R)],
        flags=flags(R),
        abelian_witness=None if w is None else [w[0].enc, w[1].enc],
    )

"""Torsion-clean decompositions and the minimal (strong) torsion-clean index.

A decomposition r = e + u pairs an idempotent e with a unit u. For every
element the engine collects the set of unit orders reachable this way (the
order set), then returns the least divisor d of exp(U(R)) such that every
order set contains a divisor of d. Order sets are stored as bit masks over
the divisors of exp(U(R)).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
import sympy
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import analysis as A
from .rings import RingElem


@dataclass(frozen=True)
class Certificate:
    r: RingElem
    e: RingElem
    u: RingElem
    order: int
    strong: bool

    def to_dict(self):
        return {
            "ring": self.r.ring.spec,
            "r": self.r.enc,
            "e": self.e.enc,
            "u": self.u.enc,
            "order": self.order,
            "strong": self.strong,
            "r_literal": self.r.literal(),
            "e_literal": self.e.literal(),
            "u_literal": self.u.literal(),
        }

    @classmethod
    def from_dict(cls, R, d):
        return cls(R.element(d["r"]), R.element(d["e"]), R.element(d["u"]), int(d["order"]), bool(d["strong"]))


@dataclass(frozen=True)
class OrderSet:
    r: RingElem
    orders: tuple
    strong: bool

    @property
    def minimum(self):
        return self.orders[0] if self.orders else None


@dataclass
class IndexReport:
    ring: str
    mode: str
    index: int | None
    witnesses: list
    exponent_of_units: int
    element_count: int
    elapsed_s: float
    classes_scanned: int
    distinct_order_sets: int
    idempotent_count: int
    unit_count: int
    conjugacy_reduction: bool
    no_decomposition: int | None = None
    stats: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.index is not None

    def to_dict(self, timing=True):
        d = {
            "ring": self.ring,
            "mode": self.mode,
            "index": self.index,
            "no_decomposition": self.no_decomposition,
            "witnesses": [[w, o] for w, o in self.witnesses],
            "exponent_of_units": self.exponent_of_units,
            "element_count": self.element_count,
            "classes_scanned": self.classes_scanned,
            "distinct_order_sets": self.distinct_order_sets,
            "idempotent_count": self.idempotent_count,
            "unit_count": self.unit_count,
            "conjugacy_reduction": self.conjugacy_reduction,
        }
        if timing:
            d["elapsed_s"] = round(self.elapsed_s, 6)
        return d


# -- single elements ------------------------------------------------------------

def _valid_units(R, r, idem, strong):
    """For idempotents idem, the candidate units r - e and a validity mask."""
    us = R.sub(r, idem)
    ok = A.unit_mask(R)[us]
    if strong:
        ok &= R.mul(idem, us) == R.mul(us, idem)
    return us, ok


def decompose(r, n, strong=False):
    """The (enc(e), enc(u))-least decomposition r = e + u with u^n = 1, or None."""
    R = r.ring
    idem = A.idempotent_encs(R)
    us, ok = _valid_units(R, r.enc, idem, strong)
    ok &= n % np.maximum(A.unit_orders(R)[us], 1) == 0
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        return None
    i = hits[0]
    u = int(us[i])
    return Certificate(r, RingElem(R, int(idem[i])), RingElem(R, u), int(A.unit_orders(R)[u]), strong)


def order_set(r, strong=False):
    R = r.ring
    idem = A.idempotent_encs(R)
    us, ok = _valid_units(R, r.enc, idem, strong)
    orders = sorted({int(o) for o in A.unit_orders(R)[us[ok]]})
    return OrderSet(r, tuple(orders), strong)


def verify_certificate(c):
    """Re-check a certificate with structural arithmetic only."""
    R = c.r.ring
    if not (c.e.ring is R and c.u.ring is R):
        return False
    if c.e * c.e != c.e or c.e + c.u != c.r:
        return False
    one = R.one()
    t, y = 1, c.u
    while y != one:
        y = y * c.u
        t += 1
        if t > R.size:
            return False  # never returns to 1: not a unit
    if t != c.order:
        return False
    if c.strong and c.e * c.u != c.u * c.e:
        return False
    return True


# -- conjugacy reduction --------------------------------------------------------

def unit_generators(R):
    """A small generating set of U(R), picked greedily in encoding order."""
    umask = A.unit_mask(R)
    units = A.unit_encs(R)
    inside = np.zeros(R.size, dtype=bool)
    inside[R.one_enc] = True
    gens = []
    while True:
        missing = units[~inside[units]]
        if len(missing) == 0:
            return gens
        gens.append(int(missing[0]))
        g = np.array(gens, dtype=np.int64)
        inside[:] = False
        inside[R.one_enc] = True
        frontier = np.array([R.one_enc], dtype=np.int64)
        while len(frontier):
            nxt = np.unique(R.mul(frontier[:, None], g[None, :]))
            nxt = nxt[~inside[nxt]]
            inside[nxt] = True
            frontier = nxt
        assert umask[np.flatnonzero(inside)].all()


def class_labels(R):
    """Label each element by the least encoding in its conjugacy class under U(R)."""
    key = "class_labels"
    if key in R._memo:
        return R._memo[key]
    a = R.carrier()
    if A.is_commutative(R):
        labels = a.copy()
    else:
        src, dst = [], []
        for g in unit_generators(R):
            ginv = int(A.unit_inverse(R, [g])[0])
            src.append(a)
            dst.append(R.mul(R.mul(g, a), ginv))
        src, dst = np.concatenate(src), np.concatenate(dst)
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(R.size, R.size))
        _, comp = connected_components(graph, directed=True, connection="weak")
        least = np.full(comp.max() + 1, R.size, dtype=np.int64)
        np.minimum.at(least, comp, a)
        labels = least[comp]
    R._memo[key] = labels
    return labels


def similarity_classes(R):
    """(representative, class size) pairs; the representative is the least encoding."""
    labels = class_labels(R)
    reps, sizes = np.unique(labels, return_counts=True)
    return [(RingElem(R, int(r)), int(s)) for r, s in zip(reps, sizes)]


# -- index search ---------------------------------------------------------------

class _DivisorMasks:
    def __init__(self, E):
        self.divisors = sympy.divisors(E)
        self.words = (len(self.divisors) + 63) // 64
        self.index_of = np.full(E + 1, -1, dtype=np.int64)
        self.index_of[self.divisors] = np.arange(len(self.divisors))

    def mask_for(self, pred):
        m = np.zeros(self.words, dtype=np.uint64)
        for i, d in enumerate(self.divisors):
            if pred(d):
                m[i // 64] |= np.uint64(1) << np.uint64(i % 64)
        return m

    def feasible(self, sets, d):
        """Rows whose order set contains a divisor of d."""
        m = self.mask_for(lambda x: d % x == 0)
        return np.any((sets & m) != 0, axis=1)


def _order_set_masks(R, reps, strong, dm):
    sets = np.zeros((len(reps), dm.words), dtype=np.uint64)
    orders = A.unit_orders(R)
    rows = np.arange(len(reps))
    for e in A.idempotent_encs(R):
        us, ok = _valid_units(R, reps, int(e), strong)
        idx = dm.index_of[orders[us[ok]]]
        sets[rows[ok], idx // 64] |= np.uint64(1) << (idx % 64).astype(np.uint64)
    return sets


def _min_order_dividing(sets_row, dm, n):
    for i, d in enumerate(dm.divisors):
        if n % d == 0 and int(sets_row[i // 64]) >> (i % 64) & 1:
            return d
    raise AssertionError("no order dividing the index")


def torsion_clean_index(R, strong=False, conjugacy_reduction=True):
    """Minimal n such that every element has a (strongly) n-torsion clean decomposition."""
    memo_key = ("index", bool(strong), bool(conjugacy_reduction))
    if memo_key in R._memo:
        return R._memo[memo_key]
    t0 = time.perf_counter()
    E = A.unit_group_exponent(R)
    dm = _DivisorMasks(E)
    if conjugacy_reduction:
        reps = np.unique(class_labels(R))
    else:
        reps = R.carrier()
    sets = _order_set_masks(R, reps, strong, dm)
    empty = ~np.any(sets != 0, axis=1)
    common = dict(
        ring=R.spec,
        mode="strong" if strong else "plain",
        exponent_of_units=E,
        element_count=R.size,
        classes_scanned=len(reps),
        distinct_order_sets=len(np.unique(sets, axis=0)),
        idempotent_count=len(A.idempotent_encs(R)),
        unit_count=len(A.unit_encs(R)),
        conjugacy_reduction=bool(conjugacy_reduction),
    )
    if empty.any():
        if not strong:
            raise AssertionError(f"{R} has an element with no clean decomposition; finite rings are clean")
        report = IndexReport(index=None, witnesses=[], elapsed_s=time.perf_counter() - t0,
                             no_decomposition=int(reps[np.flatnonzero(empty)[0]]), **common)
        R._memo[memo_key] = report
        return report
    n = next(d for d in dm.divisors if dm.feasible(sets, d).all())
    witnesses = []
    for p in sorted(sympy.primefactors(n)):
        forced = np.flatnonzero(~dm.feasible(sets, n // p))
        row = int(forced[0])
        w = (int(reps[row]), _min_order_dividing(sets[row], dm, n))
        if w not in witnesses:
            witnesses.append(w)
    assert math.lcm(*(o for _, o in witnesses)) == n if witnesses else n == 1
    report = IndexReport(index=n, witnesses=witnesses, elapsed_s=time.perf_counter() - t0, **common)
    R._memo[memo_key] = report
    return report

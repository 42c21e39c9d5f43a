"""Finite rings with exact arithmetic.

Every element is identified with its integer encoding in ``[0, |R|)``. Rings
expose two arithmetic routes over those encodings:

* bulk ``add``/``neg``/``sub``/``mul`` on numpy arrays (broadcasting), used by
  every scan in the analysis and torsion engines;
* structural payload arithmetic (``RingElem`` operators), built on
  ``FieldElem`` and kept independent of the bulk route so that the two can be
  checked against each other.

Encodings are mixed-radix with the first position least significant:
matrix entries row-major, triangular entries row-major over the upper
triangle, product components in factor order, quotient coefficients in
graded-lexicographic monomial order (1, x1, x2, ..., x1^2, x1 x2, ...).
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import os
import re
from dataclasses import dataclass

import numpy as np
import sympy

from .errors import ElementOutOfRange, HandleMismatch, ParseError, SizeGuardExceeded, ZeroRing
from .ffield import FieldElem, FieldSpec, field_from_order

DEFAULT_MAX_SIZE = 2**20


def default_max_size():
    env = os.environ.get("TCL_MAX_SIZE")
    return int(env) if env else DEFAULT_MAX_SIZE


class Ring:
    size: int

    def __init__(self):
        self._memo = {}

    def __str__(self):
        return self.spec

    def __repr__(self):
        return f"<Ring {self.spec} |R|={self.size}>"

    # -- carrier ----------------------------------------------------------
    def carrier(self):
        return np.arange(self.size, dtype=np.int64)

    def elements(self):
        for i in range(self.size):
            yield RingElem(self, i)

    def element(self, enc):
        enc = int(enc)
        if not 0 <= enc < self.size:
            raise ElementOutOfRange(f"{enc} is outside [0, {self.size}) for {self.spec}")
        return RingElem(self, enc)

    def zero(self):
        return RingElem(self, 0)

    def one(self):
        return RingElem(self, self.one_enc)

    @functools.cached_property
    def one_enc(self):
        return self.encode(self.one_payload())

    @functools.cached_property
    def char(self):
        c, x = 1, self.one_enc
        while x != 0:
            x = int(self.add(x, self.one_enc))
            c += 1
        return c

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, n):
        """a**n for an array a and a scalar or per-element array of exponents n >= 0."""
        a = np.asarray(a, dtype=np.int64)
        n = np.asarray(n, dtype=np.int64)
        out = np.full(np.broadcast(a, n).shape, self.one_enc, dtype=np.int64)
        base = np.broadcast_to(a, out.shape).copy()
        n = np.broadcast_to(n, out.shape).copy()
        while np.any(n > 0):
            odd = (n & 1).astype(bool)
            if odd.any():
                out = np.where(odd, self.mul(out, base), out)
            n >>= 1
            if np.any(n > 0):
                base = self.mul(base, base)
        return out

    def parse_element(self, text):
        """Decimal encoding or a JSON bracket literal of field-element encodings."""
        text = str(text).strip()
        if re.fullmatch(r"-?\d+", text):
            return self.element(int(text))
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(text, exc.pos, "an integer or a bracket literal") from None
        return RingElem(self, self.from_literal(obj))

    def _literal_scalar(self, F, x):
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < F.q:
            raise ElementOutOfRange(f"{x!r} is not an element encoding of {F}")
        return x


@dataclass(frozen=True, eq=False)
class RingElem:
    ring: Ring
    enc: int

    def __eq__(self, other):
        return isinstance(other, RingElem) and self.ring is other.ring and self.enc == other.enc

    def __hash__(self):
        return hash((id(self.ring), self.enc))

    def __int__(self):
        return self.enc

    @property
    def payload(self):
        return self.ring.decode(self.enc)

    def literal(self):
        return self.ring.to_literal(self.enc)

    def _other(self, other):
        if not isinstance(other, RingElem) or other.ring is not self.ring:
            raise HandleMismatch(f"operands belong to different rings")
        return other

    def _wrap(self, payload):
        return RingElem(self.ring, self.ring.encode(payload))

    def __add__(self, other):
        return self._wrap(self.ring.sadd(self.payload, self._other(other).payload))

    def __neg__(self):
        return self._wrap(self.ring.sneg(self.payload))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __mul__(self, other):
        return self._wrap(self.ring.smul(self.payload, self._other(other).payload))

    def __pow__(self, n):
        out, base = self.ring.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"{self.ring.spec}:{json.dumps(self.literal(), separators=(',', ':'))}"


def ring_add(a, b):
    return a + b


def ring_mul(a, b):
    return a * b


def ring_neg(a):
    return -a


def ring_zero(R):
    return R.zero()


def ring_one(R):
    return R.one()


def ring_elements(R):
    return R.elements()


def ring_char(R):
    return R.char


# -- algebras over a prime field with base-p digit encodings --------------

class _PrimeAlgebra(Ring):
    """Common base: field F, ``slots`` coefficients from F, encoding base q per slot."""

    def __init__(self, F, slots):
        super().__init__()
        self.F = F
        self.slots = slots
        self.size = F.q**slots
        self.p = F.p
        self.dim = slots * F.k  # dimension over F_p
        self._qpw = F.q ** np.arange(slots, dtype=np.int64)
        self._ppw = F.p ** np.arange(self.dim, dtype=np.int64)

    @property
    def fa(self):
        return self.F.arith

    def _slots_of(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._qpw) % self.F.q

    def _from_slots(self, s):
        return (np.asarray(s, dtype=np.int64) * self._qpw).sum(axis=-1)

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        da = (a[..., None] // self._ppw) % self.p
        db = (b[..., None] // self._ppw) % self.p
        return (((da + db) % self.p) * self._ppw).sum(axis=-1)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        da = (a[..., None] // self._ppw) % self.p
        return (((-da) % self.p) * self._ppw).sum(axis=-1)

    def additive_generators(self):
        return [int(x) for x in self._ppw]

    def _field_slots(self, enc):
        enc = int(enc)
        return [self.F.elem((enc // self.F.q**i) % self.F.q) for i in range(self.slots)]


class FieldRing(_PrimeAlgebra):
    def __init__(self, F):
        super().__init__(F, 1)
        self.spec = str(F)

    def mul(self, a, b):
        return self.fa.mul(a, b)

    def unit_mask(self):
        return self.carrier() != 0

    def decode(self, enc):
        return self.F.elem(enc)

    def encode(self, x):
        return int(x)

    def one_payload(self):
        return self.F.one()

    def sadd(self, x, y):
        return x + y

    def sneg(self, x):
        return -x

    def smul(self, x, y):
        return x * y

    def to_literal(self, enc):
        return int(enc)

    def from_literal(self, obj):
        return self._literal_scalar(self.F, obj)


def _mat_mul_payload(A, B):
    n, m, l = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(l):
            acc = A[i][0] * B[0][j]
            for t in range(1, m):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_mul_bulk(fa, A, B):
    """Batched product of (..., n, n) arrays of field encodings."""
    if fa.k == 1:
        return np.matmul(A, B) % fa.p
    n = A.shape[-1]
    C = fa.mul(A[..., :, 0, None], B[..., None, 0, :])
    for t in range(1, n):
        C = fa.add(C, fa.mul(A[..., :, t, None], B[..., None, t, :]))
    return C


def _invertible_bulk(fa, mats):
    """Row-reduce a stack of square matrices over the field; True where full rank."""
    M = np.array(mats, dtype=np.int64, copy=True)
    N, n, _ = M.shape
    ok = np.ones(N, dtype=bool)
    rows = np.arange(N)
    for c in range(n):
        nz = M[:, c:, c] != 0
        ok &= nz.any(axis=1)
        piv = c + nz.argmax(axis=1)
        top, pivrow = M[rows, c].copy(), M[rows, piv].copy()
        M[rows, c], M[rows, piv] = pivrow, top
        lead = M[:, c, c]
        inv = fa.inv(np.where(lead == 0, 1, lead))
        M[:, c, :] = fa.mul(M[:, c, :], inv[:, None])
        for r in range(c + 1, n):
            M[:, r, :] = fa.sub(M[:, r, :], fa.mul(M[:, r, c, None], M[:, c, :]))
    return ok


class MatrixRing(_PrimeAlgebra):
    def __init__(self, n, F):
        super().__init__(F, n * n)
        self.n = n
        self.spec = f"M({n},{F})"

    def _mats(self, a):
        s = self._slots_of(a)
        return s.reshape(s.shape[:-1] + (self.n, self.n))

    def mul(self, a, b):
        C = _mat_mul_bulk(self.fa, self._mats(a), self._mats(b))
        return self._from_slots(C.reshape(C.shape[:-2] + (self.slots,)))

    def unit_mask(self):
        out = np.empty(self.size, dtype=bool)
        chunk = 1 << 16
        for lo in range(0, self.size, chunk):
            idx = np.arange(lo, min(lo + chunk, self.size), dtype=np.int64)
            out[lo : lo + len(idx)] = _invertible_bulk(self.fa, self._mats(idx))
        return out

    def decode(self, enc):
        s = self._field_slots(enc)
        return tuple(tuple(s[i * self.n : (i + 1) * self.n]) for i in range(self.n))

    def encode(self, A):
        q = self.F.q
        return sum(int(A[i][j]) * q ** (i * self.n + j) for i in range(self.n) for j in range(self.n))

    def one_payload(self):
        z, o = self.F.zero(), self.F.one()
        return tuple(tuple(o if i == j else z for j in range(self.n)) for i in range(self.n))

    def sadd(self, A, B):
        return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(A, B))

    def sneg(self, A):
        return tuple(tuple(-x for x in r) for r in A)

    def smul(self, A, B):
        return _mat_mul_payload(A, B)

    def to_literal(self, enc):
        return [[int(x) for x in row] for row in self.decode(enc)]

    def from_literal(self, obj):
        if not isinstance(obj, list) or len(obj) != self.n or any(not isinstance(r, list) or len(r) != self.n for r in obj):
            raise ElementOutOfRange(f"expected a {self.n}x{self.n} matrix literal for {self.spec}")
        return sum(self._literal_scalar(self.F, obj[i][j]) * self.F.q ** (i * self.n + j)
                   for i in range(self.n) for j in range(self.n))


class TriangularRing(_PrimeAlgebra):
    def __init__(self, m, F):
        super().__init__(F, m * (m + 1) // 2)
        self.m = m
        self.spec = f"T({m},{F})"
        self.positions = [(i, j) for i in range(m) for j in range(i, m)]
        self._pi = np.array([i for i, _ in self.positions], dtype=np.int64)
        self._pj = np.array([j for _, j in self.positions], dtype=np.int64)

    def _mats(self, a):
        s = self._slots_of(a)
        M = np.zeros(s.shape[:-1] + (self.m, self.m), dtype=np.int64)
        M[..., self._pi, self._pj] = s
        return M

    def mul(self, a, b):
        C = _mat_mul_bulk(self.fa, self._mats(a), self._mats(b))
        return self._from_slots(C[..., self._pi, self._pj])

    def unit_mask(self):
        s = self._slots_of(self.carrier())
        diag = [k for k, (i, j) in enumerate(self.positions) if i == j]
        return np.all(s[:, diag] != 0, axis=1)

    def decode(self, enc):
        s = self._field_slots(enc)
        z = self.F.zero()
        M = [[z] * self.m for _ in range(self.m)]
        for k, (i, j) in enumerate(self.positions):
            M[i][j] = s[k]
        return tuple(tuple(r) for r in M)

    def encode(self, A):
        return sum(int(A[i][j]) * self.F.q**k for k, (i, j) in enumerate(self.positions))

    def one_payload(self):
        z, o = self.F.zero(), self.F.one()
        return tuple(tuple(o if i == j else z for j in range(self.m)) for i in range(self.m))

    def sadd(self, A, B):
        return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(A, B))

    def sneg(self, A):
        return tuple(tuple(-x for x in r) for r in A)

    def smul(self, A, B):
        return _mat_mul_payload(A, B)

    def to_literal(self, enc):
        return [[int(x) for x in row] for row in self.decode(enc)]

    def from_literal(self, obj):
        m = self.m
        if not isinstance(obj, list) or len(obj) != m or any(not isinstance(r, list) or len(r) != m for r in obj):
            raise ElementOutOfRange(f"expected a {m}x{m} matrix literal for {self.spec}")
        if any(obj[i][j] != 0 for i in range(m) for j in range(i)):
            raise ElementOutOfRange(f"{self.spec} literal has nonzero entries below the diagonal")
        return sum(self._literal_scalar(self.F, obj[i][j]) * self.F.q**k for k, (i, j) in enumerate(self.positions))


def graded_lex_monomials(e, v):
    """Exponent vectors with entries < e, by total degree then x1 before x2."""
    monos = list(itertools.product(range(e), repeat=v))
    return sorted(monos, key=lambda a: (sum(a), tuple(-x for x in a)))


class PolyQuotRing(_PrimeAlgebra):
    """F[x_1..x_v] / (x_1^e, ..., x_v^e)."""

    def __init__(self, F, e, v):
        self.monomials = graded_lex_monomials(e, v)
        super().__init__(F, len(self.monomials))
        self.e, self.v = e, v
        self.spec = f"Q({F},{e},{v})"
        index = {a: i for i, a in enumerate(self.monomials)}
        self._index = index
        self._pairs = []
        for (ia, a), (ib, b) in itertools.product(enumerate(self.monomials), repeat=2):
            c = tuple(x + y for x, y in zip(a, b))
            if all(x < e for x in c):
                self._pairs.append((ia, ib, index[c]))

    def mul(self, a, b):
        A, B = self._slots_of(a), self._slots_of(b)
        shape = np.broadcast_shapes(A.shape, B.shape)
        C = np.zeros(shape, dtype=np.int64)
        fa = self.fa
        for ia, ib, ic in self._pairs:
            C[..., ic] = fa.add(C[..., ic], fa.mul(A[..., ia], B[..., ib]))
        return self._from_slots(C)

    def unit_mask(self):
        # local ring: units are the elements with nonzero constant term
        return (self.carrier() % self.F.q) != 0

    def decode(self, enc):
        s = self._field_slots(enc)
        return {a: c for a, c in zip(self.monomials, s) if not c.is_zero()}

    def encode(self, poly):
        return sum(int(c) * self.F.q ** self._index[a] for a, c in poly.items())

    def one_payload(self):
        return {self.monomials[0]: self.F.one()}

    def sadd(self, f, g):
        out = dict(f)
        for a, c in g.items():
            out[a] = out[a] + c if a in out else c
        return {a: c for a, c in out.items() if not c.is_zero()}

    def sneg(self, f):
        return {a: -c for a, c in f.items()}

    def smul(self, f, g):
        out = {}
        for (a, c), (b, d) in itertools.product(f.items(), g.items()):
            m = tuple(x + y for x, y in zip(a, b))
            if all(x < self.e for x in m):
                out[m] = out[m] + c * d if m in out else c * d
        return {a: c for a, c in out.items() if not c.is_zero()}

    def to_literal(self, enc):
        return [int(x) for x in self._field_slots(enc)]

    def from_literal(self, obj):
        if not isinstance(obj, list) or len(obj) != self.slots:
            raise ElementOutOfRange(f"expected {self.slots} coefficients for {self.spec}")
        return sum(self._literal_scalar(self.F, c) * self.F.q**i for i, c in enumerate(obj))


class ProductRing(Ring):
    def __init__(self, factors):
        super().__init__()
        if not factors:
            raise ZeroRing("a product needs at least one factor")
        self.factors = list(factors)
        self.spec = "P(" + ",".join(f.spec for f in self.factors) + ")"
        self.strides = [math.prod(f.size for f in self.factors[:i]) for i in range(len(self.factors))]
        self.size = math.prod(f.size for f in self.factors)

    def components(self, a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // s) % f.size for s, f in zip(self.strides, self.factors)]

    def _join(self, comps):
        return sum(c * s for c, s in zip(comps, self.strides))

    def add(self, a, b):
        return self._join([f.add(x, y) for f, x, y in zip(self.factors, self.components(a), self.components(b))])

    def neg(self, a):
        return self._join([f.neg(x) for f, x in zip(self.factors, self.components(a))])

    def mul(self, a, b):
        return self._join([f.mul(x, y) for f, x, y in zip(self.factors, self.components(a), self.components(b))])

    def unit_mask(self):
        mask = np.ones(self.size, dtype=bool)
        for f, c in zip(self.factors, self.components(self.carrier())):
            mask &= f.unit_mask()[c]
        return mask

    def additive_generators(self):
        return [g * s for f, s in zip(self.factors, self.strides) for g in f.additive_generators()]

    def decode(self, enc):
        return tuple(f.decode(int(c)) for f, c in zip(self.factors, self.components(enc)))

    def encode(self, xs):
        return sum(f.encode(x) * s for f, x, s in zip(self.factors, xs, self.strides))

    def one_payload(self):
        return tuple(f.one_payload() for f in self.factors)

    def sadd(self, xs, ys):
        return tuple(f.sadd(x, y) for f, x, y in zip(self.factors, xs, ys))

    def sneg(self, xs):
        return tuple(f.sneg(x) for f, x in zip(self.factors, xs))

    def smul(self, xs, ys):
        return tuple(f.smul(x, y) for f, x, y in zip(self.factors, xs, ys))

    def to_literal(self, enc):
        return [f.to_literal(int(c)) for f, c in zip(self.factors, self.components(enc))]

    def from_literal(self, obj):
        if not isinstance(obj, list) or len(obj) != len(self.factors):
            raise ElementOutOfRange(f"expected {len(self.factors)} components for {self.spec}")
        return sum(f.from_literal(x) * s for f, x, s in zip(self.factors, obj, self.strides))


# -- spec grammar -----------------------------------------------------------

class _Parser:
    def __init__(self, text, limit):
        self.text = text
        self.limit = limit
        self.pos = 0

    def fail(self, expected):
        raise ParseError(self.text, self.pos, expected)

    def eat(self, token):
        if not self.text.startswith(token, self.pos):
            self.fail(repr(token))
        self.pos += len(token)

    def integer(self):
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.fail("an integer")
        self.pos = m.end()
        return int(m.group())

    def guard(self, size):
        if size > self.limit:
            raise SizeGuardExceeded(size, self.limit)

    def field(self):
        self.eat("GF(")
        start = self.pos
        q = self.integer()
        if q < 2 or len(sympy.factorint(q)) != 1:
            self.pos = start
            self.fail("a prime power")
        self.eat(")")
        self.guard(q)
        return field_from_order(q)

    def ring(self):
        t = self.text[self.pos : self.pos + 2]
        if t == "GF":
            return FieldRing(self.field())
        if t in ("M(", "T("):
            self.pos += 2
            n = self.integer()
            self.eat(",")
            if not self.text.startswith("GF(", self.pos):
                self.fail("a field GF(q) (M and T take field arguments only)")
            F = self.field()
            self.eat(")")
            if n < 1:
                raise ZeroRing(f"{t}{n},{F}) is the zero ring")
            self.guard(F.q ** (n * n if t == "M(" else n * (n + 1) // 2))
            return MatrixRing(n, F) if t == "M(" else TriangularRing(n, F)
        if t == "P(":
            self.pos += 2
            if self.text.startswith(")", self.pos):
                raise ZeroRing("P() is the zero ring")
            factors = [self.ring()]
            while self.text.startswith(",", self.pos):
                self.pos += 1
                factors.append(self.ring())
            self.eat(")")
            self.guard(math.prod(f.size for f in factors))
            return ProductRing(factors)
        if t == "Q(":
            self.pos += 2
            F = self.field()
            self.eat(",")
            e = self.integer()
            self.eat(",")
            v = self.integer()
            self.eat(")")
            if e < 1:
                raise ZeroRing("Q(...) with exponent 0 is the zero ring")
            self.guard(F.q ** (e**v))
            return PolyQuotRing(F, e, v)
        self.fail("one of GF(, M(, T(, P(, Q(")


def parse_ring(text, max_size=None):
    limit = default_max_size() if max_size is None else int(max_size)
    compact = re.sub(r"\s+", "", text)
    parser = _Parser(compact, limit)
    R = parser.ring()
    if parser.pos != len(compact):
        parser.fail("end of input")
    return R


@functools.lru_cache(maxsize=64)
def _ring_make_cached(compact, limit):
    return parse_ring(compact, limit)


def ring_make(spec, max_size=None):
    """Build (or fetch the cached) ring for a spec string."""
    limit = default_max_size() if max_size is None else int(max_size)
    return _ring_make_cached(re.sub(r"\s+", "", spec), limit)


def make_field_ring(F: FieldSpec):
    return FieldRing(F)


def make_matrix_ring(n, F: FieldSpec):
    return MatrixRing(n, F)

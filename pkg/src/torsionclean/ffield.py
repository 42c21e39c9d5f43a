"""Finite fields GF(p^k) as polynomial residues over F_p.

Two arithmetic routes live here. ``FieldElem`` does schoolbook polynomial
arithmetic modulo the field modulus and is the reference path. ``FieldArith``
works on integer encodings held in numpy arrays (log/antilog tables for
proper extensions) and is what the ring layer uses in bulk.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np
import sympy

from .errors import (
    DegreeOutOfRange,
    DivisionByZero,
    NonPrime,
    NotIrreducible,
    SizeGuardExceeded,
    SpecMismatch,
    ZeroElement,
)

FIELD_SIZE_GUARD = 2**20


# -- polynomials over F_p, little-endian coefficient tuples ------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mc) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] != 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) with a fixed monic irreducible modulus (k+1 coefficients, low degree first)."""

    p: int
    k: int
    modulus: tuple

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise NonPrime(self.p)
        if self.k < 1:
            raise DegreeOutOfRange(self.k)
        object.__setattr__(self, "modulus", tuple(int(c) % self.p for c in self.modulus))
        if len(self.modulus) != self.k + 1 or not is_irreducible(self.modulus, self.p):
            raise NotIrreducible(f"{self.modulus} is not a monic irreducible of degree {self.k} over F_{self.p}")

    @property
    def q(self):
        return self.p**self.k

    def __str__(self):
        return f"GF({self.q})"

    def elem(self, enc):
        enc = int(enc)
        if not 0 <= enc < self.q:
            raise ValueError(f"{enc} is not an element encoding of {self}")
        return FieldElem(self, tuple((enc // self.p**i) % self.p for i in range(self.k)))

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def elements(self):
        return [self.elem(i) for i in range(self.q)]

    @functools.cached_property
    def arith(self):
        return FieldArith(self)


@functools.lru_cache(maxsize=None)
def field_make(p, k=1):
    """Field of order p^k on the lexicographically smallest monic irreducible modulus."""
    if not sympy.isprime(p):
        raise NonPrime(p)
    if k < 1:
        raise DegreeOutOfRange(k)
    if p**k > FIELD_SIZE_GUARD:
        raise SizeGuardExceeded(p**k, FIELD_SIZE_GUARD)
    for low in itertools.product(range(p), repeat=k):
        modulus = low + (1,)
        if is_irreducible(modulus, p):
            return FieldSpec(p, k, modulus)
    raise AssertionError("every degree has an irreducible polynomial")


def field_from_order(q):
    """Parse a prime power q into GF(q)."""
    factors = sympy.factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise NonPrime(q)
    (p, k), = factors.items()
    return field_make(p, k)


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, FieldElem) or other.spec != self.spec:
            raise SpecMismatch(f"operands live in different fields: {self.spec} vs {getattr(other, 'spec', other)}")

    def __int__(self):
        return sum(c * self.spec.p**i for i, c in enumerate(self.coeffs))

    @property
    def enc(self):
        return int(self)

    def _make(self, c):
        c = list(c) + [0] * (self.spec.k - len(c))
        return FieldElem(self.spec, tuple(c[: self.spec.k]))

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return self._make([(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._make([(-a) % self.spec.p for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.spec.p
        return self._make(_poly_mod(_poly_mul(list(self.coeffs), list(other.coeffs), p), self.spec.modulus, p))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.spec.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero(f"zero has no inverse in {self.spec}")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        return self * other.inverse()

    def order(self):
        return field_elem_order(self)

    def __repr__(self):
        return f"{self.spec}[{int(self)}]"


def field_add(x, y):
    return x + y


def field_mul(x, y):
    return x * y


def field_neg(x):
    return -x


def field_inv(x):
    return x.inverse()


def field_elem_order(x):
    """Multiplicative order of a nonzero element, by iterated multiplication."""
    if x.is_zero():
        raise ZeroElement(f"zero has no multiplicative order in {x.spec}")
    one = x.spec.one()
    t, y = 1, x
    while y != one:
        y = y * x
        t += 1
        if t > x.spec.q:
            raise AssertionError(f"order of {x} exceeds field size")
    return t


class FieldArith:
    """Bulk arithmetic on arrays of field-element encodings."""

    def __init__(self, spec):
        self.spec = spec
        self.p, self.k, self.q = spec.p, spec.k, spec.q
        self._pw = self.p ** np.arange(self.k, dtype=np.int64)

    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def _undigits(self, d):
        return (d * self._pw).sum(axis=-1)

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        return self._undigits((self._digits(a) + self._digits(b)) % self.p)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self._undigits((-self._digits(a)) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @functools.cached_property
    def _tables(self):
        """(exp, log) tables for a primitive element; built by doubling runs of powers."""
        spec, q = self.spec, self.q
        primes = sympy.primefactors(q - 1)
        one = spec.one()
        for g in range(2, q):
            ge = spec.elem(g)
            if all(ge ** ((q - 1) // r) != one for r in primes):
                break
        else:  # q == 2
            ge = one

        def mult_matrix(c):
            # column j holds the digits of c * x^j
            cols = []
            for j in range(self.k):
                xj = spec.elem(self.p**j)
                cols.append((c * xj).coeffs)
            return np.array(cols, dtype=np.int64)  # row j = image of basis j

        exp_d = np.zeros((1, self.k), dtype=np.int64)
        exp_d[0, 0] = 1
        step = ge
        while len(exp_d) < q - 1:
            block = (exp_d @ mult_matrix(step)) % self.p
            exp_d = np.concatenate([exp_d, block])
            step = step * step
        exp = self._undigits(exp_d[: q - 1])
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        return exp, log

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        exp, log = self._tables
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def power(self, a, n):
        a = np.asarray(a, dtype=np.int64)
        out = np.ones_like(a)
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"zero has no inverse in {self.spec}")
        return self.power(a, self.q - 2)

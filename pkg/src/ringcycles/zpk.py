"""Exact arithmetic in Z_{p^k} and the Galois ring GR(p^k, d) = Z_{p^k}[t]/(h).

Residues are plain Python ints kept in ``[0, p^k)``, so precision is bounded
only by memory. A :class:`GaloisRing` is an immutable descriptor; its
elements are :class:`RingElement` values holding ``d`` coefficients.

>>> R = GaloisRing.of(5, 2, 2)
>>> t = R.gen
>>> (t * t).coeffs
(24, 24)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from sympy import factorint, isprime

from . import _fpx
from .errors import DescriptorMismatchError, NonUnitError, RingCyclesError

INFINITE = math.inf


def vp(n, p):
    """p-adic valuation of an integer; INFINITE for 0."""
    if n == 0:
        return INFINITE
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_free_part(n, p):
    while n % p == 0:
        n //= p
    return n


@lru_cache(maxsize=None)
def _is_prime(p):
    return isprime(p)


@lru_cache(maxsize=None)
def _is_irreducible(h, p):
    return _fpx.is_irreducible(list(h), p)


@dataclass(frozen=True)
class Modulus:
    p: int
    k: int
    q: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "q", self.p**self.k)

    def __str__(self):
        return f"Z_{self.p}^{self.k}"


@lru_cache(maxsize=None)
def find_irreducible(p, d):
    """First monic irreducible degree-d polynomial mod p, lexicographic in (c0, ..., c_{d-1})."""
    if d == 1:
        return (0, 1)
    for low in product(range(p), repeat=d):
        h = list(low) + [1]
        if _fpx.is_irreducible(h, p):
            return tuple(h)
    raise RingCyclesError(f"no irreducible polynomial of degree {d} mod {p}")  # unreachable


@dataclass(frozen=True)
class GaloisRing:
    """Descriptor of GR(p^k, d); ``h`` is monic, lowest degree first."""

    base: Modulus
    h: tuple

    def __post_init__(self):
        h = tuple(int(c) % self.base.q for c in self.h)
        object.__setattr__(self, "h", h)
        if len(h) < 2 or h[-1] != 1:
            raise ValueError("h must be monic of degree >= 1")
        if len(h) > 2 and not _is_irreducible(tuple(c % self.base.p for c in h), self.base.p):
            raise ValueError(f"h = {h} is not irreducible mod {self.base.p}")

    @classmethod
    def of(cls, p, k, d=1):
        return cls(Modulus(p, k), find_irreducible(p, d))

    @property
    def p(self):
        return self.base.p

    @property
    def k(self):
        return self.base.k

    @property
    def q(self):
        return self.base.q

    @property
    def d(self):
        return len(self.h) - 1

    @property
    def size(self):
        return self.q**self.d

    def with_precision(self, k):
        return GaloisRing(Modulus(self.p, k), self.h)

    def element(self, value):
        if isinstance(value, RingElement):
            return self.embed(value)
        if isinstance(value, int):
            coeffs = [value] + [0] * (self.d - 1)
        else:
            coeffs = list(value)
            if len(coeffs) > self.d:
                raise ValueError(f"too many coefficients for degree-{self.d} ring")
            coeffs += [0] * (self.d - len(coeffs))
        q = self.q
        return RingElement(self, tuple(int(c) % q for c in coeffs))

    __call__ = element

    def embed(self, x):
        """Move an element of a ring with the same h to this precision (verbatim coefficients)."""
        if x.ring.d != self.d or any((a - b) % self.p for a, b in zip(x.ring.h, self.h)):
            raise DescriptorMismatchError(f"cannot embed {x.ring} into {self}")
        q = self.q
        return RingElement(self, tuple(c % q for c in x.coeffs))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    @property
    def gen(self):
        """Class of t modulo h."""
        if self.d == 1:
            return self.element(-self.h[0])
        return self.element([0, 1])

    def elements(self):
        for cs in product(range(self.q), repeat=self.d):
            yield RingElement(self, cs)

    def units(self):
        return (x for x in self.elements() if x.is_unit())

    def __str__(self):
        if self.d == 1:
            return f"Z/{self.q}"
        return f"GR({self.p}^{self.k}, {self.d})"


@dataclass(frozen=True)
class RingElement:
    ring: GaloisRing
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, RingElement):
            other = self.ring.element(other)
        if other.ring != self.ring:
            raise DescriptorMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        q = self.ring.q
        return RingElement(self.ring, tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        q = self.ring.q
        return RingElement(self.ring, tuple(-a % q for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        R = self.ring
        q, d, h = R.q, R.d, R.h
        if d == 1:
            return RingElement(R, ((self.coeffs[0] * other.coeffs[0]) % q,))
        prod_ = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod_[i + j] += a * b
        for i in range(2 * d - 2, d - 1, -1):
            c = prod_[i] % q
            if c:
                for j in range(d):
                    prod_[i - d + j] -= c * h[j]
        return RingElement(R, tuple(c % q for c in prod_[:d]))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return ring_inverse(self) ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def is_unit(self):
        p = self.ring.p
        return any(c % p for c in self.coeffs)

    def mod_p(self):
        """Reduction into the residue field GR(p, d)."""
        return self.ring.with_precision(1).embed(self)

    def __repr__(self):
        if self.ring.d == 1:
            return f"{self.coeffs[0]} (mod {self.ring.q})"
        return f"{list(self.coeffs)} in {self.ring}"


def ring_add(a, b):
    return a + b


def ring_mul(a, b):
    return a * b


def ring_neg(a):
    return -a


def valuation(a):
    """Largest v with every coefficient divisible by p^v; INFINITE for zero."""
    if not a:
        return INFINITE
    return min(vp(c, a.ring.p) for c in a.coeffs if c)


def _field_inverse(a, ring):
    # extended Euclid in F_p[t] against h
    p = ring.p
    r0, r1 = [c % p for c in ring.h], _fpx.reduce(a.coeffs, p)
    s0, s1 = [], [1]
    while r1:
        qt, r = _fpx.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fpx.sub(s0, _fpx.mul(qt, s1, p), p)
    # r0 is a nonzero constant since h is irreducible and a is a unit
    inv = pow(r0[0], -1, p)
    return _fpx.scale(s0, inv, p)


def ring_inverse(a):
    """Inverse of a unit: field inverse mod p, then Newton refinement x <- x(2 - a x)."""
    if not a.is_unit():
        raise NonUnitError(valuation(a))
    R = a.ring
    x = R.element(_field_inverse(a, R) or [0])
    two = R.element(2)
    precision = 1
    while precision < R.k:
        x = x * (two - a * x)
        precision *= 2
    return x


def mult_order(a):
    """Least j >= 1 with a^j = 1 exactly in GR(p^k, d)."""
    if not a.is_unit():
        raise NonUnitError(valuation(a))
    R = a.ring
    p, d, k = R.p, R.d, R.k
    a1 = a.mod_p()
    one1 = a1.ring.one
    e = p**d - 1
    for prime in factorint(e):
        while e % prime == 0 and a1 ** (e // prime) == one1:
            e //= prime
    b = a**e
    s = 0
    while b != R.one:
        b = b**p
        s += 1
        if s > (k - 1) * d:
            raise RingCyclesError(f"order search exceeded p-power bound for {a!r}")
    return e * p**s

"""Polynomials over Z_{p^k} and GR(p^k, d).

Covers the arithmetic needed by the order theory: reduction mod p and
factorization there, Newton (Hensel) lifting of simple roots, a brute-force
order oracle, and the minimal polynomial of a generated sequence.
"""

from __future__ import annotations

import ast
import random
import re
from dataclasses import dataclass
from math import ceil, log

from . import _fpx
from .errors import (
    BoundExhaustedError,
    DescriptorMismatchError,
    MultipleRootError,
    ParseError,
    UnsupportedRingError,
    ZeroRootError,
)
from .zpk import GaloisRing, RingElement, ring_inverse

ROOT_SEARCH_LIMIT = 10**6


class Polynomial:
    """Dense polynomial with coefficients in a :class:`GaloisRing`, lowest degree first.

    The zero polynomial has no coefficients. Instances are immutable.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=()):
        cs = [c if isinstance(c, RingElement) and c.ring == ring else ring.element(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def from_ints(cls, coeffs, p, k=1):
        return cls(GaloisRing.of(p, k), [int(c) for c in coeffs])

    @classmethod
    def parse(cls, text, p, k=1):
        return parse_poly(text, p, k)

    @property
    def p(self):
        return self.ring.p

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.leading == self.ring.one

    def int_coeffs(self):
        """Integer coefficients over Z_{p^k} (d = 1), as symmetric representatives in (-q/2, q/2].

        These are the integers the polynomial stands for when it is lifted to a
        higher precision or read over Z.
        """
        if self.ring.d != 1:
            raise UnsupportedRingError("integer coefficients need a d = 1 ring")
        return [_symmetric(c.coeffs[0], self.ring.q) for c in self.coeffs]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def _same(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(self.ring, [other])
        if other.ring != self.ring:
            raise DescriptorMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __add__(self, other):
        other = self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return Polynomial(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        other = self._same(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.ring)
        out = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.ring, out)

    def __divmod__(self, other):
        other = self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv = ring_inverse(other.leading)
        a = list(self.coeffs)
        db = other.degree()
        q = [self.ring.zero] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] * inv
            if c:
                q[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] = a[i - db + j] - c * other.coeffs[j]
        return Polynomial(self.ring, q), Polynomial(self.ring, a[:db] if db > 0 else [])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x):
        """Evaluate at ``x``; coefficients are moved into ``x``'s ring."""
        if not isinstance(x, RingElement):
            x = self.ring.element(x)
        acc = x.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * x + _move(c, x.ring)
        return acc

    def derivative(self):
        return Polynomial(self.ring, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        inv = ring_inverse(self.leading)
        return Polynomial(self.ring, [c * inv for c in self.coeffs])

    def change_ring(self, ring):
        """Reinterpret coefficients in ``ring`` through their integer representatives."""
        return Polynomial(ring, [_move(c, ring) for c in self.coeffs])

    def reduce_mod_p(self):
        return self.change_ring(self.ring.with_precision(1))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r} over {self.ring})"


def _symmetric(c, q):
    return c - q if c > q // 2 else c


def _move(c, ring):
    if c.ring == ring:
        return c
    if c.ring.d == 1:
        return ring.element(_symmetric(c.coeffs[0], c.ring.q))
    return ring.embed(c)


# --- text format ----------------------------------------------------------

_TERM = re.compile(r"^([+-])(\d+)?(?:\*?([tx])(?:\^(\d+))?)?$")


def parse_poly(text, p, k=1):
    """Parse ``"1 - 4t + t^2"``, ``"c0 + c1*t + c2*t^2"`` or ``"[c0, c1, ...]"`` over Z_{p^k}.

    Coefficients whose absolute value is >= p^k are rejected.
    """
    ring = GaloisRing.of(p, k)
    q = ring.q
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    if s.startswith("["):
        try:
            values = ast.literal_eval(s)
        except (ValueError, SyntaxError) as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc
        if not all(isinstance(v, int) for v in values):
            raise ParseError(f"coefficients must be integers: {text!r}")
        coeffs = list(values)
    else:
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ParseError(f"cannot parse {text!r}")
        coeffs = []
        for term in terms:
            m = _TERM.match(term)
            if not m or (m.group(2) is None and m.group(3) is None):
                raise ParseError(f"bad term {term!r} in {text!r}")
            sign, digits, var, exp = m.groups()
            c = int(digits) if digits is not None else 1
            e = 0 if var is None else (int(exp) if exp is not None else 1)
            if sign == "-":
                c = -c
            coeffs += [0] * (e + 1 - len(coeffs))
            coeffs[e] += c
    for c in coeffs:
        if abs(c) >= q:
            raise ParseError(f"coefficient {c} out of range for modulus {q}")
    return Polynomial(ring, coeffs)


def format_poly(f):
    """Text form ``"1 - 4*t + t^2"``; over Z_{p^k} the symmetric integer coefficients are shown."""
    if f.is_zero():
        return "0"
    out = ""
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        if f.ring.d == 1:
            v = _symmetric(c.coeffs[0], f.ring.q)
            sign, mag = ("-" if v < 0 else "+"), str(abs(v))
        else:
            sign, mag = "+", "(" + ",".join(map(str, c.coeffs)) + ")"
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if mono and mag == "1":
            term = mono
        elif mono:
            term = f"{mag}*{mono}"
        else:
            term = mag
        if not out:
            out = term if sign == "+" else f"-{term}"
        else:
            out += f" {sign} {term}"
    return out


# --- public operations -----------------------------------------------------


def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


def poly_mod(a, b):
    return a % b


def poly_gcd_field(a, b):
    """Monic gcd; only defined over the residue field (k = 1)."""
    if a.ring != b.ring:
        raise DescriptorMismatchError(f"{a.ring} vs {b.ring}")
    if a.ring.k != 1:
        raise UnsupportedRingError(f"gcd needs a field, {a.ring} has k = {a.ring.k}")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _powmod(base, e, m):
    result = Polynomial(m.ring, [1]) % m
    base = base % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


@dataclass(frozen=True)
class RootSet:
    """All roots of f mod p in GR(p, d), with multiplicities, sorted by coefficients."""

    ring: GaloisRing
    roots: tuple

    @property
    def d(self):
        return self.ring.d

    @property
    def multiplicities(self):
        return [m for _, m in self.roots]

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def _multiplicity(f, r):
    m = 0
    lin = Polynomial(f.ring, [-r, 1])
    while True:
        qt, rem = divmod(f, lin)
        if not rem.is_zero():
            return m
        f = qt
        m += 1


def _split_roots(g, field, rng):
    """Roots of a squarefree g that splits into linear factors over ``field``."""
    if g.degree() == 0:
        return []
    if g.degree() == 1:
        g = g.monic()
        return [-g.coeffs[0]]
    q, p = field.size, field.p
    t = Polynomial(field, [0, 1])
    while True:
        delta = field.element([rng.randrange(p) for _ in range(field.d)])
        if p == 2:
            x = Polynomial(field, [0, delta])
            acc, term = x % g, x % g
            for _ in range(field.d - 1):
                term = (term * term) % g
                acc = acc + term
            probe = acc
        else:
            probe = _powmod(t + Polynomial(field, [delta]), (q - 1) // 2, g) - Polynomial(field, [1])
        h = poly_gcd_field(g, probe)
        if 0 < h.degree() < g.degree():
            return _split_roots(h, field, rng) + _split_roots(g // h, field, rng)


def factor_mod_p(f, search_limit=ROOT_SEARCH_LIMIT):
    """Reduce f mod p, find its splitting field GR(p, d) and every root with multiplicity."""
    if f.is_zero():
        raise ValueError("zero polynomial has no finite root set")
    p = f.p
    fp = [c % p for c in f.int_coeffs()]
    if fp[0] == 0:
        raise ZeroRootError(f"{format_poly(f)} has a zero root mod {p}")
    fp = _fpx.trim(fp)
    d = _fpx.splitting_degree(fp, p)
    field = GaloisRing.of(p, 1, d)
    F = Polynomial(field, fp)
    if field.size <= search_limit:
        found = [x for x in field.elements() if x and not F(x)]
    else:
        sq = Polynomial(field, [1])
        for g, _ in _fpx.squarefree_factorization(fp, p):
            sq = sq * Polynomial(field, g)
        found = _split_roots(sq.monic(), field, random.Random(0))
    roots = sorted(((r, _multiplicity(F, r)) for r in found), key=lambda rm: rm[0].coeffs)
    return RootSet(field, tuple(roots))


def newton_iterates(f, root, precision, count, stop_when_fixed=False):
    """The first ``count`` Newton iterates x, g(x), g(g(x)), ... computed at ``precision``.

    With ``stop_when_fixed`` the list ends at the first iterate equal to its
    predecessor, since every later iterate repeats it.
    """
    R = root.ring.with_precision(precision)
    F = f.change_ring(R)
    dF = F.derivative()
    x = R.embed(root)
    if not dF(x).is_unit():
        raise MultipleRootError(f"f'({root!r}) is not a unit mod p")
    if F(x).is_unit():
        raise ValueError(f"{root!r} is not a root of f mod p")
    out = [x]
    for _ in range(count - 1):
        nxt = x - F(x) * ring_inverse(dF(x))
        if stop_when_fixed and nxt == x:
            break
        x = nxt
        out.append(x)
    return out


def newton_lift(f, root, target_k):
    """g^{(target_k - 1)}(root) in GR(p^target_k, d), g(x) = x - f(x)/f'(x).

    ``f`` is lifted through its symmetric integer coefficients.
    """
    return newton_iterates(f, root, target_k, target_k)[-1]


def default_order_bound(f):
    p, k, m = f.p, f.ring.k, max(f.degree(), 1)
    extra = p ** ceil(log(m, p) - 1e-12) if m > 1 else 1
    return 4 * p**k * (p**m - 1) * extra


def poly_order_oracle(f, bound=None):
    """Least l <= bound with f | t^l - 1, by stepping t^l mod f one multiplication at a time."""
    if not f.is_monic():
        raise ValueError("order oracle needs a monic polynomial")
    if not f.coeffs[0].is_unit():
        raise ZeroRootError(f"{format_poly(f)} has a non-unit constant term")
    if bound is None:
        bound = default_order_bound(f)
    m = f.degree()
    if m == 0:
        return 1
    if f.ring.d == 1:
        q = f.ring.q
        fc = f.int_coeffs()
        target = [1] + [0] * (m - 1)
        r = list(target)
        for l in range(1, bound + 1):
            top = r[-1]
            r = [0] + r[:-1]
            if top:
                r = [(r[i] - top * fc[i]) % q for i in range(m)]
            if r == target:
                return l
        raise BoundExhaustedError(bound)
    R = f.ring
    target = [R.one] + [R.zero] * (m - 1)
    r = list(target)
    for l in range(1, bound + 1):
        top = r[-1]
        r = [R.zero] + r[:-1]
        if top:
            r = [r[i] - top * f.coeffs[i] for i in range(m)]
        if r == target:
            return l
    raise BoundExhaustedError(bound)


def minimal_poly_of_sequence(lmap, x0):
    """Minimal polynomial over F_p of the trajectory of ``x0`` under a linear map.

    Each coordinate sequence yields (1 - t^T)/gcd(H, 1 - t^T) with H the
    generating polynomial of one period; that denominator is the reciprocal of
    the coordinate's minimal polynomial. The result is the lcm over coordinates.
    """
    m1 = lmap.at_precision(1)
    p = m1.p
    x0 = tuple(int(c) % p for c in x0)
    traj = [x0]
    x = m1.step(x0)
    while x != x0:
        traj.append(x)
        x = m1.step(x)
    T = len(traj)
    one_minus = _fpx.reduce([1] + [0] * (T - 1) + [-1], p)
    result = [1]
    for j in range(len(x0)):
        H = _fpx.reduce([s[j] for s in traj], p)
        den = _fpx.divmod_(one_minus, _fpx.gcd(H, one_minus, p), p)[0]
        coord_min = _fpx.monic(list(reversed(den)), p)
        g = _fpx.gcd(result, coord_min, p)
        result = _fpx.divmod_(_fpx.mul(result, coord_min, p), g, p)[0]
    return Polynomial(GaloisRing.of(p, 1), _fpx.monic(result, p))

"""Order of a polynomial over Z_{p^k}: P_1, the threshold k_s and P_k.

A polynomial over Z_{p^k} stands for the integer polynomial with its
symmetric coefficients in (-p^k/2, p^k/2]; that integer polynomial is what is
lifted to higher precision. Build ``f`` at a precision large enough to hold
the coefficients you mean: ``Polynomial.from_ints([1, -4, 1], 5, 2)`` keeps
-4, while at k = 1 the same list is t^2 + t + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm

from .errors import OutOfTheoryError, UndecidedError
from .poly import Polynomial, factor_mod_p, format_poly, newton_iterates, poly_order_oracle
from .zpk import INFINITE, GaloisRing, mult_order

DEFAULT_CAP = 64


def _p_exponent_for(mult, p):
    # least c >= 0 with p^c >= mult
    c, power = 0, 1
    while power < mult:
        power *= p
        c += 1
    return c


@dataclass(frozen=True)
class RootDatum:
    root: object
    multiplicity: int
    order: int  # multiplicative order of the root in GR(p, d)
    fk: object = None  # f_k(root) for simple roots; INFINITE when certified stable


@dataclass(frozen=True)
class OrderProfile:
    f: Polynomial
    p1: int
    ks: object
    root_data: tuple = field(default=())
    d: int = 1

    @property
    def p(self):
        return self.f.p

    def pk(self, k):
        """P_k(f): P_1 up to k_s, then one factor of p per extra digit of precision."""
        if k <= self.ks:
            return self.p1
        return self.p ** (k - self.ks) * self.p1

    pk_formula = pk

    def pk_rootwise(self, k):
        """P_k(f) as an lcm of per-root orders.

        A simple root contributes ord(root) * p^{max(0, k - f_k)}. A root of
        multiplicity a >= 2 contributes ord(root) * p^{c + k - 1} with c the
        least exponent such that p^c >= a.
        """
        p = self.p
        out = 1
        for r in self.root_data:
            if r.multiplicity == 1:
                extra = 0 if k <= r.fk else k - r.fk
                out = lcm(out, r.order * p**extra)
            else:
                out = lcm(out, r.order * p ** (_p_exponent_for(r.multiplicity, p) + k - 1))
        return out


def _int_poly_divides_cyclotomic(f, n):
    """True iff the monic integer polynomial f divides t^n - 1 over Z."""
    fc = f.int_coeffs()
    m = len(fc) - 1
    if m <= 0:
        return True
    # t^n mod f over Z, stepping t^j -> t^{j+1}
    r = [1] + [0] * (m - 1)
    for _ in range(n):
        top = r[-1]
        r = [0] + r[:-1]
        if top:
            r = [r[i] - top * fc[i] for i in range(m)]
    return r == [1] + [0] * (m - 1)


def p1_of_poly(f):
    """P_1(f): lcm of root orders in the splitting field, times p^t with p^t >= max multiplicity."""
    return _roots_and_p1(f)[1]


def _roots_and_p1(f):
    rs = factor_mod_p(f)
    p = f.p
    e = 1
    for r, _ in rs.roots:
        e = lcm(e, mult_order(r))
    top = max((m for _, m in rs.roots), default=1)
    return rs, e * p ** _p_exponent_for(top, p)


def _fk_of_root(f, root, order, cap):
    """Largest k <= cap with (g^{(k-1)}(root))^order = 1 mod p^k; returns cap when never broken."""
    iterates = newton_iterates(f, root, cap + 1, cap + 1, stop_when_fixed=True)
    last = iterates[-1]
    for k in range(1, cap + 1):
        x = iterates[k - 1] if k <= len(iterates) else last
        Rk = x.ring.with_precision(k)
        if Rk.embed(x) ** order != Rk.one:
            return k - 1
    return cap


def ks_of_poly(f, cap=DEFAULT_CAP):
    """Threshold k_s of f together with its :class:`OrderProfile`.

    A repeated root mod p forces k_s = 1. Otherwise k_s is the least f_k over
    the roots. When every root survives up to ``cap``, k_s is INFINITE only if
    f divides t^{P_1} - 1 over the integers.
    """
    p = f.p
    if f.degree() > p:
        raise OutOfTheoryError(f"degree {f.degree()} exceeds p = {p}")
    rs, p1 = _roots_and_p1(f)
    repeated = any(m > 1 for _, m in rs.roots)
    data = []
    for r, m in rs.roots:
        order = mult_order(r)
        fk = _fk_of_root(f, r, order, cap) if m == 1 else None
        data.append([r, m, order, fk])
    if repeated:
        ks = 1
    elif not data:
        ks = INFINITE  # constant polynomial
    else:
        ks = min(d[3] for d in data)
        if ks >= cap:
            if not _int_poly_divides_cyclotomic(f, p1):
                raise UndecidedError(cap)
            ks = INFINITE
    for d in data:
        if d[3] is not None and d[3] >= cap and ks == INFINITE:
            d[3] = INFINITE
    profile = OrderProfile(f, p1, ks, tuple(RootDatum(*d) for d in data), rs.d)
    return ks, profile


@lru_cache(maxsize=4096)
def order_profile(f, cap=DEFAULT_CAP):
    return ks_of_poly(f, cap)[1]


def pk_of_poly(f, k, cap=DEFAULT_CAP):
    return order_profile(f, cap).pk(k)


@dataclass(frozen=True)
class OrderReport:
    f: str
    p: int
    k: int
    theory: int
    rootwise: int
    oracle: int
    ks: object
    passed: bool

    def as_dict(self):
        ks = "INFINITE" if self.ks == INFINITE else self.ks
        return {
            "f": self.f,
            "p": self.p,
            "k": self.k,
            "theory": self.theory,
            "rootwise": self.rootwise,
            "oracle": self.oracle,
            "ks": ks,
            "pass": self.passed,
        }


def rootwise_order(f, k, profile=None):
    """lcm of orders of the roots of f lifted into GR(p^k, d).

    Simple roots are Newton-lifted and their exact orders measured there;
    repeated roots use the multiple-root growth law.
    """
    profile = profile or order_profile(f)
    p = f.p
    out = 1
    for r in profile.root_data:
        if r.multiplicity == 1:
            lifted = newton_iterates(f, r.root, k, k)[-1]
            out = lcm(out, mult_order(lifted))
        else:
            c = _p_exponent_for(r.multiplicity, p)
            out = lcm(out, r.order * p ** (c + k - 1))
    return out


def verify_order_extension_equality(f, k, bound=None):
    """Compare the oracle order over Z_{p^k}[t] with the root-wise order in GR(p^k, d)."""
    profile = order_profile(f)
    fk = f.change_ring(GaloisRing.of(f.p, k)) if f.ring.k != k else f
    oracle = poly_order_oracle(fk, bound)
    theory = profile.pk(k)
    rootwise = rootwise_order(f, k, profile)
    return OrderReport(format_poly(f), f.p, k, theory, rootwise, oracle, profile.ks,
                       theory == oracle == rootwise)

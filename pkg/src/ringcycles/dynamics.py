"""Linear maps x -> Mx over Z_{p^k}^N: periods, full cycle enumeration and the
lifting laws that relate the cycle structure at consecutive precisions.

A :class:`LinearMap` keeps an integer matrix and an integer annihilating
polynomial ``f`` (f(M) = 0 over Z), so the same map can be viewed at any
precision with :meth:`LinearMap.at_precision`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from math import ceil, lcm, log2

import numpy as np
from sympy import factorint

from .errors import (
    CapacityError,
    OutOfTheoryError,
    TheoryViolationError,
    UndecidedError,
)
from .order import DEFAULT_CAP, order_profile
from .poly import format_poly, minimal_poly_of_sequence
from .zpk import INFINITE, p_free_part, vp

DEFAULT_BUDGET = 2 * 10**7
DOT_LIMIT = 10**4
WALK_LIMIT = 2**16
_CHUNK = 2**20


def default_budget():
    env = os.environ.get("RINGCYCLES_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


def _matmul(A, B, q):
    n, inner, m = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(inner)) % q for j in range(m)) for i in range(n)
    )


def _matvec(A, x, q):
    return tuple(sum(a * b for a, b in zip(row, x)) % q for row in A)


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _int_matpow(A, e):
    n = len(A)
    result = _identity(n)
    base = A
    while e:
        if e & 1:
            result = tuple(tuple(sum(result[i][t] * base[t][j] for t in range(n)) for j in range(n)) for i in range(n))
        base = tuple(tuple(sum(base[i][t] * base[t][j] for t in range(n)) for j in range(n)) for i in range(n))
        e >>= 1
    return result


class LinearMap:
    """x -> Mx over Z_{p^k}^N with a known integer annihilator f (f(M) = 0 over Z)."""

    def __init__(self, matrix, p, k, f, name="linear"):
        self.int_matrix = tuple(tuple(int(c) for c in row) for row in matrix)
        self.dim = len(self.int_matrix)
        if any(len(row) != self.dim for row in self.int_matrix):
            raise ValueError("matrix must be square")
        self.p, self.k = p, k
        self.q = p**k
        self.matrix = tuple(tuple(c % self.q for c in row) for row in self.int_matrix)
        self.f = f
        self.name = name
        self._powers = {}

    def at_precision(self, k):
        if k == self.k:
            return self
        return self._rebuild(k)

    def _rebuild(self, k):
        return LinearMap(self.int_matrix, self.p, k, self.f, self.name)

    @property
    def size(self):
        return self.q**self.dim

    def __repr__(self):
        return f"{self.name} over Z/{self.q}"

    # state helpers
    def reduce(self, x):
        x = tuple(int(c) % self.q for c in x)
        if len(x) != self.dim:
            raise ValueError(f"state must have {self.dim} entries")
        return x

    def index(self, x):
        q = self.q
        return sum(int(c) % q * q**i for i, c in enumerate(x))

    def unindex(self, i):
        q = self.q
        out = []
        for _ in range(self.dim):
            i, r = divmod(i, q)
            out.append(r)
        return tuple(out)

    def step(self, x):
        return _matvec(self.matrix, x, self.q)

    def power(self, e):
        """M^e mod p^k, cached."""
        if e in self._powers:
            return self._powers[e]
        result = _identity(self.dim)
        base = self.matrix
        n = e
        while n:
            if n & 1:
                result = _matmul(result, base, self.q)
            base = _matmul(base, base, self.q)
            n >>= 1
        self._powers[e] = result
        return result

    def global_period(self):
        """P_k(f), the theory's period of the whole map; None when the theory does not apply."""
        try:
            return order_profile(self.f).pk(self.k)
        except (OutOfTheoryError, UndecidedError):
            return None

    def successors(self, start=0, stop=None):
        """Successor indices for the states start..stop-1 (numpy int64)."""
        stop = self.size if stop is None else stop
        q = self.q
        M = np.array(self.matrix, dtype=np.int64)
        weights = np.array([q**i for i in range(self.dim)], dtype=np.int64)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = (idx[None, :] // weights[:, None]) % q
        image = (M @ digits) % q
        return weights @ image

    def successor_array(self):
        N = self.size
        out = np.empty(N, dtype=np.int64)
        for s in range(0, N, _CHUNK):
            e = min(N, s + _CHUNK)
            out[s:e] = self.successors(s, e)
        return out

    def digits_array(self):
        """(N, dim) array of all states in index order."""
        q = self.q
        idx = np.arange(self.size, dtype=np.int64)
        weights = np.array([q**i for i in range(self.dim)], dtype=np.int64)
        return (idx[:, None] // weights[None, :]) % q


class CompanionMap(LinearMap):
    """Block companion matrix of a monic f of degree m with n x n identity blocks.

    The last block row is (-c_0 I, ..., -c_{m-1} I) for f = c_0 + ... + c_{m-1} t^{m-1} + t^m,
    so the characteristic polynomial is f^n and f(M) = 0.
    """

    def __init__(self, f, n=1, k=None):
        if not f.is_monic():
            raise ValueError("companion map needs a monic polynomial")
        cs = f.int_coeffs()
        m = len(cs) - 1
        self.m, self.n = m, n
        N = m * n
        mat = [[0] * N for _ in range(N)]
        for blk in range(m - 1):
            for i in range(n):
                mat[blk * n + i][(blk + 1) * n + i] = 1
        for j in range(m):
            for i in range(n):
                mat[(m - 1) * n + i][j * n + i] = -cs[j]
        k = f.ring.k if k is None else k
        super().__init__(mat, f.p, k, f, f"companion(f={format_poly(f)}, n={n})")

    @classmethod
    def from_companion(cls, f, n=1, k=None):
        return cls(f, n, k)

    def _rebuild(self, k):
        return CompanionMap(self.f, self.n, k)


from_companion = CompanionMap.from_companion


# --- reports ---------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    vacuous: bool = False

    def as_dict(self):
        return {"check": self.name, "pass": self.passed, "vacuous": self.vacuous, "details": _jsonable(self.details)}

    def __bool__(self):
        return self.passed


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and obj == INFINITE:
        return "INFINITE"
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


# --- per-state periods -----------------------------------------------------


def iterate(lmap, x, steps):
    x = lmap.reduce(x)
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if steps <= 64:
        for _ in range(steps):
            x = lmap.step(x)
        return x
    return _matvec(lmap.power(steps), x, lmap.q)


def _direct_period(lmap, x):
    y = lmap.step(x)
    T = 1
    while y != x:
        y = lmap.step(y)
        T += 1
    return T


def state_period(lmap, x):
    """Least T >= 1 with M^T x = x, found by stripping primes from the theory's period P_k(f)."""
    x = lmap.reduce(x)
    L = lmap.global_period()
    if L is None:
        return _direct_period(lmap, x)
    if _matvec(lmap.power(L), x, lmap.q) != x:
        raise TheoryViolationError(f"M^{L} x != x for x = {x} under {lmap!r}")
    for r in factorint(L):
        while L % r == 0 and _matvec(lmap.power(L // r), x, lmap.q) == x:
            L //= r
    return L


def ks_of_state(lmap, x0, method="roots", cap=DEFAULT_CAP):
    """Largest k with T_k(x0) = T_1(x0) for an integer state x0 that is nonzero mod p.

    ``method="roots"`` takes the least f_k over the roots of the trajectory's
    minimal polynomial h. Those roots must be simple roots of f; when one is a
    repeated root the direct route is used. ``method="direct"`` reads the
    threshold off the p-adic valuation of (M^{T_1} - I) x0 over Z.
    """
    p = lmap.p
    x0 = tuple(int(c) for c in x0)
    if not any(c % p for c in x0):
        raise ValueError("ks_of_state needs a state that is nonzero mod p")
    m1 = lmap.at_precision(1)
    if method == "roots":
        h = minimal_poly_of_sequence(m1, x0)
        profile = order_profile(lmap.f, cap)
        fks = []
        for r in profile.root_data:
            if h(r.root):
                continue
            if r.multiplicity > 1:
                return ks_of_state(lmap, x0, "direct", cap)
            fks.append(r.fk)
        ks = min(fks)
        if ks != INFINITE and ks >= cap:
            T1 = state_period(m1, x0)
            if _int_state_fixed(lmap, x0, T1):
                return INFINITE
            raise UndecidedError(cap)
        return ks
    if method == "direct":
        T1 = state_period(m1, x0)
        MT = _int_matpow(lmap.int_matrix, T1)
        y = [sum(a * b for a, b in zip(row, x0)) - c for row, c in zip(MT, x0)]
        return min(vp(c, p) for c in y)
    raise ValueError(f"unknown method {method!r}")


def _int_state_fixed(lmap, x0, T):
    MT = _int_matpow(lmap.int_matrix, T)
    return all(sum(a * b for a, b in zip(row, x0)) == c for row, c in zip(MT, x0))


def period_lift_law_check(lmap, x0, c, k_prime):
    """T_k(x0 + p^{k'} c) = lcm(T_k(x0), T_{k-k'}(c)), all three periods measured."""
    k, p = lmap.k, lmap.p
    if not 1 <= k_prime < k:
        raise ValueError("need 1 <= k' < k")
    x0 = tuple(int(v) for v in x0)
    c = tuple(int(v) for v in c)
    y = tuple(a + p**k_prime * b for a, b in zip(x0, c))
    Tx = state_period(lmap, x0)
    Tc = state_period(lmap.at_precision(k - k_prime), c)
    Ty = state_period(lmap, y)
    return CheckReport(
        "period_lift_law",
        Ty == lcm(Tx, Tc),
        {"x0": list(x0), "c": list(c), "T_x0": Tx, "T_c": Tc, "T_sum": Ty, "lcm": lcm(Tx, Tc)},
    )


# --- enumeration -----------------------------------------------------------


@dataclass
class CycleHistogram:
    p: int
    k: int
    map: str
    cycles: dict
    checksum: int = 0

    def __post_init__(self):
        self.cycles = {int(T): int(N) for T, N in sorted(self.cycles.items()) if N}
        self.checksum = sum(T * N for T, N in self.cycles.items())

    def count(self, T):
        return self.cycles.get(T, 0)

    def period(self):
        """Least period of the whole map: lcm of the cycle lengths."""
        out = 1
        for T in self.cycles:
            out = lcm(out, T)
        return out

    def as_dict(self):
        return {
            "p": self.p,
            "k": self.k,
            "map": self.map,
            "cycles": {str(T): N for T, N in self.cycles.items()},
            "checksum": self.checksum,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text) if isinstance(text, str) else text
        h = cls(obj["p"], obj["k"], obj["map"], {int(T): N for T, N in obj["cycles"].items()})
        if h.checksum != obj["checksum"]:
            raise ValueError("histogram checksum does not match its cycles")
        return h


@dataclass
class CycleDecomposition:
    """Per-state cycle data: ``rep[i]`` is the least index on the cycle of state i."""

    lmap: LinearMap
    rep: np.ndarray
    length: np.ndarray

    def histogram(self, mask=None):
        is_rep = self.rep == np.arange(len(self.rep))
        if mask is not None:
            is_rep &= mask
        lengths, counts = np.unique(self.length[is_rep], return_counts=True)
        return CycleHistogram(self.lmap.p, self.lmap.k, self.lmap.name,
                              dict(zip(lengths.tolist(), counts.tolist())))

    def multiples_of_p_mask(self):
        p = self.lmap.p
        return (self.lmap.digits_array() % p == 0).all(axis=1)


def _check_budget(lmap, budget):
    budget = default_budget() if budget is None else budget
    if lmap.size > budget:
        raise CapacityError(lmap.size, budget, f"enumerating {lmap!r}")


def _walk(succ):
    N = len(succ)
    nxt = succ.tolist()
    visited = bytearray(N)
    rep = [0] * N
    length = [0] * N
    for s in range(N):
        if visited[s]:
            continue
        cyc = [s]
        visited[s] = 1
        x = nxt[s]
        while x != s:
            if visited[x]:
                raise TheoryViolationError("map is not a permutation")
            visited[x] = 1
            cyc.append(x)
            x = nxt[x]
        L = len(cyc)
        for y in cyc:
            rep[y] = s
            length[y] = L
    return np.array(rep, dtype=np.int64), np.array(length, dtype=np.int64)


def _pointer_jump(succ):
    N = len(succ)
    dtype = np.int32 if N < 2**31 else np.int64
    nxt = succ.astype(dtype)
    if np.bincount(nxt, minlength=N).max(initial=0) > 1:
        raise TheoryViolationError("map is not a permutation")
    rep = np.arange(N, dtype=dtype)
    for _ in range(max(1, ceil(log2(max(N, 2))))):
        np.minimum(rep, rep[nxt], out=rep)
        nxt = nxt[nxt]
    length = np.bincount(rep, minlength=N)[rep]
    return rep.astype(np.int64), length.astype(np.int64)


def cycle_decomposition(lmap, method="auto", budget=None):
    _check_budget(lmap, budget)
    succ = lmap.successor_array()
    if method == "auto":
        method = "walk" if lmap.size <= WALK_LIMIT else "vectorized"
    if method == "walk":
        rep, length = _walk(succ)
    elif method == "vectorized":
        rep, length = _pointer_jump(succ)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return CycleDecomposition(lmap, rep, length)


def enumerate_cycles(lmap, method="auto", budget=None):
    """Exact cycle histogram of the whole state space."""
    h = cycle_decomposition(lmap, method, budget).histogram()
    if h.checksum != lmap.size:
        raise TheoryViolationError(f"histogram covers {h.checksum} of {lmap.size} states")
    return h


def to_dot(lmap):
    """Functional graph in Graphviz DOT, one edge per state; refused beyond 10^4 states."""
    if lmap.size > DOT_LIMIT:
        raise CapacityError(lmap.size, DOT_LIMIT, "DOT export")
    succ = lmap.successor_array()
    label = lambda i: '"' + ",".join(map(str, lmap.unindex(int(i)))) + '"'
    lines = ["digraph G {", f'  label="{lmap.name} over Z/{lmap.q}";']
    for i in range(lmap.size):
        lines.append(f"  {label(i)} -> {label(succ[i])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def embedding_check(lmap, k=None, budget=None):
    """x -> p x sends each cycle at precision k-1 onto a cycle of the same length at k,
    and its image is exactly the states that vanish mod p."""
    k = lmap.k if k is None else k
    if k < 2:
        raise ValueError("embedding check needs k >= 2")
    hi, lo = lmap.at_precision(k), lmap.at_precision(k - 1)
    dec_hi = cycle_decomposition(hi, budget=budget)
    dec_lo = cycle_decomposition(lo, budget=budget)
    p = lmap.p
    lo_digits = lo.digits_array()
    weights = np.array([hi.q**i for i in range(hi.dim)], dtype=np.int64)
    image = (lo_digits * p) @ weights
    pointwise = bool((dec_hi.length[image] == dec_lo.length).all())
    mask = dec_hi.multiples_of_p_mask()
    onto = int(mask.sum()) == lo.size and bool(mask[image].all())
    sub = dec_hi.histogram(mask)
    full_lo = dec_lo.histogram()
    return CheckReport(
        "embedding",
        pointwise and onto and sub.cycles == full_lo.cycles,
        {"k": k, "lower": full_lo.cycles, "multiples_of_p": sub.cycles,
         "lengths_preserved": pointwise, "image_is_multiples_of_p": onto},
    )


def fixed_point_check(lmap):
    """At k = 1: enumerated fixed points = p^{N - rank(M - I)} from linear algebra mod p."""
    m1 = lmap.at_precision(1)
    p = m1.p
    A = [[(m1.matrix[i][j] - (i == j)) % p for j in range(m1.dim)] for i in range(m1.dim)]
    rank = _rank_mod_p(A, p)
    succ = m1.successor_array()
    fixed = int((succ == np.arange(m1.size)).sum())
    expected = p ** (m1.dim - rank)
    return CheckReport("fixed_points", fixed == expected, {"enumerated": fixed, "kernel_size": expected})


def _rank_mod_p(A, p):
    A = [row[:] for row in A]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] % p), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [(v * inv) % p for v in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(a - f * b) % p for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


# --- cycle splitting and the D matrix ---------------------------------------


def _k1_lengths(lmap):
    return cycle_decomposition(lmap.at_precision(1)).length


def splitting_counts(lmap, Tstar, T, lengths=None):
    """a(T*, T) = #{c in Z_p^N : lcm(p T*, T_1(c)) = T}, requiring T* > P_1(f)."""
    p1 = order_profile(lmap.f).p1
    if Tstar <= p1:
        raise OutOfTheoryError(f"T* = {Tstar} must exceed P_1(f) = {p1}")
    lengths = _k1_lengths(lmap) if lengths is None else lengths
    pT = lmap.p * Tstar
    l = np.asarray(lengths, dtype=np.int64)
    combined = pT * l // np.gcd(pT, l)
    return int((combined == T).sum())


@dataclass
class DMatrix:
    """D[j][i] = number of cycles of length p^{v+1} T_j born from one cycle of length p^v T_i."""

    basis: tuple
    a: tuple  # a[i][j] from the scan over c
    entries: tuple  # D[j][i]
    p: int
    violations: tuple = ()
    hypothesis_holds: bool = True

    @property
    def r(self):
        return len(self.basis)

    def a_over_p_entries(self):
        """The reading b_ij = a_ij / p, as exact fractions (row j, column i)."""
        from fractions import Fraction

        r = self.r
        return tuple(tuple(Fraction(self.a[i][j], self.p) for i in range(r)) for j in range(r))

    def apply(self, vec, l=1):
        out = list(vec)
        for _ in range(l):
            out = [sum(self.entries[j][i] * out[i] for i in range(self.r)) for j in range(self.r)]
        return out

    def as_dict(self):
        return {
            "basis": list(self.basis),
            "a": [list(r) for r in self.a],
            "D": [list(r) for r in self.entries],
            "violations": list(self.violations),
            "hypothesis_holds": self.hypothesis_holds,
        }


def _t_basis(lengths, p):
    odd = sorted({p_free_part(int(T), p) for T in np.unique(lengths[1:])})
    basis = set(odd)
    changed = True
    while changed:
        changed = False
        for a in list(basis):
            for b in list(basis):
                c = lcm(a, b)
                if c not in basis:
                    basis.add(c)
                    changed = True
    return tuple(sorted(basis))


def build_d_matrix(lmap, v, strict=True, lengths=None):
    """D matrix at level v.

    Basis: p-free parts of the k = 1 periods of nonzero states, closed under lcm.
    a_ij counts c in Z_p^N with lcm(T_i, p-free part of T_1(c)) = T_j. One parent
    cycle of length p^v T_i carries p^v T_i p^N lifted states, of which
    p^v T_i a_ij fall in children of length p^{v+1} T_j, so
    b_ij = a_ij T_i / (p T_j).
    """
    p = lmap.p
    p1 = order_profile(lmap.f).p1
    holds = v > vp(p1, p)
    if strict and not holds:
        raise OutOfTheoryError(f"v = {v} must exceed the p-adic valuation of P_1(f) = {p1}")
    lengths = _k1_lengths(lmap) if lengths is None else np.asarray(lengths)
    basis = _t_basis(lengths, p)
    pos = {T: i for i, T in enumerate(basis)}
    odd = np.array([p_free_part(int(T), p) for T in lengths.tolist()], dtype=np.int64)
    vals, cnt = np.unique(odd, return_counts=True)
    r = len(basis)
    a = [[0] * r for _ in range(r)]
    for i, Ti in enumerate(basis):
        for o, n in zip(vals.tolist(), cnt.tolist()):
            a[i][pos[lcm(Ti, o)]] += n
    D = [[0] * r for _ in range(r)]
    violations = []
    for i, Ti in enumerate(basis):
        for j, Tj in enumerate(basis):
            num, den = a[i][j] * Ti, p * Tj
            if num % den:
                violations.append(f"b[{Ti}->{Tj}] = {a[i][j]}*{Ti}/({p}*{Tj}) is not an integer")
            D[j][i] = num // den
            if j < i and D[j][i]:
                violations.append(f"upper-triangular entry D[{Tj}][{Ti}] = {D[j][i]}")
    return DMatrix(basis, tuple(map(tuple, a)), tuple(map(tuple, D)), p, tuple(violations), holds)


def _level_vector(hist, basis, p, v):
    vec = [hist.count(p**v * T) for T in basis]
    pruned = {T: N for T, N in hist.cycles.items() if vp(T, p) == v and p_free_part(T, p) not in basis}
    return vec, pruned


def dmatrix_recursion_check(lmap, k, v, l=1, budget=None):
    """Measured N_{k+l}(v+l) against D^l N_k(v), with the a/p reading shown alongside."""
    p = lmap.p
    D = build_d_matrix(lmap, v, strict=False)
    h_lo = enumerate_cycles(lmap.at_precision(k), budget=budget)
    h_hi = enumerate_cycles(lmap.at_precision(k + l), budget=budget)
    n_lo, pruned_lo = _level_vector(h_lo, D.basis, p, v)
    n_hi, pruned_hi = _level_vector(h_hi, D.basis, p, v + l)
    predicted = D.apply(n_lo, l)
    a_over_p = list(n_lo)
    P = D.a_over_p_entries()
    for _ in range(l):
        a_over_p = [sum(P[j][i] * a_over_p[i] for i in range(D.r)) for j in range(D.r)]
    a_over_p = [str(x) if x.denominator != 1 else int(x) for x in a_over_p]
    vacuous = not any(n_lo) and not any(n_hi)
    passed = predicted == n_hi and not D.violations and not pruned_lo and not pruned_hi
    return CheckReport(
        "dmatrix_recursion",
        passed,
        {"k": k, "v": v, "l": l, "basis": list(D.basis), "D": [list(r) for r in D.entries],
         "N_k_v": n_lo, "measured": n_hi, "predicted": predicted, "predicted_a_over_p": a_over_p,
         "violations": list(D.violations), "pruned": {"low": pruned_lo, "high": pruned_hi},
         "hypothesis_holds": D.hypothesis_holds},
        vacuous=vacuous,
    )


# --- stabilization -----------------------------------------------------------


def ks_hat(lmap, method="roots"):
    """max of ks_of_state over all nonzero states at k = 1."""
    m1 = lmap.at_precision(1)
    best = 0
    for i in range(1, m1.size):
        best = max(best, ks_of_state(lmap, m1.unindex(i), method))
        if best == INFINITE:
            break
    return best


def _poly_int_value(f, x):
    acc = 0
    for c in reversed(f.int_coeffs()):
        acc = acc * x + c
    return acc


def stabilization_gate(f):
    """f(1) and f(-1) must be nonzero as integers."""
    f1, fm1 = _poly_int_value(f, 1), _poly_int_value(f, -1)
    if f1 == 0 or fm1 == 0:
        raise OutOfTheoryError(f"f(1) = {f1}, f(-1) = {fm1}: stabilization needs both nonzero")
    return f1, fm1


def stabilization_check(lmap, T, k_lo, k_hi, budget=None):
    """N_{T,k} is constant for k from k_hat + nu(T) through k_hi."""
    p = lmap.p
    f1, fm1 = stabilization_gate(lmap.f)
    kh = ks_hat(lmap)
    if kh == INFINITE:
        raise OutOfTheoryError("k_hat is INFINITE; stabilization threshold undefined")
    start = kh + vp(T, p)
    counts = {}
    for k in range(min(k_lo, start), k_hi + 1):
        counts[k] = enumerate_cycles(lmap.at_precision(k), budget=budget).count(T)
    stable = [counts[k] for k in range(start, k_hi + 1)]
    return CheckReport(
        "stabilization",
        len(set(stable)) <= 1,
        {"T": T, "k_hat": kh, "threshold": start, "counts": counts, "f(1)": f1, "f(-1)": fm1,
         "mod_p_units": bool(f1 % p and fm1 % p)},
        vacuous=start > k_hi,
    )

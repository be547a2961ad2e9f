"""The Cat map (x, y) -> (x + a y, b x + (1 + ab) y) over Z_{p^k}.

Its matrix C = [[1, a], [b, 1 + ab]] has determinant 1 and satisfies
f(t) = t^2 - (ab + 2) t + 1 over Z (t - 1 when a = b = 0).
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import ceil, lcm, log

import numpy as np
from sympy import factorint, totient

from .dynamics import (
    CheckReport,
    CompanionMap,
    LinearMap,
    cycle_decomposition,
    default_budget,
    enumerate_cycles,
    ks_hat,
    stabilization_gate,
)
from .errors import CapacityError, OutOfTableError, TheoryViolationError
from .order import order_profile
from .poly import Polynomial
from .zpk import INFINITE, Modulus, p_free_part, vp


@dataclass(frozen=True)
class CatParams:
    """Integer parameters (a, b) and the modulus p^k; a and b are kept as given."""

    a: int
    b: int
    p: int
    k: int = 1

    def __post_init__(self):
        Modulus(self.p, self.k)
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be non-negative integers")

    @property
    def modulus(self):
        return Modulus(self.p, self.k)

    @property
    def q(self):
        return self.p**self.k

    def matrix(self):
        a, b = self.a, self.b
        return ((1, a), (b, 1 + a * b))

    def det(self):
        (w, x), (y, z) = self.matrix()
        return w * z - x * y

    def at_precision(self, k):
        return CatParams(self.a, self.b, self.p, k)

    def label(self):
        return f"cat(a={self.a}, b={self.b})"


def _holding_precision(p, bound):
    # least precision whose symmetric range holds integers of absolute value <= bound
    K = 1
    while p**K <= 2 * bound:
        K += 1
    return K


def cat_minimal_poly(params):
    """t - 1 for (0, 0), else t^2 - (ab + 2) t + 1, built so the integer coefficients survive lifting."""
    p = params.p
    if params.a == 0 and params.b == 0:
        return Polynomial.from_ints([-1, 1], p, max(params.k, _holding_precision(p, 1)))
    s = params.a * params.b + 2
    return Polynomial.from_ints([1, -s, 1], p, max(params.k, _holding_precision(p, s)))


class CatMap(LinearMap):
    def __init__(self, params):
        self.params = params
        super().__init__(params.matrix(), params.p, params.k, cat_minimal_poly(params), params.label())

    def _rebuild(self, k):
        return CatMap(self.params.at_precision(k))


def cat_companion(params, n=2):
    """Block companion map of the Cat minimal polynomial; n = 2 gives the 4-dimensional space."""
    return CompanionMap(cat_minimal_poly(params), n, params.k)


def cat_state_to_companion(params, z):
    """Cat state z -> companion state (z, Cz); the map z -> (z, Cz) conjugates C into the companion map."""
    cm = CatMap(params)
    return tuple(z) + cm.step(cm.reduce(z))


def companion_embedding_check(params, budget=None):
    """Every Cat state has the same cycle length as its companion image (z, Cz)."""
    cm = CatMap(params)
    comp = cat_companion(params, 2)
    if comp.dim != 4:
        return CheckReport("companion_embedding", True, {"note": "minimal polynomial has degree 1"}, vacuous=True)
    cat_dec = cycle_decomposition(cm, budget=budget)
    comp_dec = cycle_decomposition(comp, budget=budget)
    Z = cm.digits_array()
    C = np.array(cm.matrix, dtype=np.int64)
    CZ = (Z @ C.T) % cm.q
    full = np.concatenate([Z, CZ], axis=1)
    weights = np.array([comp.q**i for i in range(4)], dtype=np.int64)
    image = full @ weights
    same = bool((comp_dec.length[image] == cat_dec.length).all())
    return CheckReport("companion_embedding", same, {"states": cm.size})


def cat_enumerate(params, method="auto", budget=None):
    """Exact cycle histogram of the Cat map on Z_{p^k}^2."""
    return enumerate_cycles(CatMap(params), method, budget)


# --- the (a, b) table ---------------------------------------------------------


@dataclass(frozen=True)
class CatPrediction:
    T: int
    row: str
    ks: object
    count_doubling_applies: bool
    k1: int = 0
    k2: int = 0

    def as_dict(self):
        return {
            "T": self.T,
            "row": self.row,
            "ks": "INFINITE" if self.ks == INFINITE else self.ks,
            "count_doubling_applies": self.count_doubling_applies,
            "k1": self.k1,
            "k2": self.k2,
        }


def _root_threshold(params):
    """1 when the root satisfies alpha = 1/alpha mod p, else f_k(alpha) of the lifted root."""
    p = params.p
    s = (params.a * params.b + 2) % p
    if s in (2 % p, -2 % p):
        return 1
    prof = order_profile(cat_minimal_poly(params))
    return min(r.fk for r in prof.root_data)


def cat_table_predict(params):
    """Classify (a, b) into one row of the period table and return the predicted least period."""
    p, k = params.p, params.k
    if p <= 3:
        raise OutOfTableError(f"the period table covers p > 3, got p = {p}")
    q = params.q
    a, b = params.a % q, params.b % q
    if a == 0 and b == 0:
        return CatPrediction(1, "(a,b)=(0,0)", INFINITE, False)
    ks = _root_threshold(params)
    if a % p == 0 and b % p == 0:
        i = k - min(vp(a, p), vp(b, p))
        row = "min(nu(a),nu(b))=k-i" if a * b % q else "ab=0, max(nu(a),nu(b))=k-i"
        return CatPrediction(p**i, f"p^i, i={i}: {row}", ks, i >= 1, 1, p**i)
    if a * b % p == 0:
        row = "ab=0 mod p, a unit" if a % p else "ab=0 mod p, b unit"
        return CatPrediction(q, row, ks, True, 1, q)
    if (a * b) % p == (p - 4) % p:
        return CatPrediction(2 * q, "ab=p-4 mod p", ks, True, 2, q)
    P = order_profile(cat_minimal_poly(params)).pk(k)
    k1, k2 = p_free_part(P, p), P // p_free_part(P, p)
    if (p - 1) % k1 == 0:
        row = "k1|p-1"
    elif (p + 1) % k1 == 0:
        row = "k1|p+1"
    else:
        raise TheoryViolationError(f"k1 = {k1} divides neither p-1 nor p+1")
    return CatPrediction(P, row, ks, vp(P, p) >= 1, k1, k2)


def table_counts(p, k):
    """Closed-form bucket sizes {T: N_T} of the period table, with each row's contribution listed."""
    if p <= 3:
        raise OutOfTableError(f"the period table covers p > 3, got p = {p}")
    q = p**k
    rows = [(1, "(a,b)=(0,0)", 1)]
    rows.append((q, "ab=0 mod p, a unit", p ** (2 * k - 2) * (p - 1)))
    rows.append((q, "ab=0 mod p, b unit", p ** (2 * k - 2) * (p - 1)))
    rows.append((2 * q, "ab=p-4 mod p", p ** (2 * k - 2) * (p - 1)))
    for i in range(1, k):
        rows.append((p**i, f"p^i, i={i}: min(nu(a),nu(b))=k-i", 2 * (p - 1) * p ** (2 * i - 1)))
        rows.append((p**i, f"p^i, i={i}: ab=0, max(nu(a),nu(b))=k-i", 2 * (p - 1) * p ** (i - 1)))
    for label, n in (("k1|p-1", p - 1), ("k1|p+1", p + 1)):
        for k1 in sorted(int(d) for d in _divisors(n) if d > 2):
            for j in range(k):
                T = k1 * p**j
                rows.append((T, label, int(totient(T)) // 2 * (q - q // p)))
    totals = Counter()
    for T, _, n in rows:
        totals[T] += n
    return dict(sorted(totals.items())), rows


def _divisors(n):
    out = [1]
    for r, e in factorint(n).items():
        out = [d * r**i for d in out for i in range(e + 1)]
    return sorted(out)


def corrected_p_power_count(p, i):
    """Measured-consistent size of the T = p^i bucket: pairs with min valuation exactly k - i."""
    return p ** (2 * i - 2) * (p * p - 1)


def cat_matrix_period(params):
    """Least period of C mod p^k, stripping primes from the exponent lcm(2p, p-1, p+1) p^(k-1) of SL_2."""
    cm = CatMap(params)
    p, k = params.p, params.k
    L = lcm(2 * p, p - 1, p + 1) * p ** (k - 1)
    I = tuple(tuple(int(i == j) for j in range(2)) for i in range(2))
    if cm.power(L) != I:
        raise TheoryViolationError(f"C^{L} != I for {params}")
    for r in factorint(L):
        while L % r == 0 and cm.power(L // r) == I:
            L //= r
    return L


def _census_chunk(args):
    p, k, a_values, method = args
    q = p**k
    out = Counter()
    for a in a_values:
        for b in range(q):
            params = CatParams(a, b, p, k)
            if method == "order":
                T = cat_matrix_period(params)
            else:
                T = cat_enumerate(params).period()
            out[T] += 1
    return out


@dataclass
class CensusTable:
    p: int
    k: int
    rows: list  # (T, predicted, measured, pass)
    method: str
    notes: dict

    @property
    def passed(self):
        return all(r[3] for r in self.rows)

    @property
    def total_measured(self):
        return sum(r[2] for r in self.rows)

    def as_dict(self):
        return {
            "p": self.p,
            "k": self.k,
            "method": self.method,
            "total": self.total_measured,
            "pass": self.passed,
            "buckets": [{"T": T, "predicted_count": pr, "measured_count": me, "pass": ok} for T, pr, me, ok in self.rows],
            "notes": self.notes,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["T", "predicted_count", "measured_count", "pass"])
        for T, pr, me, ok in self.rows:
            w.writerow([T, pr, me, str(ok).lower()])
        return buf.getvalue()


def cat_table_census(p, k, method="order", threads=1, budget=None):
    """Measure the least period of every (a, b) in Z_{p^k}^2 and compare buckets with the table."""
    if p <= 3:
        raise OutOfTableError(f"the period table covers p > 3, got p = {p}")
    q = p**k
    budget = default_budget() if budget is None else budget
    work = q * q * (q * q if method == "enumerate" else 1)
    if work > budget:
        raise CapacityError(work, budget, f"census at p={p}, k={k}")
    predicted, _ = table_counts(p, k)
    a_chunks = [list(range(s, q, max(threads, 1))) for s in range(max(threads, 1))]
    jobs = [(p, k, chunk, method) for chunk in a_chunks if chunk]
    measured = Counter()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for c in ex.map(_census_chunk, jobs):
                measured.update(c)
    else:
        for job in jobs:
            measured.update(_census_chunk(job))
    rows = []
    for T in sorted(set(predicted) | set(measured)):
        pr, me = predicted.get(T, 0), measured.get(T, 0)
        rows.append((T, pr, me, pr == me))
    notes = {
        "predicted_total": sum(predicted.values()),
        "pairs": q * q,
        "p_power_bucket_corrected": {str(p**i): corrected_p_power_count(p, i) for i in range(1, k)},
    }
    return CensusTable(p, k, rows, method, notes)


# --- Cat-specific laws --------------------------------------------------------


def cat_count_doubling_check(params, k=None, budget=None):
    """p N_{T,k} = N_{pT,k+1} for every measured T with nu(T) >= 1.

    Each length is annotated with the two readings of the applicability gate:
    nu(T) > p, and nu(T) > nu(P_1(f)). The report passes when every
    length admitted by the second reading satisfies the law.
    """
    p = params.p
    k = params.k if k is None else k
    lo = cat_enumerate(params.at_precision(k), budget=budget)
    hi = cat_enumerate(params.at_precision(k + 1), budget=budget)
    p1 = order_profile(cat_minimal_poly(params)).p1
    nu_p1 = vp(p1, p)
    lengths = {T for T in lo.cycles if vp(T, p) >= 1}
    lengths |= {T // p for T in hi.cycles if vp(T, p) >= 2}
    entries = []
    for T in sorted(lengths):
        lhs, rhs = p * lo.count(T), hi.count(p * T)
        entries.append({
            "T": T,
            "p*N_T_k": lhs,
            "N_pT_k1": rhs,
            "holds": lhs == rhs,
            "p_gate": vp(T, p) > p,
            "valuation_gate": vp(T, p) > nu_p1,
        })
    ci = all(e["holds"] for e in entries if e["valuation_gate"])
    return CheckReport(
        "count_doubling",
        ci,
        {"params": params.label(), "p": p, "k": k, "nu_P1": nu_p1, "lengths": entries,
         "violations_p_gate": [e["T"] for e in entries if e["p_gate"] and not e["holds"]],
         "violations_valuation_gate": [e["T"] for e in entries if e["valuation_gate"] and not e["holds"]],
         "violations_ungated": [e["T"] for e in entries if not e["holds"]]},
        vacuous=not entries,
    )


def cat_stabilization_threshold(params):
    """Per-root threshold (1 when alpha = 1/alpha mod p, else f_k(alpha)) and the coarse bound
    ceil(p (p^2 - 1) log_p(ab + 2))."""
    if params.a % params.q == 0 and params.b % params.q == 0:
        raise ValueError("threshold needs a, b not both zero")
    p = params.p
    s = params.a * params.b + 2
    coarse = ceil(p * (p * p - 1) * log(s, p) - 1e-12)
    return {"threshold": _root_threshold(params), "coarse_bound": coarse}


def cat_stabilization_check(params, k_max, budget=None):
    """N_{T,k} = N_{T,k+1} for all T once k >= threshold + nu(T), by enumeration up to k_max.

    Gated on f(1) != 0 and f(-1) != 0. Reported alongside: the literal reading
    (k >= threshold for every T, without the nu(T) shift) and the reading with
    k_hat, the largest per-state threshold, in place of the per-root one.
    """
    p = params.p
    f = cat_minimal_poly(params)
    stabilization_gate(f)
    th = cat_stabilization_threshold(params)["threshold"]
    kh = ks_hat(CatMap(params))
    hists = {k: cat_enumerate(params.at_precision(k), budget=budget) for k in range(1, k_max + 1)}
    lengths = sorted(set().union(*[h.cycles for h in hists.values()]))
    failures, literal_failures, ks_hat_failures = [], [], []
    for T in lengths:
        for k in range(1, k_max):
            same = hists[k].count(T) == hists[k + 1].count(T)
            if same:
                continue
            if k >= th + vp(T, p):
                failures.append({"T": T, "k": k, "N_k": hists[k].count(T), "N_k1": hists[k + 1].count(T)})
            if k >= th:
                literal_failures.append({"T": T, "k": k})
            if k >= kh + vp(T, p):
                ks_hat_failures.append({"T": T, "k": k})
    return CheckReport(
        "cat_stabilization",
        not failures,
        {"params": params.label(), "threshold": th, "k_hat": kh, "k_max": k_max,
         "counts": {str(k): h.cycles for k, h in hists.items()},
         "failures": failures, "literal_reading_failures": literal_failures,
         "k_hat_reading_failures": ks_hat_failures},
    )

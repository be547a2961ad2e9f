import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringcycles.catmap import CatMap, CatParams, cat_companion
from ringcycles.dynamics import (
    CompanionMap,
    CycleHistogram,
    LinearMap,
    build_d_matrix,
    cycle_decomposition,
    dmatrix_recursion_check,
    embedding_check,
    enumerate_cycles,
    fixed_point_check,
    iterate,
    ks_of_state,
    period_lift_law_check,
    splitting_counts,
    stabilization_check,
    stabilization_gate,
    state_period,
    to_dot,
)
from ringcycles.errors import CapacityError, OutOfTheoryError, TheoryViolationError
from ringcycles.poly import Polynomial
from ringcycles.zpk import INFINITE

P = Polynomial.from_ints


def cat(a, b, p, k):
    return CatMap(CatParams(a, b, p, k))


def naive_histogram(lmap):
    """Cycle lengths by stepping tuples through a dict, no numpy."""
    q = lmap.q
    seen, hist = set(), {}
    for x in itertools.product(range(q), repeat=lmap.dim):
        if x in seen:
            continue
        y, n = x, 0
        while True:
            seen.add(y)
            y = lmap.step(y)
            n += 1
            if y == x:
                break
        hist[n] = hist.get(n, 0) + 1
    return dict(sorted(hist.items()))


def test_companion_layout():
    f = P([1, -3, 1], 5, 2)
    assert CompanionMap(f).int_matrix == ((0, 1), (-1, 3))
    M = CompanionMap(f, 2).int_matrix
    assert M[0] == (0, 0, 1, 0) and M[2] == (-1, 0, 3, 0) and M[3] == (0, -1, 0, 3)
    with pytest.raises(ValueError):
        CompanionMap(P([1, 3], 5, 1))


def test_index_roundtrip():
    m = cat_companion(CatParams(1, 2, 3, 2))
    for i in (0, 1, 80, 6560):
        assert m.index(m.unindex(i)) == i


def test_iterate_examples():
    m = cat_companion(CatParams(1, 1, 5, 1))
    assert iterate(m, (0, 0, 0, 0), 10**6) == (0, 0, 0, 0)
    assert iterate(m, (1, 0, 1, 1), 10) == (1, 0, 1, 1)
    assert iterate(m, (1, 0, 1, 1), 0) == (1, 0, 1, 1)
    x = (1, 2, 3, 4)
    assert iterate(m, x, 100) == iterate(m, iterate(m, x, 37), 63)


def test_state_period_examples():
    m1 = cat_companion(CatParams(1, 2, 5, 1))
    assert state_period(m1, (0, 0, 0, 0)) == 1
    for i in range(1, m1.size, 37):
        assert state_period(m1, m1.unindex(i)) == 3
    m2 = cat_companion(CatParams(1, 2, 5, 2))
    assert state_period(m2, (1, 0, 0, 0)) == 15
    assert state_period(m2, (5, 0, 10, 0)) == 3


def test_state_period_raises_when_theory_period_fails():
    m = LinearMap(((1, 1), (0, 1)), 5, 1, P([-1, 1], 5, 1))  # a Jordan block claims annihilator t - 1
    with pytest.raises(TheoryViolationError):
        state_period(m, (0, 1))


def test_ks_of_state_examples_and_routes_agree():
    c12 = cat(1, 2, 5, 2)
    assert ks_of_state(c12, (1, 0)) == ks_of_state(c12, (1, 0), "direct") == 1
    m = CompanionMap(P([1, 1, 1], 5, 2), 1)
    assert ks_of_state(m, (1, 0)) == INFINITE
    # eigenvector of eigenvalue 4 at (1, 1): 4 is a double root, so the roots route defers to the direct one
    c11 = cat(1, 1, 5, 2)
    assert ks_of_state(c11, (1, 3)) == ks_of_state(c11, (1, 3), "direct") == 1
    with pytest.raises(ValueError):
        ks_of_state(c11, (5, 0))


@pytest.mark.parametrize("a,b,p", [(1, 2, 5), (2, 3, 5), (1, 2, 7), (2, 3, 7), (1, 3, 7)])
def test_ks_of_state_routes_agree_exhaustively(a, b, p):
    m = cat(a, b, p, 2)
    m1 = m.at_precision(1)
    for i in range(1, m1.size):
        x = m1.unindex(i)
        assert ks_of_state(m, x, "roots") == ks_of_state(m, x, "direct")


def test_period_lift_law_exhaustive_small():
    m = cat(1, 2, 5, 2)
    x0 = (1, 0)
    for c in itertools.product(range(5), repeat=2):
        assert period_lift_law_check(m, x0, c, 1)
    assert period_lift_law_check(cat(1, 1, 5, 2), (1, 3), (2, 1), 1)
    assert period_lift_law_check(m, x0, (0, 0), 1).details["T_c"] == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(1, 2, 5), (1, 1, 5), (2, 3, 7), (1, 5, 3)]), st.integers(2, 4), st.data())
def test_period_lift_law_property(params, k, data):
    a, b, p = params
    m = cat(a, b, p, k)
    kp = data.draw(st.integers(1, k - 1))
    x0 = data.draw(st.tuples(st.integers(0, p**k - 1), st.integers(0, p**k - 1)))
    c = data.draw(st.tuples(st.integers(0, p ** (k - kp) - 1), st.integers(0, p ** (k - kp) - 1)))
    assert period_lift_law_check(m, x0, c, kp)


def test_enumerate_examples():
    assert enumerate_cycles(cat(1, 2, 5, 1)).cycles == {1: 1, 3: 8}
    assert enumerate_cycles(cat(1, 2, 5, 2)).cycles == {1: 1, 3: 8, 15: 40}
    assert enumerate_cycles(CompanionMap(P([-1, 1], 3, 2))).cycles == {1: 9}


@pytest.mark.parametrize(
    "lmap",
    [cat(1, 2, 5, 2), cat(1, 1, 5, 2), cat(1, 5, 3, 3), cat(2, 3, 3, 2), cat_companion(CatParams(1, 1, 3, 1)),
     CompanionMap(P([2, 0, 1, 1], 3, 1)), CompanionMap(P([8, -6, 1], 5, 2))],
    ids=repr,
)
def test_both_enumeration_methods_match_naive_walk(lmap):
    want = naive_histogram(lmap)
    for method in ("walk", "vectorized"):
        h = enumerate_cycles(lmap, method)
        assert h.cycles == want
        assert h.checksum == lmap.size


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 6), st.integers(0, 6), st.integers(1, 3))
def test_histogram_conserves_states_and_period_divides_theory(p, a, b, k):
    m = cat(a, b, p, k)
    h = enumerate_cycles(m)
    assert sum(T * N for T, N in h.cycles.items()) == p ** (2 * k)
    L = m.global_period()
    if L is not None:
        assert L % h.period() == 0


def test_budget_refusal():
    with pytest.raises(CapacityError) as err:
        enumerate_cycles(cat(1, 2, 5, 3), budget=100)
    assert err.value.required == 5**6


def test_histogram_json_roundtrip():
    h = enumerate_cycles(cat(1, 2, 5, 2))
    back = CycleHistogram.from_json(h.to_json())
    assert back == h
    obj = json.loads(h.to_json())
    assert obj["checksum"] == 625 and obj["cycles"] == {"1": 1, "3": 8, "15": 40}
    obj["checksum"] = 624
    with pytest.raises(ValueError):
        CycleHistogram.from_json(json.dumps(obj))


def test_dot_export():
    text = to_dot(cat(1, 5, 3, 1))
    assert text.startswith("digraph")
    assert text.count("->") == 9
    with pytest.raises(CapacityError):
        to_dot(cat(1, 2, 5, 3))  # 15625 states


@pytest.mark.parametrize("lmap", [cat(1, 2, 5, 2), cat(1, 1, 5, 2), CompanionMap(P([-1, 1], 3, 3)), cat(2, 3, 3, 3)], ids=repr)
def test_embedding(lmap):
    rep = embedding_check(lmap)
    assert rep, rep.details


def test_embedding_sub_histogram_example():
    rep = embedding_check(cat(1, 2, 5, 2))
    assert rep.details["lower"] == {1: 1, 3: 8} == rep.details["multiples_of_p"]


@pytest.mark.parametrize("lmap", [cat(1, 2, 5, 1), cat(1, 1, 5, 1), cat(0, 1, 5, 1), cat(0, 0, 3, 1), cat_companion(CatParams(1, 1, 3, 1))], ids=repr)
def test_fixed_points_match_kernel(lmap):
    assert fixed_point_check(lmap)


def test_splitting_counts():
    m = cat(1, 2, 5, 1)
    assert splitting_counts(m, 15, 15) == 0  # lcm(75, .) is a multiple of 75
    assert splitting_counts(m, 15, 75) == 25
    with pytest.raises(OutOfTheoryError):
        splitting_counts(m, 3, 15)


def test_d_matrix_examples():
    D = build_d_matrix(cat(1, 2, 5, 1), 1)
    assert D.basis == (3,) and D.entries == ((5,),)
    D = build_d_matrix(cat(1, 1, 5, 1), 1, strict=False)
    assert D.basis == (2,) and D.entries == ((5,),) and not D.hypothesis_holds
    with pytest.raises(OutOfTheoryError):
        build_d_matrix(cat(1, 1, 5, 1), 1)


def test_d_matrix_recursion_examples():
    rep = dmatrix_recursion_check(cat(1, 2, 5, 2), 2, 1)
    assert rep and rep.details["measured"] == [200] == rep.details["predicted"]
    rep = dmatrix_recursion_check(cat(1, 1, 5, 2), 2, 1)
    assert rep and rep.details["measured"] == [60]


def test_d_matrix_weights_a_by_period_ratio():
    # f = (t - 2)(t - 4) at p = 5: roots of orders 4 and 2 give basis [2, 4].
    # Scaling a by T_i / T_j matches enumeration; plain a / p overcounts.
    m = CompanionMap(P([8, -6, 1], 5, 2))
    D = build_d_matrix(m, 1)
    assert D.basis == (2, 4)
    assert D.a == ((5, 20), (0, 25))
    assert D.entries == ((1, 0), (2, 5))
    assert [[int(x) for x in row] for row in D.a_over_p_entries()] == [[1, 0], [4, 5]]
    rep = dmatrix_recursion_check(m, 2, 1)
    assert rep.details["N_k_v"] == [2, 29]
    assert rep.details["measured"] == [2, 149] == rep.details["predicted"]
    assert rep.details["predicted_a_over_p"] == [2, 153]
    rep = dmatrix_recursion_check(m, 2, 1, 2)
    assert rep.details["measured"][1] == 749 == rep.details["predicted"][1]
    assert rep.details["predicted_a_over_p"][1] == 773


def test_stabilization():
    rep = stabilization_check(cat(1, 2, 5, 1), 3, 1, 3)
    assert rep and rep.details["counts"] == {1: 8, 2: 8, 3: 8}
    with pytest.raises(OutOfTheoryError):
        stabilization_gate(P([-1, 1], 5, 1))
    with pytest.raises(OutOfTheoryError):
        stabilization_check(cat(0, 1, 5, 1), 1, 1, 2)


def test_cycle_decomposition_rep_is_cycle_minimum():
    dec = cycle_decomposition(cat(1, 2, 5, 1), "vectorized")
    succ = cat(1, 2, 5, 1).successor_array()
    assert (dec.rep[succ] == dec.rep).all()
    assert (dec.rep <= np.arange(25)).all()

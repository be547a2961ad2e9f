import csv
import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from ringcycles.catmap import (
    CatMap,
    CatParams,
    cat_companion,
    cat_count_doubling_check,
    cat_enumerate,
    cat_matrix_period,
    cat_minimal_poly,
    cat_stabilization_check,
    cat_stabilization_threshold,
    cat_state_to_companion,
    cat_table_census,
    cat_table_predict,
    companion_embedding_check,
    corrected_p_power_count,
    table_counts,
)
from ringcycles.dynamics import state_period
from ringcycles.errors import OutOfTableError, OutOfTheoryError


def brute_matrix_period(a, b, q):
    A, n = ((1, a), (b, 1 + a * b)), 1
    M = [[1 % q, a % q], [b % q, (1 + a * b) % q]]
    while M != [[1, 0], [0, 1]]:
        M = [[(M[i][0] * A[0][j] + M[i][1] * A[1][j]) % q for j in range(2)] for i in range(2)]
        n += 1
    return n


def test_params_validation():
    with pytest.raises(ValueError):
        CatParams(-1, 2, 5)
    with pytest.raises(ValueError):
        CatParams(1, 2, 6)
    assert CatParams(3, 4, 7).det() == 1


def test_minimal_poly_examples():
    assert cat_minimal_poly(CatParams(0, 0, 5)).int_coeffs() == [-1, 1]
    assert cat_minimal_poly(CatParams(1, 1, 5)).int_coeffs() == [1, -3, 1]
    f = cat_minimal_poly(CatParams(1, 5, 3))
    assert f.int_coeffs() == [1, -7, 1]
    assert f.reduce_mod_p().int_coeffs() == [1, -1, 1]  # t^2 + 2t + 1 mod 3


def test_matrix_is_annihilated():
    for a, b in [(1, 2), (3, 4), (0, 5), (7, 7)]:
        m = CatMap(CatParams(a, b, 11, 2))
        f = cat_minimal_poly(m.params).int_coeffs()
        C = m.int_matrix
        C2 = [[sum(C[i][t] * C[t][j] for t in range(2)) for j in range(2)] for i in range(2)]
        Z = [[C2[i][j] + f[1] * C[i][j] + f[0] * (i == j) for j in range(2)] for i in range(2)]
        assert Z == [[0, 0], [0, 0]]


def test_enumerate_examples():
    assert cat_enumerate(CatParams(1, 2, 5, 1)).cycles == {1: 1, 3: 8}
    assert cat_enumerate(CatParams(1, 2, 5, 2)).cycles == {1: 1, 3: 8, 15: 40}
    h = cat_enumerate(CatParams(1, 5, 3, 1))
    assert h.cycles == {1: 1, 2: 1, 6: 1}
    assert h.checksum == 9


def test_table_predict_examples():
    assert cat_table_predict(CatParams(0, 0, 5)).T == 1
    pred = cat_table_predict(CatParams(1, 1, 5))
    assert pred.T == 10 and pred.row == "ab=p-4 mod p"
    pred = cat_table_predict(CatParams(1, 2, 5))
    assert (pred.T, pred.k1, pred.k2, pred.row) == (3, 3, 1, "k1|p+1")
    with pytest.raises(OutOfTableError):
        cat_table_predict(CatParams(1, 5, 3))
    # the out-of-table error is an out-of-theory error too
    assert issubclass(OutOfTableError, OutOfTheoryError)


@pytest.mark.parametrize("p,k", [(5, 1), (5, 2), (7, 1), (11, 1)])
def test_table_prediction_matches_enumerated_period_for_every_pair(p, k):
    q = p**k
    for a in range(q):
        for b in range(q):
            params = CatParams(a, b, p, k)
            assert cat_table_predict(params).T == brute_matrix_period(a, b, q), (a, b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(1, 3), st.integers(0, 10**4), st.integers(0, 10**4))
def test_matrix_period_agrees_with_brute_force(p, k, a, b):
    assert cat_matrix_period(CatParams(a, b, p, k)) == brute_matrix_period(a, b, p**k)


def test_companion_embedding():
    for params in [CatParams(1, 2, 5, 1), CatParams(1, 1, 5, 1), CatParams(1, 5, 3, 2), CatParams(2, 3, 3, 1)]:
        assert companion_embedding_check(params)
    params = CatParams(1, 2, 5, 2)
    z = (3, 7)
    assert state_period(CatMap(params), z) == state_period(cat_companion(params), cat_state_to_companion(params, z))


def test_companion_embedding_degree_one_is_vacuous():
    rep = companion_embedding_check(CatParams(0, 0, 5))
    assert rep.passed and rep.vacuous


def test_census_k1_passes():
    for p in (5, 7):
        table = cat_table_census(p, 1)
        assert table.passed
        assert table.total_measured == p * p


def test_census_methods_agree():
    a = cat_table_census(5, 1, method="order")
    b = cat_table_census(5, 1, method="enumerate")
    assert a.rows == b.rows


def test_census_k2_p_power_bucket_is_off_by_half():
    table = cat_table_census(5, 2)
    bad = [r for r in table.rows if not r[3]]
    assert bad == [(5, 48, 24, False)]
    assert corrected_p_power_count(5, 1) == 24
    assert table.notes["predicted_total"] == 649  # 24 more than the 625 pairs
    assert table.total_measured == 625


def test_census_threads_same_result():
    assert cat_table_census(5, 2, threads=2).rows == cat_table_census(5, 2).rows


def test_census_formats():
    table = cat_table_census(5, 1)
    rows = list(csv.reader(io.StringIO(table.to_csv())))
    assert rows[0] == ["T", "predicted_count", "measured_count", "pass"]
    assert sum(int(r[2]) for r in rows[1:]) == 25
    obj = json.loads(table.to_json())
    assert obj["pass"] is True and obj["total"] == 25


def test_table_counts_rows_sum_per_bucket():
    totals, rows = table_counts(7, 2)
    for T in totals:
        assert totals[T] == sum(n for t, _, n in rows if t == T)


def test_count_doubling():
    rep = cat_count_doubling_check(CatParams(1, 2, 5, 1))
    assert rep.passed and rep.vacuous
    rep = cat_count_doubling_check(CatParams(1, 2, 5), 2)
    assert rep.passed and not rep.vacuous
    entry = next(e for e in rep.details["lengths"] if e["T"] == 15)
    assert entry["p*N_T_k"] == 200 == entry["N_pT_k1"]
    assert rep.details["violations_ungated"] == []


def test_stabilization_threshold_examples():
    assert cat_stabilization_threshold(CatParams(1, 1, 5))["threshold"] == 1
    assert cat_stabilization_threshold(CatParams(1, 2, 5))["threshold"] == 1
    assert cat_stabilization_threshold(CatParams(0, 1, 5))["threshold"] == 1
    with pytest.raises(ValueError):
        cat_stabilization_threshold(CatParams(0, 0, 5))


def test_stabilization_passes_for_p5():
    for ab in [(1, 1), (1, 2), (2, 3)]:
        rep = cat_stabilization_check(CatParams(*ab, 5), 3)
        assert rep, rep.details["failures"]


def test_stabilization_gate_rejects_root_one():
    # (0, 1): f = (t - 1)^2 so f(1) = 0
    with pytest.raises(OutOfTheoryError):
        cat_stabilization_check(CatParams(0, 1, 5), 2)


def test_stabilization_at_p3_needs_the_largest_state_threshold():
    rep = cat_stabilization_check(CatParams(2, 3, 3), 4)
    assert rep.details["threshold"] == 1 and rep.details["k_hat"] == 2
    assert rep.details["failures"] == [{"T": 3, "k": 2, "N_k": 26, "N_k1": 80}, {"T": 9, "k": 3, "N_k": 54, "N_k1": 216}]
    assert rep.details["k_hat_reading_failures"] == []
    assert not rep.passed

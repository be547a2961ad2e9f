"""
From one precision to the next: splitting, doubling and stabilization
=====================================================================

A cycle of length p^v T at precision k lifts to cycles of length p^{v+1} T'
at precision k + 1. The D matrix predicts how many, the count-doubling law
relates N_{T,k} and N_{pT,k+1}, and for large k the counts stop changing.
"""

from ringcycles import (
    CatMap,
    CatParams,
    CompanionMap,
    Polynomial,
    build_d_matrix,
    cat_count_doubling_check,
    cat_stabilization_check,
    dmatrix_recursion_check,
)

# a one-dimensional basis: every period-15 cycle at k = 2 becomes 5 period-75 cycles
rep = dmatrix_recursion_check(CatMap(CatParams(1, 2, 5, 2)), 2, 1)
print("Cat (1,2):", rep.details["N_k_v"], "->", rep.details["measured"], "predicted", rep.details["predicted"])

# a two-dimensional basis, where weighting by the period ratio matters
m = CompanionMap(Polynomial.from_ints([8, -6, 1], 5, 2))  # (t - 2)(t - 4)
D = build_d_matrix(m, 1)
print("basis", D.basis, "a", D.a, "D", D.entries)
rep = dmatrix_recursion_check(m, 2, 1)
print("measured", rep.details["measured"], "predicted", rep.details["predicted"],
      "a/p would give", rep.details["predicted_a_over_p"])

# p N_{T,k} = N_{pT,k+1}
rep = cat_count_doubling_check(CatParams(1, 1, 5), 2)
for e in rep.details["lengths"]:
    print(f"    T={e['T']:<4} p*N_T,k={e['p*N_T_k']:<5} N_pT,k+1={e['N_pT_k1']}")

# counts of each length are constant once k passes the threshold
for a, b, p, k_max in [(1, 2, 5, 3), (2, 3, 3, 4)]:
    rep = cat_stabilization_check(CatParams(a, b, p), k_max)
    print(f"({a},{b}) p={p}: stable={rep.passed} threshold={rep.details['threshold']} k_hat={rep.details['k_hat']}")
    for k, counts in rep.details["counts"].items():
        print(f"    k={k}: {counts}")

"""
Cycles of the Cat map on a discrete torus
=========================================

The Cat map (x, y) -> (x + a y, b x + (1 + ab) y) permutes Z_{p^k}^2. Its
functional graph is a union of cycles; we enumerate them exactly, compare
with the predicted period, and look at how the graph at precision k - 1 sits
inside the graph at precision k.
"""

from ringcycles import CatMap, CatParams, cat_enumerate, cat_table_predict, embedding_check, to_dot

params = CatParams(1, 2, 5, 1)
for k in (1, 2, 3):
    pk = params.at_precision(k)
    hist = cat_enumerate(pk)
    pred = cat_table_predict(pk)
    print(f"k={k}: cycles {hist.cycles}  states {hist.checksum}  predicted period {pred.T} ({pred.row})")

# multiplying by p embeds the k-1 graph into the multiples of p at level k
rep = embedding_check(CatMap(params.at_precision(2)))
print("embedding:", rep.passed, rep.details["lower"], "->", rep.details["multiples_of_p"])

# histograms serialize to JSON with a checksum that must equal the state count
print(cat_enumerate(params.at_precision(2)).to_json())

# small graphs export to Graphviz; (1, 5) over Z_3 has 9 states
print(to_dot(CatMap(CatParams(1, 5, 3, 1))))

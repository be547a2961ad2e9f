"""
How the order of a polynomial grows with the precision
======================================================

P_k(f) is the least l with f | t^l - 1 over Z_{p^k}. It equals P_1(f) up to a
threshold k_s and then gains one factor of p per extra digit. Three routes
compute it: the closed form from roots mod p, the lcm of lifted root orders,
and a direct scan of t^l mod f.
"""

from ringcycles import Polynomial, order_profile, verify_order_extension_equality

cases = [
    ([1, -4, 1], 5, "irreducible mod 5, roots of order 3"),
    ([1, -3, 1], 5, "double root 4 mod 5"),
    ([1, 1, 1], 5, "divides t^3 - 1 over Z, never grows"),
    ([-7, 1], 5, "7^4 = 1 mod 25 but not mod 125"),
]
for coeffs, p, note in cases:
    f = Polynomial.from_ints(coeffs, p, 4)
    prof = order_profile(f)
    print(f"{str(f):>16} p={p}  P1={prof.p1:<3} ks={prof.ks!s:<4} {note}")
    for k in (1, 2, 3):
        rep = verify_order_extension_equality(f, k)
        print(f"    k={k}: formula {rep.theory:<5} roots {rep.rootwise:<5} scan {rep.oracle:<5} {'ok' if rep.passed else 'MISMATCH'}")

# The same integer list means different polynomials at different precisions:
# -4 = 1 mod 5, so at k = 1 the first case is t^2 + t + 1.
print(Polynomial.from_ints([1, -4, 1], 5, 1))

# At p = 3 a double root can sit on a ramified lift of a root of unity, and
# the order stops growing. The scan is the ground truth here.
print("\np = 3 exceptions:")
for coeffs in ([1, 1, 1], [1, -1, 1], [4, 2, 1]):
    f = Polynomial.from_ints(coeffs, 3, 4)
    for k in (2, 3):
        rep = verify_order_extension_equality(f, k)
        print(f"    {str(f):>14} k={k}: formula {rep.theory:<4} scan {rep.oracle}")

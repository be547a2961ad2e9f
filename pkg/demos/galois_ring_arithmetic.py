"""
Arithmetic in Galois rings and lifting roots
============================================

Z_{p^k} and its unramified extensions GR(p^k, d) are the rings every other
demo works over. This walks through units, valuations, orders and the Newton
iteration that lifts a root found mod p to a root mod p^k.
"""

from ringcycles import GaloisRing, Polynomial, factor_mod_p, mult_order, newton_lift, ring_inverse, valuation

# Z_25 is GaloisRing.of(5, 2); elements are built by calling the ring
Z25 = GaloisRing.of(5, 2)
seven = Z25(7)
print("7^-1 mod 25 =", ring_inverse(seven))
print("order of 7 mod 25 =", mult_order(seven))  # 7^2 = -1, so 4

# valuations count factors of p; 0 has valuation INFINITE
Z27 = GaloisRing.of(3, 3)
print("nu(18) in Z_27 =", valuation(Z27(18)), " nu(0) =", valuation(Z27(0)))

# a degree-2 extension: Z_25[t]/(t^2 + t + 1)
GR = GaloisRing.of(5, 2, 2)
t = GR.gen
print("modulus h =", GR.h, " t*t =", t * t)  # t^2 = -t - 1 -> (24, 24)

# t^2 - 4t + 1 is irreducible mod 5, so its roots live in F_25
f = Polynomial.from_ints([1, -4, 1], 5, 3)
roots = factor_mod_p(f)
print("splitting degree", roots.d, "roots", [(r.coeffs, m) for r, m in roots])

# each simple root lifts uniquely; check f(root) = 0 mod 5^3
for r, _ in roots:
    x = newton_lift(f, r, 3)
    print("lift of", r.coeffs, "->", x.coeffs, " f(x) =", f.change_ring(x.ring)(x).coeffs,
          " order", mult_order(r), "->", mult_order(x))

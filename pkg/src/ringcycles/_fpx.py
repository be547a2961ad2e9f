"""Dense polynomials over the prime field F_p as plain int lists.

Coefficients are stored lowest degree first and always trimmed, so the
zero polynomial is ``[]``. These helpers back the irreducibility test for
ring descriptors and the mod-p factorization in :mod:`ringcycles.poly`.
"""

from math import lcm


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a, p):
    return trim(c % p for c in a)


def add(a, b, p):
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n))


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return reduce(out, p)


def scale(a, c, p):
    return trim((c * x) % p for x in a)


def monic(a, p):
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = (a[i] * inv) % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(q), trim(a)


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(a, e, m, p):
    result = [1]
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return mod(result, m, p)


def derivative(a, p):
    return trim((i * a[i]) % p for i in range(1, len(a)))


def pth_root(a, p):
    # valid only when every exponent with nonzero coefficient is a multiple of p
    return trim(a[i] for i in range(0, len(a), p))


def is_irreducible(h, p):
    """Rabin-style test: no factor of degree <= d/2 shares a root with t^{p^i} - t."""
    d = len(h) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    t = [0, 1]
    x = t
    for _ in range(d // 2):
        x = powmod(x, p, h, p)
        if len(gcd(h, sub(x, t, p), p)) > 1:
            return False
    return True


def squarefree_factorization(f, p):
    """Return [(g, multiplicity)] with f = prod g^mult, each g squarefree and pairwise coprime."""
    f = monic(f, p)
    out = []
    c = gcd(f, derivative(f, p), p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        fac = divmod_(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = divmod_(c, y, p)[0]
        i += 1
    if len(c) > 1:
        for g, j in squarefree_factorization(pth_root(c, p), p):
            out.append((g, j * p))
    return out


def distinct_degree_factorization(g, p):
    """Split a squarefree monic g into [(product of its degree-i factors, i)]."""
    out = []
    t = [0, 1]
    x = t
    i = 1
    g = monic(g, p)
    while len(g) - 1 >= 2 * i:
        x = powmod(x, p, g, p)
        h = gcd(g, sub(x, t, p), p)
        if len(h) > 1:
            out.append((h, i))
            g = divmod_(g, h, p)[0]
            x = mod(x, g, p)
        i += 1
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def splitting_degree(f, p):
    """Degree d of the smallest extension F_{p^d} over which f splits."""
    d = 1
    for g, _ in squarefree_factorization(f, p):
        for _, deg in distinct_degree_factorization(g, p):
            d = lcm(d, deg)
    return d

import pytest
from hypothesis import given, settings, strategies as st

from ringcycles.catmap import CatMap, CatParams
from ringcycles.dynamics import CompanionMap, state_period
from ringcycles.errors import (
    BoundExhaustedError,
    MultipleRootError,
    ParseError,
    UnsupportedRingError,
    ZeroRootError,
)
from ringcycles.poly import (
    Polynomial,
    factor_mod_p,
    minimal_poly_of_sequence,
    newton_lift,
    parse_poly,
    poly_add,
    poly_gcd_field,
    poly_mod,
    poly_mul,
    poly_order_oracle,
)
from ringcycles.zpk import GaloisRing

P = Polynomial.from_ints


def test_parse_forms_agree():
    f = parse_poly("1 - 4t + t^2", 5, 2)
    assert f == parse_poly("1 - 4*t + t^2", 5, 2) == parse_poly("[1, -4, 1]", 5, 2)
    assert f.int_coeffs() == [1, -4, 1]
    assert parse_poly("t^3", 7).degree() == 3
    assert parse_poly("2 + 3x", 7).int_coeffs() == [2, 3]


@pytest.mark.parametrize("text", ["", "1 + + t", "t^", "[1, 'a']", "1 + 2y", "25 + t"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_poly(text, 5, 2)


def test_format_roundtrip():
    for text in ["1 - 4*t + t^2", "-1 + t", "3 + t^3", "0"]:
        assert str(parse_poly(text, 7, 2)) == text


def test_arithmetic_examples():
    F5 = lambda c: P(c, 5)
    assert poly_gcd_field(F5([1, 1, 1]), F5([-1, 0, 0, 1])) == F5([1, 1, 1])
    assert poly_mul(P([1, 1], 3, 2), P([8, 1], 3, 2)) == P([8, 0, 1], 3, 2)
    assert poly_mod(F5([0, 0, 0, 1]), F5([1, -4, 1])) == F5([1])
    assert poly_add(F5([1, 2]), F5([4, 3])).is_zero()


def test_gcd_needs_field():
    with pytest.raises(UnsupportedRingError):
        poly_gcd_field(P([1, 1], 3, 2), P([2, 1], 3, 2))


def test_factor_examples():
    rs = factor_mod_p(P([1, -3, 1], 5, 2))
    assert rs.d == 1
    assert [(r.coeffs, m) for r, m in rs] == [((4,), 2)]

    rs = factor_mod_p(P([1, -4, 1], 5, 2))
    assert rs.d == 2
    assert GaloisRing.of(5, 1, 2).gen in [r for r, _ in rs]
    assert rs.multiplicities == [1, 1]

    rs = factor_mod_p(P([-1, 1], 7))
    assert [(r.coeffs, m) for r, m in rs] == [((1,), 1)]

    with pytest.raises(ZeroRootError):
        factor_mod_p(P([5, 1, 1], 5, 2))


@pytest.mark.parametrize(
    "coeffs,p",
    [([1, 1, 0, 0, 1], 2), ([-2, 0, 0, 1], 7), ([1, 0, 2, 0, 1], 3), ([2, 1, 0, 1], 3), ([1, 1, 1, 1, 1], 5)],
)
def test_equal_degree_splitting_matches_exhaustive(coeffs, p):
    f = P(coeffs, p)
    assert factor_mod_p(f).roots == factor_mod_p(f, search_limit=1).roots


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=1, max_size=4))
def test_factor_reconstructs_f(p, low):
    coeffs = [c % p for c in low] + [1]
    if coeffs[0] == 0:
        coeffs[0] = 1
    f = P(coeffs, p)
    rs = factor_mod_p(f)
    F = f.change_ring(rs.ring)
    prod = Polynomial(rs.ring, [1])
    for r, m in rs:
        assert not F(r)
        for _ in range(m):
            prod = prod * Polynomial(rs.ring, [-r, 1])
    # whatever is left over has no roots in the splitting field only if f does not split; it does by construction
    assert prod == F


def test_newton_lift_examples():
    one = GaloisRing.of(3, 1)(1)
    assert newton_lift(P([-1, 1], 3, 4), one, 4) == GaloisRing.of(3, 4)(1)

    f = P([1, -4, 1], 5, 2)
    t = GaloisRing.of(5, 1, 2).gen
    x = newton_lift(f, t, 2)
    assert not f.change_ring(x.ring)(x)
    assert x.mod_p() == t

    with pytest.raises(MultipleRootError):
        newton_lift(P([1, -3, 1], 5, 2), GaloisRing.of(5, 1)(4), 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]), st.integers(-30, 30), st.integers(1, 30), st.integers(2, 7))
def test_newton_lift_is_a_root(p, c1, c0, k):
    f = P([c0, c1, 1], p, 4)
    try:
        rs = factor_mod_p(f)
    except ZeroRootError:
        return
    for r, m in rs:
        if m > 1:
            continue
        x = newton_lift(f, r, k)
        assert x.mod_p() == r
        assert not f.change_ring(x.ring)(x)


def test_oracle_examples():
    assert poly_order_oracle(P([-1, 1], 7, 3)) == 1
    assert poly_order_oracle(P([1, 1, 1], 5, 1)) == 3
    assert poly_order_oracle(P([1, -4, 1], 5, 2)) == 15
    with pytest.raises(BoundExhaustedError):
        poly_order_oracle(P([1, -4, 1], 5, 2), bound=14)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(1, 2), st.tuples(st.integers(1, 4), st.integers(0, 4)), st.tuples(st.integers(1, 4), st.integers(0, 4)))
def test_oracle_divides_under_products(p, k, f_low, g_low):
    f = P([f_low[0] % p or 1, f_low[1], 1], p, k)
    g = P([g_low[0] % p or 1, g_low[1], 1], p, k)
    assert poly_order_oracle(f * g) % poly_order_oracle(f) == 0


def test_sequence_minimal_poly_examples():
    cat12 = CatMap(CatParams(1, 2, 5, 1))
    assert minimal_poly_of_sequence(cat12, (1, 0)) == P([1, 1, 1], 5)
    assert minimal_poly_of_sequence(cat12, (0, 0)) == P([1], 5)
    # C = [[1, 1], [1, 2]] has eigenvalue 4 mod 5 with eigenvector (1, 3)
    cat11 = CatMap(CatParams(1, 1, 5, 1))
    assert cat11.step((1, 3)) == (4, 2)
    assert minimal_poly_of_sequence(cat11, (1, 3)) == P([-4, 1], 5)


def _poly_order_field(h):
    # brute force order of h over F_p
    return poly_order_oracle(h, bound=10**6)


@pytest.mark.parametrize("coeffs,p,n", [([1, -3, 1], 5, 2), ([1, -4, 1], 5, 2), ([8, -6, 1], 5, 1), ([1, 0, 1], 3, 2), ([-1, 0, 0, 1], 7, 1)])
def test_sequence_minimal_poly_divides_f_and_has_state_period_as_order(coeffs, p, n):
    f = P(coeffs, p, 2)
    lm = CompanionMap(f, n, 1)
    f1 = f.reduce_mod_p()
    for i in range(lm.size):
        x = lm.unindex(i)
        h = minimal_poly_of_sequence(lm, x)
        assert (f1 % h).is_zero()
        assert _poly_order_field(h) == state_period(lm, x)

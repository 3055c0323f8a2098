from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jettower.chow import BundleWeights, TowerContext
from jettower.errors import DomainError
from jettower.parser import parse_class
from jettower.positivity import (
    final_argument,
    growth_inequality,
    h0_lower_bound,
    h0_scan,
    height_bound,
    leading_coefficient,
    lk_expansion_closed_form,
    morse_certificate,
    morse_difference,
    nef_class,
    nef_cone_bounds,
    nef_Lk,
    nef_recursion_check,
    pushforward_lk_expansion,
    schwarz_min_lambda,
    weight_sum,
)
from jettower.scalars import ParamScalar, symbols

r, d, chi, x, y, z, eps = symbols()


@pytest.mark.parametrize(
    "k,weights",
    [(1, BundleWeights(0, 2, (1,))), (2, BundleWeights(0, 6, (2, 1))),
     (3, BundleWeights(0, 18, (6, 2, 1)))],
)
def test_nef_weights(k, weights):
    w = nef_Lk(k)
    assert w == weights
    assert w.d_part + w.total == 3**k


def test_nef_weights_domain():
    with pytest.raises(DomainError):
        nef_Lk(0)


def test_nef_recursion():
    assert nef_recursion_check(2)
    assert nef_recursion_check(3)
    assert all(nef_recursion_check(k) for k in range(2, 9))
    assert not nef_recursion_check(3, BundleWeights(0, 18, (6, 2, 2)))


def test_lk_expansion_surface_family():
    ctx = TowerContext(2, 3)
    assert pushforward_lk_expansion(1, ctx) == [6]
    assert pushforward_lk_expansion(2, ctx) == [4, 18]
    assert pushforward_lk_expansion(3, ctx) == [4, 16, 54]


@pytest.mark.parametrize("n,k", [(1, 3), (3, 2), (3, 3)])
def test_lk_expansion_matches_closed_form(n, k):
    ctx = TowerContext(n, k)
    got = pushforward_lk_expansion(k, ctx)
    assert got == [ParamScalar(v) for v in lk_expansion_closed_form(n, k)]
    if k > 1:
        assert got[0] == n + 2
    assert all(v.constant() >= 0 for v in got)


def test_lk_second_coefficient():
    n = 4
    assert lk_expansion_closed_form(n, 3)[1] == 5 * n + 6


def test_growth_inequality():
    assert all(growth_inequality(n, j) for n in range(1, 6) for j in range(1, 11))


def test_pole_order_of_l_monomials():
    n = 2
    for level in (1, 2, 3):
        ctx = TowerContext(n, level)
        ls = [nef_class(ctx, j, level) for j in range(1, level + 1)]
        dim = ctx.dim(level)
        for ms in product(range(dim), repeat=level):
            if sum(ms) != dim - 1:
                continue
            c = ctx.gen("a", level)
            for l, m in zip(ls, ms):
                c = c * l**m
            v = ctx.top_intersection(c)
            assert v.degree("r") <= n and v.rd_degree() <= n + 1


def test_x1_certificate():
    ctx = TowerContext(2, 1)
    A = parse_class("a1 + (2 + x)*a - x*eps*b", ctx)
    B = parse_class("(2 + x)*a", ctx)
    rep = morse_certificate(A, B, ctx, {"r": 5, "d": 3, "chi": 2, "x": 1}, substitute_eps=True)
    assert rep.dominant == -4 * chi * d**2 - 20 * (3 + Fraction(11, 3) * x + x**2) * r * d
    assert rep.verdict == "negative"
    assert rep.asymptotic_verdict == "negative"
    assert rep.dimension == 5


@settings(max_examples=40)
@given(
    st.fractions(min_value=1, max_value=10**6),
    st.fractions(min_value=1, max_value=10**3),
    st.fractions(min_value=2, max_value=50),
    st.fractions(min_value=0, max_value=100),
)
def test_x1_negative_everywhere(r0, d0, chi0, x0):
    ctx = TowerContext(2, 1)
    A = parse_class("a1 + (2 + x)*a - x*eps*b", ctx)
    B = parse_class("(2 + x)*a", ctx)
    point = {"r": max(r0, d0), "d": d0, "chi": chi0, "x": x0}
    rep = morse_certificate(A, B, ctx, point, substitute_eps=True)
    assert rep.verdict == "negative"


def test_x2_certificate():
    ctx = TowerContext(2, 2)
    A = parse_class("a2 + (2 + y)*a1 + (6 + 2*y + x)*a - eps*x*b", ctx)
    B = parse_class("(6 + 2*y + x)*a", ctx)
    dom = morse_difference(A, B, ctx).rd_part(3)
    p1 = 222 + 518 * y + 483 * y**2 + 210 * y**3 + 35 * y**4
    p2 = 51 + 102 * y + 75 * y**2 + 20 * y**3
    assert dom == p1 * (chi * d**3 - 12 * r * d**2) - 7 * eps * x * p2 * d**3


def test_A_equals_B():
    ctx = TowerContext(1, 1)
    A = nef_class(ctx, 1)
    D = ctx.dim(1)
    assert morse_difference(A, A, ctx) == (1 - D) * ctx.top_intersection(A**D)


def test_scaling_identity():
    ctx = TowerContext(1, 1)
    A = nef_class(ctx, 1) + ctx.gen("a", 1) * x
    B = ctx.gen("a", 1) * 2
    D = ctx.dim(1)
    t = ParamScalar.var("y")
    lhs = ctx.top_intersection((A * t) ** D) - D * ctx.top_intersection((A * t) ** (D - 1) * B)
    rhs = t**D * ctx.top_intersection(A**D) - D * t ** (D - 1) * ctx.top_intersection(A ** (D - 1) * B)
    assert lhs == rhs


def test_morse_rejects_non_divisors():
    ctx = TowerContext(1, 1)
    a = ctx.gen("a", 1)
    with pytest.raises(DomainError):
        morse_difference(a * a, a, ctx)


def test_leading_coefficient_order():
    p = 3 * r * d**2 + 5 * r**2 + d**7
    assert leading_coefficient(p) == 5


def test_weight_sum():
    for n in range(1, 7):
        assert sum(3**j - 2 * 3 ** (j - 1) for j in range(1, n + 2)) == weight_sum(n)
        assert weight_sum(n) == Fraction(3 ** (n + 1) - 1, 2)


def test_final_argument_small_and_large():
    small = final_argument(2, 1, 1, 1)
    assert small.morse.verdict == "negative" and not small.big
    large = final_argument(2, 10**18, 10**6, 1)
    assert large.morse.verdict == "positive" and large.big
    assert large.morse.dominant == 24245040 * r * d**3


def test_final_argument_schwarz_threshold():
    rep = final_argument(2, 30, 1, 1, ratio=Fraction(1, 2))
    assert rep.schwarz_threshold == Fraction(13, 2)
    assert rep.schwarz_rhs == 10
    assert rep.schwarz_ok
    assert final_argument(2, 3, 1, 1, ratio=1).schwarz_ok is False


def test_final_argument_domain():
    with pytest.raises(DomainError):
        final_argument(2, 0, 1, 1)


def test_schwarz_min_lambda():
    assert schwarz_min_lambda(3, 2) == 6
    assert schwarz_min_lambda(0, 7) == 0
    total = sum(nef_Lk(k).d_part + nef_Lk(k).total for k in (1, 2, 3))
    assert schwarz_min_lambda(total, 1) == 39


@pytest.mark.parametrize("n,x0,want", [(2, 1, 13), (1, 2, 2), (2, 13, 1)])
def test_height_bound(n, x0, want):
    assert height_bound(n, x0, 1) == want


def test_height_bound_domain():
    with pytest.raises(DomainError):
        height_bound(2, 0, 1)


@pytest.mark.parametrize("n,l0,d0,slope", [(2, 6, 2, -1), (3, 0, 5, 0), (1, 4, 1, -2)])
def test_nef_cone(n, l0, d0, slope):
    cb = nef_cone_bounds(n, l0, d0)
    assert cb.nef_lower_slope == slope
    assert len(cb.describe()) == 3
    assert cb.in_outer_cone(0, 1) and not cb.in_outer_cone(-1, -1)


def test_nef_cone_domain():
    with pytest.raises(DomainError):
        nef_cone_bounds(2, 1, 0)


def test_h0_bound_examples():
    assert h0_lower_bound(6, 2, 2, 2, 6, 2) == 51
    # d = d0: the second binomial is 1
    assert h0_lower_bound(-1, 2, 3, 3, 4, 2) == (-2) * 20 - (-6) * 1


def test_h0_bound_turns_positive_near_the_cone_boundary():
    # slope -6/(3*2) = -1, deg lambda = -9 > -1 * 10
    vals = h0_scan(-9, 2, 10, 2, 6, 2, range(1, 201))
    assert vals[0] < 0 and vals[-1] > 0


def test_h0_bound_domain():
    with pytest.raises(DomainError):
        h0_lower_bound(0, 2, 1, 2, 0, 2)

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_class, s1_top_power_by_hand

from jettower.chow import BundleWeights, ChowClass, TowerContext, level_dim
from jettower.errors import DomainError
from jettower.scalars import symbols

r, d, chi, x, y, z, eps = symbols()


@pytest.mark.parametrize("n,k", [(1, 0), (2, 3), (5, 2)])
def test_dimension_formula(n, k):
    assert TowerContext(n, k).dim(k) == level_dim(n, k) == (k + 1) * n + 1


def test_context_rejects_bad_arguments():
    with pytest.raises(DomainError):
        TowerContext(0, 1)
    with pytest.raises(DomainError):
        TowerContext(2, 10)


def test_beta_squared_vanishes():
    ctx = TowerContext(3, 2)
    for level in range(3):
        b = ctx.gen("b", level)
        assert not b * b


def test_alpha_power_vanishes():
    ctx = TowerContext(2, 1)
    assert not ctx.gen("a", 1) ** 4
    assert ctx.gen("a", 1) ** 3


def test_binomial_expansion_without_relations():
    ctx = TowerContext(2, 1)
    a, a1 = ctx.gen("a", 1), ctx.gen("a1", 1)
    assert (a1 + 2 * a) ** 3 == a1**3 + 6 * a1**2 * a + 12 * a1 * a**2 + 8 * a**3


def test_degree_truncation():
    ctx = TowerContext(1, 1)
    a1 = ctx.gen("a1", 1)
    assert a1**3 and not a1**4


def test_level_mismatch():
    ctx = TowerContext(2, 2)
    with pytest.raises(DomainError):
        ctx.gen("a1", 1) * ctx.gen("a1", 2)


def test_class_of_weights():
    ctx = TowerContext(2, 3)
    g = ctx.gens(1)
    assert ctx.class_of(BundleWeights(0, 2, (1,))) == g["a1"] + 2 * g["a"]
    assert not ctx.class_of(BundleWeights(0, 0, (0, 0)))
    w = BundleWeights(-eps * x, 18 + 6 * z + 2 * y + x, (6 + 2 * z + y, 2 + z, 1))
    g = ctx.gens(3)
    assert ctx.class_of(w) == (
        g["a3"] + (2 + z) * g["a2"] + (6 + 2 * z + y) * g["a1"]
        + (18 + 6 * z + 2 * y + x) * g["a"] - eps * x * g["b"]
    )
    with pytest.raises(DomainError):
        TowerContext(2, 1).class_of(BundleWeights(0, 1, (1, 1)))


def test_pushforward_basic():
    n = 2
    ctx = TowerContext(n, 2)
    a2 = ctx.gen("a2", 2)
    assert ctx.pushforward_once(a2**n) == ctx.scalar(1, 1)
    assert ctx.pushforward_once(a2 ** (n + 1)) == ctx.segre_class(1, 1)
    assert not ctx.pushforward_once(a2 ** (n - 1))
    with pytest.raises(DomainError):
        ctx.pushforward_once(ctx.gen("a", 0))


def test_level_zero_relations():
    ctx = TowerContext(2, 0)
    a, b = ctx.gen("a", 0), ctx.gen("b", 0)
    assert ctx.top_intersection(a**3) == r
    assert ctx.top_intersection(a**2 * b) == d


def test_top_intersection_rejects_wrong_degree():
    ctx = TowerContext(2, 1)
    with pytest.raises(DomainError):
        ctx.top_intersection(ctx.gen("a1", 1) ** 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_s1_power(n):
    ctx = TowerContext(n, 0)
    value = ctx.top_intersection(ctx.segre_class(0, 1) ** (n + 1))
    assert value.dominant_term() == (n + 2) * r * d ** (n + 1)
    assert value == s1_top_power_by_hand(n)


def test_s1_cube_by_hand_at_n2():
    ctx = TowerContext(2, 0)
    value = ctx.top_intersection(ctx.segre_class(0, 1) ** 3)
    assert value == (d - 4) ** 3 * r + 3 * (d - 4) ** 2 * (r + chi) * d


def test_surface_family_numbers():
    ctx = TowerContext(2, 0)
    s1, s2 = ctx.segre_class(0, 1), ctx.segre_class(0, 2)
    assert ctx.top_intersection(s1 * s2).dominant_term() == chi * d**3 - 12 * r * d**2
    s1s1b = ctx.top_intersection(s1 * s1 * ctx.gen("b", 0))
    assert s1s1b == (d - 4) ** 2 * d
    assert s1s1b.dominant_term() == d**3


def test_divisor_classes():
    ctx = TowerContext(2, 3)
    assert ctx.divisor_class(1) == ctx.gen("a1", 1) - chi * ctx.gen("b", 1)
    assert ctx.divisor_class(2) == ctx.gen("a2", 2) - ctx.gen("a1", 2)
    assert ctx.divisor_class(3) == ctx.gen("a3", 3) - ctx.gen("a2", 3)
    with pytest.raises(DomainError):
        ctx.divisor_class(4)


def test_text_rendering():
    ctx = TowerContext(2, 1)
    g = ctx.gens(1)
    c = (x + 2) * g["a1"] * g["b"] - eps * x * g["b"]
    assert c.to_text() == "(x + 2)*a1*b - x*eps*b"
    assert ChowClass(2, 1).to_text() == "0"


# -- projection formula ------------------------------------------------------------


def projection_instance(rng: random.Random):
    n = rng.randint(1, 2)
    level = rng.randint(1, 3)
    ctx = TowerContext(n, level)
    i = rng.randint(0, ctx.dim(level - 1))
    c = random_class(rng, ctx, level - 1, ctx.dim(level - 1) - i)
    ak = ctx.gen(f"a{level}", level)
    lhs = ctx.top_intersection(c.pullback(level) * ak ** (n + i))
    rhs = ctx.top_intersection(c * ctx.segre_class(level - 1, i))
    return lhs, rhs


def test_projection_formula_100_instances():
    rng = random.Random(20260417)
    for _ in range(100):
        lhs, rhs = projection_instance(rng)
        assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 2), st.integers(1, 3))
def test_pushforward_linear_and_pullback_compatible(seed, n, level):
    rng = random.Random(seed)
    ctx = TowerContext(n, level)
    deg = ctx.dim(level)
    c = random_class(rng, ctx, level - 1, rng.randint(0, deg - 1))
    e1 = random_class(rng, ctx, level, deg - c.degrees().pop() if c else deg)
    e2 = random_class(rng, ctx, level, deg - c.degrees().pop() if c else deg)
    push = ctx.pushforward_once
    assert push(e1 + e2) == push(e1) + push(e2)
    assert push(c.pullback(level) * e1) == c * push(e1)

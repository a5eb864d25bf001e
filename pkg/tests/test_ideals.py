"""Ideal algebra, localization at the origin, and the Groebner cache.

The randomized block compares intersect/colon/product/colength on
monomial ideals against brute-force exponent-lattice oracles.
"""

import itertools
import random

import pytest

from fibercone.poly import Polynomial, poly_parse
from fibercone.ideals import (
    ContextMismatch, DegenerateDivisor, NotLocallyFinite, RingContext,
)

VARS = ("x", "y", "z")


@pytest.fixture
def ctx():
    return RingContext(VARS)


def ideal(ctx, *texts):
    return ctx.ideal([ctx.parse(t) for t in texts])


# -- basic algebra

def test_sum_product_power(ctx):
    a = ideal(ctx, "x^2", "y")
    b = ideal(ctx, "z")
    s = a + b
    assert s.contains(ctx.parse("x^2 + 3*z"))
    p = a * b
    assert p.contains(ctx.parse("x^2*z"))
    assert not p.contains(ctx.parse("z"))
    assert a.power(0).contains(ctx.parse("1"))
    assert a.power(2).contains(ctx.parse("x^2*y"))
    assert not a.power(2).contains(ctx.parse("x^2"))


def test_intersect_and_colon_textbook(ctx):
    x, y = ideal(ctx, "x"), ideal(ctx, "y")
    assert x.intersect(y).equals(ideal(ctx, "x*y"))
    a = ideal(ctx, "x^2", "x*y")
    assert a.colon(ideal(ctx, "x")).equals(ideal(ctx, "x", "y"))
    assert a.colon(a).contains(ctx.parse("1"))
    with pytest.raises(DegenerateDivisor):
        a.colon(ctx.ideal([]))


def test_colon_with_non_monomial(ctx):
    a = ideal(ctx, "x^2 - y^2")
    q = a.colon(ideal(ctx, "x - y"))
    assert q.contains(ctx.parse("x + y"))


def test_context_mismatch(ctx):
    other = RingContext(("a", "b"))
    with pytest.raises(ContextMismatch):
        ideal(ctx, "x") + other.ideal([other.parse("a")])


# -- localization and colength

def test_colength_homogeneous(ctx):
    m = ctx.maximal_ideal
    assert m.colength() == 1
    assert (m * m).colength() == 4
    assert ideal(ctx, "x^2", "y^3", "z^4").colength() == 24


def test_local_part_homogeneous_is_identity(ctx):
    a = ideal(ctx, "x^2", "y^2", "z^2", "x*y")
    rep, n = a.local_part()
    assert rep.equals(a)
    assert n >= 1


def test_local_part_strips_unit_component():
    ctx = RingContext(("x", "y"))
    # (x*(x-1), y) localizes at the origin to (x, y)
    a = ctx.ideal([ctx.parse("x^2 - x"), ctx.parse("y")])
    assert a.colength() == 1
    rep, n = a.local_part()
    assert rep.local_contains(ctx.parse("x"))
    assert n >= 1


def test_local_eq_ignores_far_components():
    ctx = RingContext(("x", "y"))
    a = ctx.ideal([ctx.parse("x^2 - x"), ctx.parse("y")])
    b = ctx.ideal([ctx.parse("x"), ctx.parse("y")])
    assert a.local_eq(b)
    assert not a.equals(b)


def test_not_locally_finite(ctx):
    with pytest.raises(NotLocallyFinite):
        ideal(ctx, "x").colength()


def test_quotient_context_dimension():
    ctx = RingContext(("x", "y", "z"))
    q = ctx.quotient([ctx.parse("z")])
    assert q.dimension == 2
    a = q.ideal([q.parse("x"), q.parse("y")])
    assert a.colength() == 1
    assert a.contains(q.parse("z"))


# -- on-disk cache

def test_disk_cache_round_trip(tmp_path):
    c1 = RingContext(VARS, cache_dir=str(tmp_path))
    a = c1.ideal([c1.parse("x^2 - y"), c1.parse("y^2 - z")])
    g1 = a.gb()
    assert c1.cache_misses > 0
    c2 = RingContext(VARS, cache_dir=str(tmp_path))
    b = c2.ideal([c2.parse("x^2 - y"), c2.parse("y^2 - z")])
    g2 = b.gb()
    assert g1 == g2
    assert c2.cache_hits > 0
    assert any(p.suffix == ".json" for p in tmp_path.rglob("*"))


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FIBERCONE_CACHE_DIR", str(tmp_path))
    ctx = RingContext(VARS)
    ctx.ideal([ctx.parse("x^3 - y*z")]).gb()
    assert any(tmp_path.rglob("*.json"))


# -- brute-force oracles on monomial ideals

BOUND = 9  # exponents live in the box [0, BOUND)^3


def box():
    return itertools.product(range(BOUND), repeat=3)


def span(gens):
    """All box monomials divisible by some generator."""
    return {m for m in box()
            if any(all(m[i] >= g[i] for i in range(3)) for g in gens)}


def oracle_intersect(a, b):
    return span(a) & span(b)


def oracle_product(a, b):
    prods = [tuple(x[i] + y[i] for i in range(3)) for x in a for y in b]
    return span([p for p in prods if all(e < BOUND for e in p)])


def oracle_colon(a, g):
    return {m for m in box()
            if any(all(m[i] + g[i] >= gen[i] for i in range(3)) for gen in a)}


def oracle_colength(a):
    s = span(a)
    return sum(1 for m in box() if m not in s)


def random_monomial_ideal(rng, max_deg=8):
    gens = []
    for _ in range(rng.randint(1, 4)):
        while True:
            m = tuple(rng.randint(0, 4) for _ in range(3))
            if 0 < sum(m) <= max_deg:
                gens.append(m)
                break
    return gens


def as_ideal(ctx, gens):
    return ctx.ideal([Polynomial.monomial(m) for m in gens])


def lattice_of(ideal_obj):
    gens = [p.terms[0][0] for p in ideal_obj.gens]
    return span(gens)


def test_monomial_oracle_equivalence():
    rng = random.Random(20240817)
    ctx = RingContext(VARS)
    for trial in range(120):
        a_gens = random_monomial_ideal(rng)
        b_gens = random_monomial_ideal(rng)
        a, b = as_ideal(ctx, a_gens), as_ideal(ctx, b_gens)
        assert lattice_of(a.intersect(b)) == oracle_intersect(a_gens, b_gens)
        assert lattice_of(a * b) == oracle_product(a_gens, b_gens)
        g = b_gens[0]
        colon = a.colon(ctx.ideal([Polynomial.monomial(g)]))
        got = lattice_of(colon)
        want = oracle_colon(a_gens, g)
        assert got == want, (a_gens, g)


def test_monomial_colength_oracle():
    rng = random.Random(911)
    ctx = RingContext(VARS)
    for trial in range(40):
        # force zero-dimensionality with pure powers
        gens = [(rng.randint(1, 5), 0, 0), (0, rng.randint(1, 5), 0),
                (0, 0, rng.randint(1, 5))] + random_monomial_ideal(rng)
        a = as_ideal(ctx, gens)
        assert a.colength() == oracle_colength(gens)

"""Acceptance gate: the seven top-level criteria.

Each criterion prints one pass/fail line (visible with `pytest -s`).
Criteria 1-4 lock the four bundled instances to their expected values;
5 is the randomized monomial-oracle equivalence; 6 the cross-instance
invariant identities; 7 determinism across cache state and job counts.
"""

import itertools
import json
import random

import pytest

from fibercone.corpus import CORPUS, tree_lookup
from fibercone.depth import check_star_regular
from fibercone.ideals import RingContext
from fibercone.invariants import (hilbert_function_g, length_quotient,
                                  length_sum, mingens, reduction_data)
from fibercone.poly import Polynomial
from fibercone.session import (SessionConfig, parse_session, report_tree,
                               run_session)


def _announce(n, label, ok):
    print(f"\ncriterion {n} ({label}): {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="module")
def cache_dir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("gbcache"))


@pytest.fixture(scope="module")
def corpus_trees(cache_dir):
    """Cold-cache structured reports for all four bundled sessions."""
    trees = {}
    for name, entry in CORPUS.items():
        rep = run_session(parse_session(entry["session"]),
                          SessionConfig(cache_dir=cache_dir))
        trees[name] = report_tree(rep)
    return trees


@pytest.fixture(scope="module")
def corpus_objects(cache_dir):
    """(context, I, J, reduction data) per instance, sharing the disk cache."""
    out = {}
    for name, entry in CORPUS.items():
        ast = parse_session(entry["session"])
        ctx = RingContext(ast.ring.variables, cache_dir=cache_dir)
        if ast.ring.presentation:
            pres = [ctx.parse(t) for t in ast.ring.presentation]
            ctx = RingContext(ast.ring.variables, presentation=pres,
                              cache_dir=cache_dir)
        ideals = {d.name: ctx.ideal([ctx.parse(t) for t in d.gens])
                  for d in ast.ideals}
        i, j = ideals["I"], ideals["J"]
        out[name] = (ctx, i, j, reduction_data(i, j))
    return out


def test_criterion_1_example_1(corpus_trees):
    t = corpus_trees["example-1"]
    ok = False
    try:
        assert t["reduction"]["r"] == 2          # I^3 = J I^2
        assert t["reduction"]["rm"] == 1
        assert t["sums"]["FC2"]["terms"]["0"] == 1   # lambda(mI/mJ)
        assert t["sums"]["FC2"]["terms"]["1"] == 0   # m I^2 = m J I
        assert t["depth"]["F"]["lowerbound"] >= 1
        ok = True
    finally:
        _announce(1, "example-1", ok)


def test_criterion_2_example_2(corpus_trees):
    t = corpus_trees["example-2"]
    ok = False
    try:
        assert t["instance"]["dimension"] == 2
        assert t["sums"]["FC2"]["terms"]["0"] == 2   # lambda(mI/mJ)
        assert t["sums"]["FC1"]["terms"]["1"] == 1   # lambda(mI^2 cap J/mJI)
        assert t["sums"]["FC1"]["terms"]["2"] == 0   # vanishing for n >= 2
        assert t["sums"]["FC1"]["terms"]["3"] == 0
        assert t["sums"]["FC2"]["terms"]["1"] == 1   # lambda(mI^2/mJI)
        assert t["sums"]["VV"]["total"] == 0         # I^2 cap J = JI
        assert t["cm"]["G"]["verdict"] == "CM"
        assert t["cm"]["CZ"]["verdict"] == "notCM"
        assert t["depth"]["F"]["lowerbound"] == 1
        assert t["depth"]["F"]["sequence"] == ["U"]  # u is F-regular
        assert t["depth"]["F"]["cmflag"] == "notCM"  # so depth F = 1 exactly
        ok = True
    finally:
        _announce(2, "example-2", ok)


def test_criterion_3_example_3(corpus_trees):
    t = corpus_trees["example-3"]
    ok = False
    try:
        assert t["reduction"]["r"] == 2 and t["reduction"]["rm"] == 2
        assert t["sums"]["FC1"]["terms"]["1"] == 1   # lambda(mI^2 cap J/mJI)
        assert t["cm"]["G"]["vv_failing"] == [2]     # I^2 cap J != JI
        assert t["series"]["G"]["numerator"] == [15, 6, 6]
        assert t["series"]["G"]["denomexp"] == 3
        assert t["depth"]["G"]["lowerbound"] >= 2
        assert set(t["depth"]["G"]["sequence"][:2]) == {"x^3", "y^3"}
        assert t["cm"]["F"]["verdict"] == "CM"
        assert t["cm"]["F"]["e0"] == 9 == t["cm"]["F"]["layer_sum"]
        ok = True
    finally:
        _announce(3, "example-3", ok)


def test_criterion_4_example_4(corpus_trees, corpus_objects):
    t = corpus_trees["example-4"]
    ok = False
    try:
        assert t["reduction"]["r"] == 4              # I^5 = J I^4
        assert t["sums"]["FC1"]["terms"]["1"] == 1
        assert t["sums"]["FC2"]["terms"]["2"] == 0   # m I^{n+1} = m J I^n, n >= 2
        assert t["series"]["G"]["numerator"] == [18, 6, 0, 0, 1]
        assert t["series"]["G"]["denomexp"] == 2
        ctx, i, j, rd = corpus_objects["example-4"]
        ev = check_star_regular(i, ctx.parse("x^5 + y^5"), nmax=rd.r + 4)
        assert ev.holds
        assert t["cm"]["F"]["verdict"] == "notCM"
        assert t["cm"]["F"]["mu_table"]["3"] == [11, 13]
        assert t["depth"]["F"]["lowerbound"] == 1
        assert t["depth"]["F"]["cmflag"] == "notCM"  # depth F = 1 exactly
        ok = True
    finally:
        _announce(4, "example-4", ok)


# -- criterion 5: randomized monomial-oracle equivalence

BOUND = 9


def _span(gens):
    return {m for m in itertools.product(range(BOUND), repeat=3)
            if any(all(m[i] >= g[i] for i in range(3)) for g in gens)}


def _lattice(ideal_obj):
    return _span([p.terms[0][0] for p in ideal_obj.gens])


def _random_gens(rng):
    gens = []
    for _ in range(rng.randint(1, 4)):
        while True:
            m = tuple(rng.randint(0, 4) for _ in range(3))
            if 0 < sum(m) <= 8:
                gens.append(m)
                break
    return gens


def test_criterion_5_monomial_oracles():
    rng = random.Random(73901)
    ctx = RingContext(("x", "y", "z"))
    checked = 0
    ok = False
    try:
        for _ in range(200):
            a_gens, b_gens = _random_gens(rng), _random_gens(rng)
            a = ctx.ideal([Polynomial.monomial(m) for m in a_gens])
            b = ctx.ideal([Polynomial.monomial(m) for m in b_gens])
            assert _lattice(a.intersect(b)) == _span(a_gens) & _span(b_gens)
            prods = [tuple(x[i] + y[i] for i in range(3))
                     for x in a_gens for y in b_gens]
            assert _lattice(a * b) == _span(
                [p for p in prods if all(e < BOUND for e in p)])
            g = b_gens[0]
            colon = a.colon(ctx.ideal([Polynomial.monomial(g)]))
            want = {m for m in itertools.product(range(BOUND), repeat=3)
                    if any(all(m[i] + g[i] >= gen[i] for i in range(3))
                           for gen in a_gens)}
            assert _lattice(colon) == want
            full = a_gens + [(rng.randint(1, 6), 0, 0),
                             (0, rng.randint(1, 6), 0),
                             (0, 0, rng.randint(1, 6))]
            zd = ctx.ideal([Polynomial.monomial(m) for m in full])
            assert zd.colength() == BOUND ** 3 - len(_span(full))
            checked += 1
        assert checked >= 200
        ok = True
    finally:
        _announce(5, f"monomial oracles, {checked} instances", ok)


def test_criterion_6_invariant_identities(corpus_trees, corpus_objects):
    ok = False
    try:
        rng = random.Random(5150)
        for name, (ctx, i, j, rd) in corpus_objects.items():
            tree = corpus_trees[name]
            h = hilbert_function_g(i, 2)
            assert h[0] == i.colength()
            # h_F(1) = mingens(I): recompute from the series numerator
            num = tree_lookup(tree, "series.F")["numerator"]
            assert mingens(i) == _series_value(num, ctx.dimension, 1)
            # length additivity over a random power chain
            ks = sorted({0, rng.randint(1, 2), rng.randint(2, 4)})
            chain = [i.power(k) for k in ks]
            total = length_quotient(chain[0], chain[-1])
            steps = sum(length_quotient(chain[t], chain[t + 1])
                        for t in range(len(chain) - 1))
            assert total == steps
            # Huckaba-Marley: e1 <= Lambda total
            lam = length_sum("LambdaHM", i, j, rd)
            assert tree_lookup(tree, "series.G.e1") <= lam.total
            # tables vanish beyond the certified indices (safety terms)
            for fam, tab in tree_lookup(tree, "sums").items():
                hi = max(int(k) for k in tab["terms"])
                assert tab["terms"][str(hi)] == 0
            # the falsification tripwire never fires
            for item in tree_lookup(tree, "checklist"):
                assert not (item["hypothesis"]
                            and item["verdict"] == "refuted-impossible")
        ok = True
    finally:
        _announce(6, "invariant identities", ok)


def _series_value(numerator, denomexp, n):
    """Coefficient of t^n in numerator / (1-t)^denomexp."""
    from math import comb
    return sum(c * comb(n - k + denomexp - 1, denomexp - 1)
               for k, c in enumerate(numerator) if k <= n)


def test_criterion_7_determinism(corpus_trees, cache_dir):
    ok = False
    try:
        for name, entry in CORPUS.items():
            cold = dict(corpus_trees[name])
            cold.pop("timing")
            cold.pop("cache")
            baseline = json.dumps(cold, sort_keys=False)
            for jobs in (1, 4):
                rep = run_session(parse_session(entry["session"]),
                                  SessionConfig(cache_dir=cache_dir,
                                                jobs=jobs))
                warm = report_tree(rep)
                warm.pop("timing")
                warm.pop("cache")
                assert json.dumps(warm, sort_keys=False) == baseline, \
                    (name, jobs)
        ok = True
    finally:
        _announce(7, "determinism cold/warm, jobs 1 and 4", ok)

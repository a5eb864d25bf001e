"""Depth certification, Cohen-Macaulayness tests, and the checklist."""

import pytest

from fibercone.ideals import RingContext
from fibercone.invariants import length_quotient, length_sum, reduction_data
from fibercone.depth import (
    STATEMENT_IDS, InstanceInvariants, NotAMinimalGenerator,
    check_cortadellas_zarzuela, check_o_regular, check_star_regular,
    check_valabrega_valla, cm_test_fiber, depth_lower_bound,
    good_element_witness, theorem_checklist,
)


def make(ctx, texts):
    return ctx.ideal([ctx.parse(t) for t in texts])


def instance(ctx, i, j, nmax=None):
    rd = reduction_data(i, j)
    d = ctx.dimension
    nm = nmax if nmax is not None else rd.r + d + 2
    fc1 = length_sum("FC1", i, j, rd)
    fc2 = length_sum("FC2", i, j, rd)
    lam = length_sum("LambdaHM", i, j, rd)
    vv, _ = check_valabrega_valla(i, j, rd)
    m = ctx.maximal_ideal
    mi_eq = length_quotient((m * i).intersect(j), m * j) == 0
    cg = depth_lower_bound("G", i, j, nm, rd)
    cf = depth_lower_bound("F", i, j, nm, rd)
    fib = cm_test_fiber(i, j, rd)
    return InstanceInvariants(i=i, j=j, rd=rd, d=d, fc1=fc1, fc2=fc2,
                              lam_hm=lam, vv_holds=vv, mi_cap_j_eq_mj=mi_eq,
                              g_bound=cg.lower_bound, f_bound=cf.lower_bound,
                              fiber_cm=fib)


@pytest.fixture(scope="module")
def planar():
    ctx = RingContext(("x", "y"))
    i = make(ctx, ["x^5", "x^3*y^2", "x^2*y^4", "y^5"])
    j = make(ctx, ["x^5", "y^5"])
    return ctx, i, j


@pytest.fixture(scope="module")
def maximal():
    ctx = RingContext(("x", "y"))
    m = ctx.maximal_ideal
    return ctx, m, m


def test_vv_trivial_when_i_equals_j(maximal):
    ctx, i, j = maximal
    rd = reduction_data(i, j)
    holds, failing = check_valabrega_valla(i, j, rd)
    assert holds and failing == []
    assert check_cortadellas_zarzuela(i, j, rd) == "CM"


def test_star_regular_on_maximal_ideal(maximal):
    ctx, i, j = maximal
    ev = check_star_regular(i, ctx.parse("x"), nmax=4)
    assert ev.holds and ev.series_match
    ev2 = check_o_regular(i, j, ctx.parse("y"), nmax=4)
    assert ev2.holds
    assert all(ev2.containment_checks.values())


def test_regularity_precondition(maximal):
    ctx, i, j = maximal
    with pytest.raises(NotAMinimalGenerator):
        check_star_regular(i, ctx.parse("x^2"), nmax=3)
    with pytest.raises(NotAMinimalGenerator):
        check_o_regular(i, j, ctx.parse("x*y"), nmax=3)


def test_depth_bound_full_for_maximal(maximal):
    ctx, i, j = maximal
    for target in ("G", "F"):
        cert = depth_lower_bound(target, i, j, nmax=4)
        assert cert.lower_bound == 2
        assert len(cert.sequence) == 2


def test_cm_test_fiber_trivial(maximal):
    ctx, i, j = maximal
    rep = cm_test_fiber(i, j, reduction_data(i, j))
    assert rep.verdict == "CM"
    assert rep.e0 == 1 == rep.layer_sum
    assert rep.witness is None


def test_star_regular_diagonal_planar(planar):
    ctx, i, j = planar
    rd = reduction_data(i, j)
    u = ctx.parse("x^5 + y^5")
    ev = check_star_regular(i, u, nmax=rd.r + 4)
    assert ev.holds
    assert ev.series_match is True
    assert all(ev.colon_checks.values())


def test_pure_powers_not_star_regular_planar(planar):
    # x^5 alone is a zero divisor on G here; the diagonal element is needed
    ctx, i, j = planar
    ev = check_star_regular(i, ctx.parse("x^5"), nmax=6)
    assert not ev.holds


def test_cm_test_fiber_planar(planar):
    ctx, i, j = planar
    rep = cm_test_fiber(i, j, reduction_data(i, j))
    assert rep.verdict == "notCM"
    assert (rep.e0, rep.layer_sum) == (5, 6)
    assert rep.witness == 2
    assert rep.mu_table[3] == (11, 13)


def test_good_element_witness_planar(planar):
    ctx, i, j = planar
    rd = reduction_data(i, j)
    fc1 = length_sum("FC1", i, j, rd)
    x = good_element_witness(i, j, fc1, 2)
    assert x is not None
    assert j.local_contains(x)


def test_good_element_witness_precondition(maximal):
    ctx, i, j = maximal
    rd = reduction_data(i, j)
    fc1 = length_sum("FC1", i, j, rd)
    with pytest.raises(ValueError):
        good_element_witness(i, j, fc1, 2)


def test_checklist_planar(planar):
    ctx, i, j = planar
    inv = instance(ctx, i, j)
    verdicts = theorem_checklist(inv)
    assert [v.statement_id for v in verdicts] == list(STATEMENT_IDS)
    by_id = {v.statement_id: v for v in verdicts}
    assert by_id["thm-3.3"].hypothesis_holds
    assert by_id["thm-3.3"].conclusion == "verified"
    assert by_id["cor-3.4"].conclusion == "verified"
    assert not by_id["cor-4.3"].hypothesis_holds  # the total here is 6
    for v in verdicts:
        assert v.conclusion in ("verified", "lower-bound-only", "unknown")


def test_checklist_trivial_instance(maximal):
    ctx, i, j = maximal
    inv = instance(ctx, i, j, nmax=4)
    by_id = {v.statement_id: v for v in theorem_checklist(inv)}
    assert by_id["cor-4.3"].hypothesis_holds
    assert by_id["cor-4.3"].conclusion == "verified"
    assert by_id["thm-3.1"].hypothesis_holds
    assert by_id["thm-3.1"].conclusion == "verified"


def test_checklist_parallel_matches_serial(planar):
    ctx, i, j = planar
    inv = instance(ctx, i, j)
    assert theorem_checklist(inv, jobs=1) == theorem_checklist(inv, jobs=4)


def test_no_refuted_impossible(planar, maximal):
    for ctx, i, j in (planar, maximal):
        inv = instance(ctx, i, j)
        for v in theorem_checklist(inv):
            assert not (v.hypothesis_holds
                        and v.conclusion == "refuted-impossible")

"""Depth certification for the associated graded ring G(I) and the fiber
cone F(I): Valabrega-Valla, the Cortadellas-Zarzuela criterion, the
multiplicity test for fiber-cone Cohen-Macaulayness, regular-element
checks for initial forms, the good-element witness search, and the
statement checklist.

Regularity of an initial form is certified by bounded evidence (colon or
intersection equalities up to a window, plus a Hilbert-series
factorization cross-check for G); the window always travels with the
verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .poly import Polynomial, poly_str
from .ideals import Ideal, RingContext
from .invariants import (
    InternalConsistencyError, LengthTable, ReductionData, fiber_layer_length,
    hilbert_function_g, hilbert_series_f, length_quotient, length_sum,
    mingens, reduction_data,
)


class NotAMinimalGenerator(ValueError):
    """The element handed to a regularity check sits inside m times the ideal."""


@dataclass
class RegularityEvidence:
    holds: bool
    window: int
    colon_checks: dict | None = None       # n -> bool (G-side)
    series_match: bool | None = None       # G-side factorization
    intersection_checks: dict | None = None  # n -> bool (F-side equality)
    containment_checks: dict | None = None   # n -> bool (F-side, weaker form)


@dataclass
class DepthCertificate:
    target: str                  # 'G' or 'F'
    lower_bound: int
    sequence: list[str]          # certified elements, text form
    methods: list[str]
    cm_flag: str = "unknown"     # 'CM', 'notCM', 'unknown'
    justification: str = ""


@dataclass
class FiberCMReport:
    verdict: str                 # 'CM' or 'notCM'
    e0: int
    layer_sum: int
    mu_table: dict = field(default_factory=dict)   # n -> (mu(I^n), weighted sum)
    witness: int | None = None   # first n with mu < weighted sum


@dataclass
class ChecklistVerdict:
    statement_id: str
    hypothesis_holds: bool
    conclusion: str              # verified | lower-bound-only | unknown | refuted-impossible
    detail: str


def check_valabrega_valla(i: Ideal, j: Ideal,
                          rd: ReductionData) -> tuple[bool, list[int]]:
    """I^n cap J = J I^{n-1} locally for 1 <= n <= r+1; lists failing n."""
    failing = []
    for n in range(1, rd.r + 2):
        if not i.power(n).intersect(j).local_eq(j * i.power(n - 1)):
            failing.append(n)
    return (not failing, failing)


def check_cortadellas_zarzuela(i: Ideal, j: Ideal, rd: ReductionData,
                               vv_holds: bool | None = None,
                               fc1: LengthTable | None = None) -> str:
    """'CM'/'notCM' for F(I) when G(I) is Cohen-Macaulay, else 'inapplicable'."""
    if vv_holds is None:
        vv_holds, _ = check_valabrega_valla(i, j, rd)
    if not vv_holds:
        return "inapplicable"
    if fc1 is None:
        fc1 = length_sum("FC1", i, j, rd)
    first = (length_quotient((i.context.maximal_ideal * i).intersect(j),
                             i.context.maximal_ideal * j) == 0)
    return "CM" if (first and fc1.total == 0) else "notCM"


def _in_local(a: Ideal, x: Polynomial) -> bool:
    return a.local_contains(x)


def check_star_regular(i: Ideal, x: Polynomial, nmax: int) -> RegularityEvidence:
    """Evidence that the degree-one initial form of x is regular in G(I).

    Two independent signals: colon(I^{n+1}, x) = I^n for n <= nmax, and the
    coefficientwise factorization H(G) * (1-t) = H(G of the image of I
    modulo x) over the window.
    """
    ctx = i.context
    m = ctx.maximal_ideal
    if not _in_local(i, x):
        raise NotAMinimalGenerator("element does not lie in the ideal")
    if _in_local(m * i, x):
        raise NotAMinimalGenerator("element lies in m times the ideal")
    xi = ctx.ideal([x])
    colon_checks = {}
    ok = True
    for n in range(0, nmax + 1):
        good = i.power(n + 1).colon(xi).local_eq(i.power(n))
        colon_checks[n] = good
        if not good:
            ok = False
            break
    series_match = None
    if ok:
        hg = hilbert_function_g(i, nmax)
        qctx = ctx.quotient([x])
        qi = qctx.ideal(list(i.gens))
        hgq = hilbert_function_g(qi, nmax)
        diff = [hg[0]] + [hg[n] - hg[n - 1] for n in range(1, nmax + 1)]
        series_match = diff == hgq
        ok = series_match
    return RegularityEvidence(holds=ok, window=nmax, colon_checks=colon_checks,
                              series_match=series_match)


def check_o_regular(i: Ideal, j: Ideal, x: Polynomial,
                    nmax: int) -> RegularityEvidence:
    """Evidence that the degree-one image of x is regular in F(I):
    m I^n cap (x) = m I^{n-1} (x) for 1 <= n <= nmax.

    Both sides have infinite colength, so the equality is decided in the
    ring itself; that implies the localized statement and is therefore
    conservative evidence.
    """
    ctx = i.context
    m = ctx.maximal_ideal
    if not _in_local(j, x):
        raise NotAMinimalGenerator("element does not lie in the reduction")
    if _in_local(m * j, x):
        raise NotAMinimalGenerator("element lies in m times the reduction")
    xi = ctx.ideal([x])
    eq_checks = {}
    sub_checks = {}
    ok = True
    for n in range(1, nmax + 1):
        inter = (m * i.power(n)).intersect(xi)
        eq = inter.equals((m * i.power(n - 1)) * xi)
        sub = ((m * i.power(n - 1)) * j).contains_ideal(inter)
        eq_checks[n] = eq
        sub_checks[n] = sub
        if not eq:
            ok = False
            break
    return RegularityEvidence(holds=ok, window=nmax,
                              intersection_checks=eq_checks,
                              containment_checks=sub_checks)


def cm_test_fiber(i: Ideal, j: Ideal, rd: ReductionData) -> FiberCMReport:
    """Multiplicity test: F(I) is Cohen-Macaulay iff e0(F) equals the sum of
    the fiber layer lengths up to the reduction number.  The table of
    minimal generator counts against weighted layer sums supplies a
    non-Cohen-Macaulay witness."""
    series = hilbert_series_f(i, rd)
    layers = {n: fiber_layer_length(i, j, n) for n in range(0, rd.r + 2)}
    layer_sum = sum(layers[n] for n in range(0, rd.r + 1))
    mu_table = {}
    witness = None
    for n in range(1, rd.r + 2):
        weighted = sum((k + 1) * layers[n - k] for k in range(0, n + 1))
        mu = mingens(i.power(n))
        mu_table[n] = (mu, weighted)
        if witness is None and mu < weighted:
            witness = n
    verdict = "CM" if series.e0 == layer_sum else "notCM"
    if verdict == "notCM" and witness is None:
        witness = None  # multiplicity gap without a mu-witness in the window
    return FiberCMReport(verdict=verdict, e0=series.e0, layer_sum=layer_sum,
                         mu_table=mu_table, witness=witness)


def _candidate_pool(gens: tuple[Polynomial, ...]):
    """Deterministic search pool: single generators, pairwise sums, then
    small positive integer combinations."""
    seen = set()
    for g in gens:
        if g not in seen:
            seen.add(g)
            yield g
    for a, b in combinations(range(len(gens)), 2):
        s = gens[a] + gens[b]
        if s not in seen:
            seen.add(s)
            yield s
    if len(gens) > 1:
        for coeffs in product((1, 2, 3), repeat=len(gens)):
            s = Polynomial.zero(gens[0].arity)
            for c, g in zip(coeffs, gens):
                s = s + g.scale(c)
            if s not in seen:
                seen.add(s)
                yield s


def depth_lower_bound(target: str, i: Ideal, j: Ideal, nmax: int,
                      rd: ReductionData | None = None) -> DepthCertificate:
    """Greedy certified regular sequence for G(I) or F(I).

    Each certified element quotients the ring context; the search then
    continues on the images.  The empty sequence is a valid bound of 0.
    """
    if target not in ("G", "F"):
        raise ValueError("target must be 'G' or 'F'")
    ctx = i.context
    d = ctx.dimension
    sequence: list[str] = []
    methods: list[str] = []
    cur_ctx, cur_i, cur_j = ctx, i, j
    while len(sequence) < d:
        if cur_ctx.dimension == 0:
            break
        m = cur_ctx.maximal_ideal
        found = None
        for x in _candidate_pool(cur_j.gens):
            pool_ok = (cur_j.local_contains(x)
                       and not (m * cur_j).local_contains(x))
            if not pool_ok:
                continue
            try:
                if target == "G":
                    ev = check_star_regular(cur_i, x, nmax)
                    if ev.holds:
                        found = (x, "colon-check to nmax + series-factorization",
                                 True)
                        break
                else:
                    ev = check_o_regular(cur_i, cur_j, x, nmax)
                    if ev.holds:
                        star = check_star_regular(cur_i, x, nmax)
                        found = (x, "lemma-2.2-equality", star.holds)
                        break
            except NotAMinimalGenerator:
                continue
        if found is None:
            break
        x, method, descend = found
        sequence.append(poly_str(x, ctx.variables))
        methods.append(method)
        if not descend:
            break
        qctx = cur_ctx.quotient([x])
        cur_i = qctx.ideal(list(cur_i.gens))
        cur_j = qctx.ideal(list(cur_j.gens))
        cur_ctx = qctx
    return DepthCertificate(target=target, lower_bound=len(sequence),
                            sequence=sequence, methods=methods)


def good_element_witness(i: Ideal, j: Ideal, fc1: LengthTable,
                         k: int) -> Polynomial | None:
    """Search for x in J - mJ with the layer m I^k cap J not absorbed by
    m I^{k-1} J + (m I^k cap (x)); requires the first nonzero entry of the
    intersection table to sit exactly at index k-1."""
    nz = [n for n, v in fc1.terms.items() if v != 0]
    if not nz or min(nz) != k - 1:
        raise ValueError(
            f"witness search needs the first nonzero intersection length at index {k - 1}")
    ctx = i.context
    m = ctx.maximal_ideal
    top = (m * i.power(k)).intersect(j)
    base = (m * i.power(k - 1)) * j
    for x in _candidate_pool(j.gens):
        if not j.local_contains(x) or (m * j).local_contains(x):
            continue
        xi = ctx.ideal([x])
        denom = base + (m * i.power(k)).intersect(xi)
        if length_quotient(top, denom) != 0:
            return x
    return None


# ---------------------------------------------------------------------------
# the statement checklist

STATEMENT_IDS = ("thm-3.1", "rem-3.2", "thm-3.3", "cor-3.4", "cor-3.5",
                 "thm-4.1", "thm-4.2", "cor-4.3", "cor-4.4", "prop-4.5")


@dataclass
class InstanceInvariants:
    """Everything the checklist consumes, computed once per (R, I, J)."""
    i: Ideal
    j: Ideal
    rd: ReductionData
    d: int
    fc1: LengthTable
    fc2: LengthTable
    lam_hm: LengthTable
    vv_holds: bool
    mi_cap_j_eq_mj: bool          # the n = 1 intersection equality
    g_bound: int                  # certified depth G lower bound
    f_bound: int                  # certified depth F lower bound
    fiber_cm: FiberCMReport


def _conclusion(f_bound: int, needed: int) -> str:
    if needed <= 0 or f_bound >= needed:
        return "verified"
    if f_bound > 0:
        return "lower-bound-only"
    return "unknown"


def _eval_thm31(inv: InstanceInvariants) -> ChecklistVerdict:
    # full intersection condition m I^n cap J = m J I^{n-1} for all n >= 1
    d, g, f = inv.d, inv.g_bound, inv.f_bound
    if inv.mi_cap_j_eq_mj and inv.fc1.total == 0:
        t = max(1, d - g)
        needed = d - t + 1
        return ChecklistVerdict(
            "thm-3.1", True, _conclusion(f, needed),
            f"intersection condition holds for all n; with certified depth "
            f"G >= {d - t}, need depth F >= {needed}, certified {f}")
    return ChecklistVerdict("thm-3.1", False, "unknown",
                            "m I^n cap J = m J I^(n-1) fails for some n")


def _eval_rem32(inv: InstanceInvariants) -> ChecklistVerdict:
    # intersection sum = 1 with G Cohen-Macaulay forces depth F = d-1
    d, f = inv.d, inv.f_bound
    if inv.fc1.total == 1 and inv.vv_holds:
        needed = d - 1
        concl = _conclusion(f, needed)
        if concl == "verified" and inv.fiber_cm.verdict != "notCM":
            concl = "lower-bound-only"
        return ChecklistVerdict(
            "rem-3.2", True, concl,
            f"depth F = {d - 1} expected: certified lower bound {f}, "
            f"fiber cone {inv.fiber_cm.verdict}")
    return ChecklistVerdict("rem-3.2", False, "unknown",
                            "needs intersection sum 1 and G Cohen-Macaulay")


def _eval_thm33(inv: InstanceInvariants) -> ChecklistVerdict:
    # intersection sum = 1, d >= 2; depth F >= d-t for depth G >= d-t
    d, g, f = inv.d, inv.g_bound, inv.f_bound
    if inv.fc1.total == 1 and d >= 2:
        if g >= 1:
            t = max(1, d - g)
            needed = d - t
            return ChecklistVerdict(
                "thm-3.3", True, _conclusion(f, needed),
                f"with certified depth G >= {d - t} (t = {t}), need depth "
                f"F >= {needed}, certified {f}")
        return ChecklistVerdict(
            "thm-3.3", True, "unknown",
            "no certified positive depth for G; cannot instantiate t <= d-1")
    return ChecklistVerdict(
        "thm-3.3", False, "unknown",
        "needs intersection sum exactly 1 and dimension >= 2")


def _eval_cor34(inv: InstanceInvariants) -> ChecklistVerdict:
    # lambda(m I^2/m I J) = 1 and m I^3 = m I^2 J
    d, g, f = inv.d, inv.g_bound, inv.f_bound
    fc2 = inv.fc2.terms
    if fc2.get(1) == 1 and fc2.get(2, 0) == 0 and inv.rd.rm <= 2 and d >= 2:
        if g >= 1:
            t = max(1, d - g)
            needed = d - t
            return ChecklistVerdict("cor-3.4", True, _conclusion(f, needed),
                                    f"need depth F >= {needed}, certified {f}")
        return ChecklistVerdict("cor-3.4", True, "unknown",
                                "no certified positive depth for G")
    return ChecklistVerdict(
        "cor-3.4", False, "unknown",
        "needs lambda(m I^2/m I J) = 1 and m I^3 = m I^2 J")


def _eval_cor35(inv: InstanceInvariants) -> ChecklistVerdict:
    # I^3 = J I^2, lambda(m I^2 cap J/m J I) = 1; split on lambda(I^2/JI)
    d, f = inv.d, inv.f_bound
    lam2 = inv.lam_hm.terms.get(1, 0)
    if inv.rd.r <= 2 and inv.fc1.terms.get(1) == 1 and lam2 in (1, 2):
        needed = d - 1 if lam2 == 1 else d - 2
        return ChecklistVerdict(
            "cor-3.5", True, _conclusion(f, needed),
            f"lambda(I^2/JI) = {lam2}: need depth F >= {needed}, certified {f}")
    return ChecklistVerdict(
        "cor-3.5", False, "unknown",
        "needs I^3 = J I^2, lambda(m I^2 cap J/m J I) = 1 and "
        "lambda(I^2/JI) in {1, 2}")


def _eval_thm41(inv: InstanceInvariants) -> ChecklistVerdict:
    # lambda(m I/m J) = 1; depth F >= d-t+1 for 2 <= t <= d
    d, g, f = inv.d, inv.g_bound, inv.f_bound
    if inv.fc2.terms.get(0) == 1 and d >= 2:
        t = max(2, d - g)
        needed = d - t + 1
        return ChecklistVerdict(
            "thm-4.1", True, _conclusion(f, needed),
            f"with t = {t}, need depth F >= {needed}, certified {f}")
    return ChecklistVerdict("thm-4.1", False, "unknown",
                            "needs lambda(m I/m J) = 1 and dimension >= 2")


def _eval_thm42(inv: InstanceInvariants) -> ChecklistVerdict:
    # total lambda(m I^{n+1}/m J I^n) = 2
    d, g, f = inv.d, inv.g_bound, inv.f_bound
    if inv.fc2.total == 2 and d >= 2:
        t = max(2, d - g)
        needed = d - t + 1
        return ChecklistVerdict(
            "thm-4.2", True, _conclusion(f, needed),
            f"with t = {t}, need depth F >= {needed}, certified {f}")
    return ChecklistVerdict(
        "thm-4.2", False, "unknown",
        "needs total lambda(m I^(n+1)/m J I^n) = 2 and dimension >= 2")


def _eval_cor43(inv: InstanceInvariants) -> ChecklistVerdict:
    # total <= 2 gives positive depth
    f = inv.f_bound
    if inv.fc2.total <= 2:
        return ChecklistVerdict(
            "cor-4.3", True, _conclusion(f, 1),
            f"total {inv.fc2.total} <= 2: need depth F >= 1, certified {f}")
    return ChecklistVerdict(
        "cor-4.3", False, "unknown",
        f"total lambda(m I^(n+1)/m J I^n) = {inv.fc2.total} > 2")


def _eval_cor44(inv: InstanceInvariants) -> ChecklistVerdict:
    # I^3 = I^2 J with three length cases
    d, f = inv.d, inv.f_bound
    fc2 = inv.fc2.terms
    lam2 = inv.lam_hm.terms.get(1, 0)
    if inv.rd.r <= 2:
        case = None
        if lam2 == 1 and fc2.get(1) == 1:
            case, needed = "i", d - 1
        elif lam2 == 2 and fc2.get(1) == 1:
            case, needed = "ii", d - 2
        elif lam2 == 2 and fc2.get(0) == 2 and fc2.get(1, 0) == 0:
            case, needed = "iii", d - 2
        if case is not None:
            return ChecklistVerdict(
                "cor-4.4", True, _conclusion(f, needed),
                f"case ({case}): need depth F >= {needed}, certified {f}")
        return ChecklistVerdict("cor-4.4", False, "unknown",
                                "I^3 = I^2 J but no length case applies")
    return ChecklistVerdict("cor-4.4", False, "unknown", "needs I^3 = I^2 J")


def _eval_prop45(inv: InstanceInvariants) -> ChecklistVerdict:
    # depth G >= d-1 with the two multiplicity-2 cases
    d, g = inv.d, inv.g_bound
    fc2 = inv.fc2.terms
    case = None
    if fc2.get(0) == 1 and fc2.get(1) == 1 and inv.rd.rm <= 2:
        case = 1
    elif fc2.get(0) == 2 and fc2.get(1, 0) == 0 and inv.rd.rm <= 1:
        case = 2
    if case is None or d < 2:
        return ChecklistVerdict("prop-4.5", False, "unknown",
                                "length hypotheses of neither case hold")
    if g < d - 1:
        return ChecklistVerdict(
            "prop-4.5", True, "unknown",
            f"depth G >= {d - 1} not certified (bound {g})")
    m = inv.i.context.maximal_ideal
    if case == 1:
        rhs = (m * inv.i.power(2)).intersect(inv.j * inv.i).local_eq(
            (m * inv.i) * inv.j)
        lhs = inv.fiber_cm.verdict == "CM"
        if lhs != rhs:
            raise InternalConsistencyError(
                "fiber-cone CM test disagrees with the m I^2 cap JI criterion")
        return ChecklistVerdict(
            "prop-4.5", True, "verified",
            f"F(I) {'is' if lhs else 'is not'} Cohen-Macaulay and "
            f"m I^2 cap JI {'=' if rhs else '!='} m I J agree")
    if inv.fiber_cm.verdict != "CM":
        raise InternalConsistencyError(
            "case-2 hypotheses certified but fiber cone not Cohen-Macaulay")
    return ChecklistVerdict(
        "prop-4.5", True, "verified",
        "lambda(m I/m J) = 2 with m I^2 = m J I: fiber cone Cohen-Macaulay")


_EVALUATORS = {
    "thm-3.1": _eval_thm31, "rem-3.2": _eval_rem32, "thm-3.3": _eval_thm33,
    "cor-3.4": _eval_cor34, "cor-3.5": _eval_cor35, "thm-4.1": _eval_thm41,
    "thm-4.2": _eval_thm42, "cor-4.3": _eval_cor43, "cor-4.4": _eval_cor44,
    "prop-4.5": _eval_prop45,
}


def theorem_checklist(inv: InstanceInvariants,
                      jobs: int = 1) -> list[ChecklistVerdict]:
    """Evaluate every tracked statement on the instance.

    Hypotheses are evaluated exactly where they are length conditions; the
    certified depth-G lower bound stands in for depth hypotheses, so a
    too-weak certificate yields 'unknown', never a guess.  A true
    hypothesis can never be reported refuted.  Items are independent; with
    jobs > 1 they run on a thread pool, output order fixed by STATEMENT_IDS.
    """
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(lambda sid: _EVALUATORS[sid](inv),
                                STATEMENT_IDS))
    else:
        out = [_EVALUATORS[sid](inv) for sid in STATEMENT_IDS]
    for v in out:
        if v.hypothesis_holds and v.conclusion == "refuted-impossible":
            raise InternalConsistencyError(
                f"{v.statement_id}: hypothesis holds but conclusion refuted")
    return out

"""Buchberger's algorithm, normal forms and staircase combinatorics.

The engine is deliberately classical: normal pair-selection strategy,
coprime and chain criteria, full auto-reduction, monic output.  A reduced
Groebner basis is unique for a fixed ideal and order, which the rest of
the package relies on for caching and determinism.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heappush, heappop
from itertools import combinations
from typing import Sequence

from .poly import (
    GREVLEX, ArityError, Monomial, MonomialOrder, Polynomial,
    mono_coprime, mono_degree, mono_div, mono_divides, mono_lcm, mono_mul,
)

DEFAULT_DEGREE_CAP = 60


class DegreeCapExceeded(RuntimeError):
    """A Groebner computation exceeded the configured total-degree cap."""


class DimensionalityError(ValueError):
    """Staircase is infinite where a finite one was required."""


def _neg_key(k):
    if isinstance(k, tuple):
        return tuple(_neg_key(x) for x in k)
    return -k


class ReducedGB:
    """Reduced Groebner basis: monic, auto-reduced, canonically sorted."""

    __slots__ = ("arity", "order", "basis", "leading")

    def __init__(self, arity: int, order: MonomialOrder,
                 basis: Sequence[Polynomial]):
        self.arity = arity
        self.order = order
        self.basis = tuple(sorted(basis, key=lambda p: order.key(p.leading_monomial(order))))
        self.leading = tuple(p.leading_monomial(order) for p in self.basis)

    def is_zero_ideal(self) -> bool:
        return not self.basis

    def is_unit_ideal(self) -> bool:
        return len(self.basis) == 1 and self.leading[0] == (0,) * self.arity

    def __eq__(self, other):
        return (isinstance(other, ReducedGB) and self.arity == other.arity
                and self.order == other.order and self.basis == other.basis)

    def __hash__(self):
        return hash((self.arity, self.order, self.basis))

    def __repr__(self):
        return f"ReducedGB({len(self.basis)} elements, {self.order!r})"


def _reduce_dict(work: dict, divisors, order: MonomialOrder,
                 cap: int) -> dict:
    """Fully reduce a term dict against (lead mono, terms) divisors.

    Returns the remainder dict; no remainder monomial is divisible by any
    divisor lead monomial.
    """
    result: dict = {}
    heap: list = []
    for m in work:
        heappush(heap, (_neg_key(order.key(m)), m))
    while heap:
        _, m = heappop(heap)
        c = work.get(m)
        if not c:
            continue
        if mono_degree(m) > cap:
            raise DegreeCapExceeded(
                f"monomial of degree {mono_degree(m)} exceeds cap {cap}")
        hit = None
        for lm, terms in divisors:
            if mono_divides(lm, m):
                hit = (lm, terms)
                break
        if hit is None:
            result[m] = c
            del work[m]
            continue
        lm, terms = hit
        q = mono_div(m, lm)
        # divisors are monic: leading coefficient 1
        for gm, gc in terms:
            mm = mono_mul(q, gm)
            nc = work.get(mm, Fraction(0)) - c * gc
            if nc:
                if mm not in work:
                    heappush(heap, (_neg_key(order.key(mm)), mm))
                work[mm] = nc
            else:
                work.pop(mm, None)
    return result


def normalform(f: Polynomial, gb: ReducedGB) -> Polynomial:
    """The unique remainder of f modulo the ideal of gb."""
    if f.arity != gb.arity:
        raise ArityError(f"arities differ: {f.arity} vs {gb.arity}")
    if f.is_zero() or gb.is_zero_ideal():
        return f
    divisors = [(p.leading_monomial(gb.order), p.terms) for p in gb.basis]
    rem = _reduce_dict(f.as_dict(), divisors, gb.order, cap=max(
        DEFAULT_DEGREE_CAP, f.total_degree() + DEFAULT_DEGREE_CAP))
    return Polynomial.from_dict(f.arity, rem)


def _minimalize_monomials(monos: Sequence[Monomial]) -> list[Monomial]:
    out: list[Monomial] = []
    for m in sorted(set(monos), key=lambda m: (mono_degree(m), m)):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _interreduce(polys: list[Polynomial], order: MonomialOrder,
                 arity: int, cap: int) -> list[Polynomial]:
    """Reduce every element against the others until stable; monic output."""
    polys = [p.monic(order) for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        polys.sort(key=lambda p: order.key(p.leading_monomial(order)))
        for i in range(len(polys)):
            others = [(p.leading_monomial(order), p.terms)
                      for j, p in enumerate(polys) if j != i and not p.is_zero()]
            if not others:
                continue
            p = polys[i]
            if p.is_zero():
                continue
            rem = _reduce_dict(p.as_dict(), others, order, cap)
            q = Polynomial.from_dict(arity, rem)
            if q != p:
                polys[i] = q.monic(order) if not q.is_zero() else q
                changed = True
        polys = [p for p in polys if not p.is_zero()]
    return polys


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX,
               arity: int | None = None,
               degree_cap: int = DEFAULT_DEGREE_CAP) -> ReducedGB:
    """Reduced Groebner basis of the ideal generated by gens.

    All-zero input yields the zero-ideal sentinel (empty basis).  Output is
    deterministic: independent of generator order.
    """
    gens = [g for g in gens if not g.is_zero()]
    if arity is None:
        if not gens:
            raise ValueError("cannot infer arity from an all-zero generator list")
        arity = gens[0].arity
    for g in gens:
        if g.arity != arity:
            raise ArityError("mixed arities in generator list")
    if not gens:
        return ReducedGB(arity, order, ())

    if all(g.is_monomial() for g in gens):
        monos = _minimalize_monomials([g.terms[0][0] for g in gens])
        return ReducedGB(arity, order, [Polynomial.monomial(m) for m in monos])

    G = _interreduce(list(gens), order, arity, degree_cap)
    if any(len(p.terms) == 1 and p.leading_monomial(order) == (0,) * arity
           for p in G):
        return ReducedGB(arity, order, [Polynomial.one(arity)])

    lms = [p.leading_monomial(order) for p in G]
    pairs: list = []
    done: set[tuple[int, int]] = set()

    def push_pair(i: int, j: int):
        l = mono_lcm(lms[i], lms[j])
        heappush(pairs, ((mono_degree(l), order.key(l), i, j), l, i, j))

    for i, j in combinations(range(len(G)), 2):
        push_pair(i, j)

    while pairs:
        _, l, i, j = heappop(pairs)
        done.add((i, j))
        if mono_coprime(lms[i], lms[j]):
            continue
        if mono_degree(l) > degree_cap:
            raise DegreeCapExceeded(
                f"S-pair lcm degree {mono_degree(l)} exceeds cap {degree_cap}")
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(lms[k], l):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        fi, fj = G[i], G[j]
        s = (fi.mul_term(mono_div(l, lms[i]), 1)
             - fj.mul_term(mono_div(l, lms[j]), 1))
        if s.is_zero():
            continue
        divisors = [(lms[k], G[k].terms) for k in range(len(G))]
        rem = _reduce_dict(s.as_dict(), divisors, order, degree_cap)
        h = Polynomial.from_dict(arity, rem)
        if h.is_zero():
            continue
        h = h.monic(order)
        if len(h.terms) == 1 and h.leading_monomial(order) == (0,) * arity:
            return ReducedGB(arity, order, [Polynomial.one(arity)])
        G.append(h)
        lms.append(h.leading_monomial(order))
        new = len(G) - 1
        for k in range(new):
            push_pair(k, new)

    # minimal generators of the leading ideal, then tail-reduce
    keep = []
    for i, lm in enumerate(lms):
        if not any(j != i and mono_divides(lms[j], lm)
                   and (lms[j] != lm or j < i) for j in range(len(G))):
            keep.append(i)
    reduced = []
    kept = [(lms[i], G[i]) for i in keep]
    for idx, (lm, p) in enumerate(kept):
        others = [(l2, q.terms) for jdx, (l2, q) in enumerate(kept) if jdx != idx]
        rem = _reduce_dict(p.as_dict(), others, order, degree_cap)
        q = Polynomial.from_dict(arity, rem)
        reduced.append(q.monic(order))
    return ReducedGB(arity, order, reduced)


def is_zero_dimensional(gb: ReducedGB) -> bool:
    """True iff every variable appears as a pure power among leading monomials."""
    if gb.is_unit_ideal():
        return True
    for i in range(gb.arity):
        if not any(m[i] > 0 and all(m[j] == 0 for j in range(gb.arity) if j != i)
                   for m in gb.leading):
            return False
    return True


def _pure_power_bounds(gb: ReducedGB) -> list[int]:
    bounds = []
    for i in range(gb.arity):
        pure = [m[i] for m in gb.leading
                if m[i] > 0 and all(m[j] == 0 for j in range(gb.arity) if j != i)]
        if not pure:
            raise DimensionalityError(
                f"no pure power of variable {i} in the leading ideal")
        bounds.append(min(pure))
    return bounds


def standard_monomials(gb: ReducedGB) -> list[Monomial]:
    """All monomials outside the staircase; requires zero-dimensionality."""
    if gb.is_unit_ideal():
        return []
    if gb.arity == 0:
        return [()] if gb.is_zero_ideal() else []
    bounds = _pure_power_bounds(gb)
    out: list[Monomial] = []

    def rec(prefix: tuple, i: int):
        if i == gb.arity:
            m = prefix
            if not any(mono_divides(lm, m) for lm in gb.leading):
                out.append(m)
            return
        for e in range(bounds[i]):
            rec(prefix + (e,), i + 1)

    rec((), 0)
    return out


def count_standard_monomials(gb: ReducedGB) -> int:
    """Vector-space dimension of the quotient by the ideal."""
    return len(standard_monomials(gb))


def max_standard_degree(gb: ReducedGB) -> int:
    """Largest total degree of a standard monomial; -1 for the unit ideal."""
    monos = standard_monomials(gb)
    if not monos:
        return -1
    return max(mono_degree(m) for m in monos)


def krull_dimension(gb: ReducedGB) -> int:
    """Dimension of the quotient ring: size of a maximum variable subset
    independent modulo the leading-monomial ideal."""
    if gb.is_unit_ideal():
        return 0
    n = gb.arity
    supports = [frozenset(i for i in range(n) if m[i] > 0) for m in gb.leading]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            sset = set(S)
            if not any(sup and sup <= sset for sup in supports):
                return size
    return 0

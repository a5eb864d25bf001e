"""Numeric invariants: lengths, reduction numbers, length-sum families,
Hilbert series of the associated graded ring G(I) and the fiber cone F(I).

All lengths are computed as colength differences on origin-localized
representatives; there is no second path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .ideals import Ideal, NotASubmodule

DEFAULT_REDUCTION_CAP = 25

FAMILIES = ("Delta", "LambdaHM", "VV", "FC1", "FC2")


class NotAReductionWithinCap(ValueError):
    """No stabilization I^{n+1} = J I^n found below the search cap."""


class InternalConsistencyError(RuntimeError):
    """A length term that is guaranteed to vanish came out nonzero."""


class WindowTooSmall(ValueError):
    """Hilbert numerator failed to terminate within the computed window."""


@dataclass(frozen=True)
class ReductionData:
    r: int
    rm: int
    cap: int


@dataclass(frozen=True)
class HilbertSeries:
    """h(t) / (1-t)^denomexp with integer numerator coefficients."""

    numerator: tuple
    denomexp: int

    @property
    def e0(self) -> int:
        return sum(self.numerator)

    @property
    def e1(self) -> int:
        return sum(j * c for j, c in enumerate(self.numerator))


@dataclass(frozen=True)
class LengthTable:
    family: str
    terms: dict = field(hash=False)

    @property
    def total(self) -> int:
        return sum(self.terms.values())


def colength_local(a: Ideal) -> int:
    """λ(R/a) in the localization at the origin."""
    return a.colength()


def length_quotient(a: Ideal, b: Ideal) -> int:
    """λ(a/b) for b ⊆ a, both of finite local colength."""
    if not a.local_contains_ideal(b):
        raise NotASubmodule("second ideal is not locally contained in the first")
    return b.colength() - a.colength()


def mingens(a: Ideal) -> int:
    """Minimal number of generators, λ(a/ma)."""
    m = a.context.maximal_ideal
    return length_quotient(a, m * a)


def reduction_data(i: Ideal, j: Ideal,
                   cap: int = DEFAULT_REDUCTION_CAP) -> ReductionData:
    """Least r with I^{r+1} = J I^r and least rm with m I^{rm+1} = m J I^rm,
    both as local ideal equalities.  Certifies that J is a reduction."""
    i._check(j)
    if cap < 1:
        raise ValueError("reduction search cap must be at least 1")
    if not i.local_contains_ideal(j):
        raise NotASubmodule("J is not locally contained in I")
    m = i.context.maximal_ideal
    mj = m * j
    r = rm = None
    for n in range(0, cap + 1):
        if r is None and i.power(n + 1).local_eq(j * i.power(n)):
            r = n
        if rm is None and (m * i.power(n + 1)).local_eq(mj * i.power(n)):
            rm = n
        if r is not None and rm is not None:
            return ReductionData(r=r, rm=rm, cap=cap)
    raise NotAReductionWithinCap(
        f"no reduction stabilization found for n <= {cap}")


def minimal_reduction_check(i: Ideal, j: Ideal) -> bool:
    """J minimally generated by d elements (the analytic spread for an
    ideal primary to the maximal ideal)."""
    return mingens(j) == i.context.dimension


def _family_bounds(family: str, rd: ReductionData) -> tuple[int, int]:
    """(first index, last guaranteed-nonvanishing index)."""
    if family in ("Delta", "VV"):
        return (1, rd.r)
    if family == "LambdaHM":
        # terms vanish beyond r, not rm: lambda(I^{p+1}/I^p J) = 0 iff p >= r
        return (0, rd.r)
    if family == "FC1":
        return (1, rd.rm)
    if family == "FC2":
        return (0, rd.rm)
    raise ValueError(f"unknown length-sum family {family!r}")


def _family_term(family: str, i: Ideal, j: Ideal, n: int) -> int:
    m = i.context.maximal_ideal
    if family == "Delta":
        return length_quotient(i.power(n + 1).intersect(j), i.power(n) * j)
    if family == "VV":
        return length_quotient(i.power(n).intersect(j), j * i.power(n - 1))
    if family == "LambdaHM":
        return length_quotient(i.power(n + 1), i.power(n) * j)
    if family == "FC1":
        return length_quotient((m * i.power(n + 1)).intersect(j),
                               (m * j) * i.power(n))
    if family == "FC2":
        return length_quotient(m * i.power(n + 1), (m * j) * i.power(n))
    raise ValueError(f"unknown length-sum family {family!r}")


def length_sum(family: str, i: Ideal, j: Ideal,
               rd: ReductionData) -> LengthTable:
    """Per-term table of one of the five length-sum families, including a
    safety term one step past the vanishing bound (it must be zero)."""
    lo, hi = _family_bounds(family, rd)
    terms = {}
    for n in range(lo, hi + 1):
        terms[n] = _family_term(family, i, j, n)
    safety = _family_term(family, i, j, hi + 1)
    if safety != 0:
        raise InternalConsistencyError(
            f"{family} safety term at index {hi + 1} is {safety}, expected 0")
    terms[hi + 1] = 0
    return LengthTable(family=family, terms=terms)


def _numerator(values: list[int], denomexp: int, window: int) -> tuple:
    """Multiply the truncated series by (1-t)^denomexp and check the tail."""
    num = [sum((-1) ** k * comb(denomexp, k) * values[n - k]
               for k in range(0, min(n, denomexp) + 1))
           for n in range(window + 1)]
    if window < 1 or num[window] != 0 or num[window - 1] != 0:
        raise WindowTooSmall(
            f"Hilbert numerator did not terminate within window {window}")
    while num and num[-1] == 0:
        num.pop()
    return tuple(num)


def hilbert_series_g(i: Ideal, rd: ReductionData,
                     window: int | None = None) -> HilbertSeries:
    """Hilbert series of G(I) = ⊕ I^n/I^{n+1}, as h(t)/(1-t)^d."""
    d = i.context.dimension
    w = window if window is not None else rd.r + d + 2
    col = [0] + [i.power(n).colength() for n in range(1, w + 2)]
    values = [col[n + 1] - col[n] for n in range(w + 1)]
    return HilbertSeries(numerator=_numerator(values, d, w), denomexp=d)


def hilbert_function_g(i: Ideal, window: int) -> list[int]:
    """λ(I^n/I^{n+1}) for n = 0..window."""
    col = [0] + [i.power(n).colength() for n in range(1, window + 2)]
    return [col[n + 1] - col[n] for n in range(window + 1)]


def hilbert_series_f(i: Ideal, rd: ReductionData,
                     window: int | None = None) -> HilbertSeries:
    """Hilbert series of F(I) = ⊕ I^n/mI^n: h_F(n) = μ(I^n)."""
    d = i.context.dimension
    w = window if window is not None else rd.r + d + 2
    values = [mingens(i.power(n)) for n in range(w + 1)]
    return HilbertSeries(numerator=_numerator(values, d, w), denomexp=d)


def hilbert_coefficients(series: HilbertSeries) -> tuple[int, int]:
    """(e0, e1): numerator at 1 and its derivative at 1."""
    return series.e0, series.e1


def fiber_layer_length(i: Ideal, j: Ideal, n: int) -> int:
    """λ(I^n / (J I^{n-1} + m I^n)); the n = 0 layer has length 1."""
    if n == 0:
        return 1
    m = i.context.maximal_ideal
    a = i.power(n)
    return length_quotient(a, j * i.power(n - 1) + m * a)

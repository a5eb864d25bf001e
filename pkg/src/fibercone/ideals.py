"""Ideal algebra over a (possibly quotient) ring localized at the origin.

Every ideal of R = P/K is represented by a preimage generator list in the
polynomial ring P; each Groebner computation adjoins the presentation K.
Localization at the origin is handled by `local_part`: the stabilized ideal
A + m^N, which equals the contraction of A from the local ring whenever
that contraction has finite colength.
"""

from __future__ import annotations

import hashlib
import json
import os
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Optional, Sequence

from .poly import (GREVLEX, MonomialOrder, Polynomial, mono_lcm, poly_parse,
                   poly_str)
from .groebner import (
    DEFAULT_DEGREE_CAP, ReducedGB, buchberger, count_standard_monomials,
    is_zero_dimensional, krull_dimension, max_standard_degree, normalform,
    _interreduce,
)

DEFAULT_LOCAL_CAP = 60

CACHE_DIR_ENV = "FIBERCONE_CACHE_DIR"


class ContextMismatch(ValueError):
    """Operands belong to different ring contexts."""


class NotLocallyFinite(ValueError):
    """No stabilization A + m^N = A + m^{N+1} below the cap."""


class DegenerateDivisor(ZeroDivisionError):
    """Colon by the zero ideal."""


class NotASubmodule(ValueError):
    """A length quotient was requested for a non-inclusion."""


def _order_tag(order: MonomialOrder) -> str:
    return f"{order.kind}:{order.block}"


class RingContext:
    """Ambient variables, optional presentation ideal K, the maximal ideal m."""

    def __init__(self, variables: Sequence[str],
                 presentation: Sequence[Polynomial] = (),
                 cache_dir: Optional[str] = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP,
                 local_cap: int = DEFAULT_LOCAL_CAP):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.arity = len(self.variables)
        self.presentation = tuple(p for p in presentation if not p.is_zero())
        for p in self.presentation:
            if p.arity != self.arity:
                raise ContextMismatch("presentation generator has wrong arity")
        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_DIR_ENV) or None
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.degree_cap = degree_cap
        self.local_cap = local_cap
        self._gb_cache: dict = {}
        self._dimension: Optional[int] = None
        self._monomial_ideal_cache: dict[int, tuple[Polynomial, ...]] = {}
        self.cache_hits = 0
        self.cache_misses = 0

    # -- basic objects

    def parse(self, text: str) -> Polynomial:
        return poly_parse(text, self.variables)

    def ideal(self, gens: Sequence[Polynomial] | Sequence[str]) -> "Ideal":
        polys = [self.parse(g) if isinstance(g, str) else g for g in gens]
        return Ideal(self, polys)

    @property
    def maximal_ideal(self) -> "Ideal":
        return self.ideal([Polynomial.variable(self.arity, i)
                           for i in range(self.arity)])

    @property
    def dimension(self) -> int:
        """Krull dimension of P/K."""
        if self._dimension is None:
            if not self.presentation:
                self._dimension = self.arity
            else:
                self._dimension = krull_dimension(self.gb(()))
        return self._dimension

    def degree_monomials(self, n: int) -> tuple[Polynomial, ...]:
        """Generators of m^n: all monomials of total degree n."""
        if n not in self._monomial_ideal_cache:
            monos = combinations_with_replacement(range(self.arity), n)
            out = []
            for combo in monos:
                e = [0] * self.arity
                for i in combo:
                    e[i] += 1
                out.append(Polynomial.monomial(tuple(e)))
            self._monomial_ideal_cache[n] = tuple(out)
        return self._monomial_ideal_cache[n]

    def quotient(self, extra: Sequence[Polynomial]) -> "RingContext":
        """A new context presenting R/(extra): K grows, caches restart."""
        ctx = RingContext(self.variables,
                          tuple(self.presentation) + tuple(extra),
                          cache_dir=str(self.cache_dir) if self.cache_dir else None,
                          degree_cap=self.degree_cap, local_cap=self.local_cap)
        if ctx.cache_dir is None and self.cache_dir is not None:
            ctx.cache_dir = self.cache_dir
        return ctx

    # -- the central Groebner cache

    def _digest(self, gens: tuple[Polynomial, ...], order: MonomialOrder) -> str:
        h = hashlib.sha256()
        payload = {
            "variables": list(self.variables),
            "presentation": sorted(poly_str(p, self.variables) for p in self.presentation),
            "generators": sorted(poly_str(p, self.variables) for p in gens),
            "order": _order_tag(order),
        }
        h.update(json.dumps(payload, separators=(",", ":")).encode())
        return h.hexdigest()

    def gb(self, gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> ReducedGB:
        """Reduced GB of (gens + K) in P.  In-memory and on-disk cached."""
        gens = tuple(gens)
        key = (frozenset(gens), order)
        hit = self._gb_cache.get(key)
        if hit is not None:
            self.cache_hits += 1
            return hit
        digest = None
        if self.cache_dir is not None:
            digest = self._digest(gens, order)
            path = self.cache_dir / digest[:2] / (digest + ".json")
            if path.is_file():
                data = json.loads(path.read_text())
                basis = [poly_parse(s, self.variables) for s in data["basis"]]
                gb = ReducedGB(self.arity, order, basis)
                self._gb_cache[key] = gb
                self.cache_hits += 1
                return gb
        self.cache_misses += 1
        gb = buchberger(list(gens) + list(self.presentation), order,
                        arity=self.arity, degree_cap=self.degree_cap)
        self._gb_cache[key] = gb
        if self.cache_dir is not None:
            path = self.cache_dir / digest[:2] / (digest + ".json")
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(
                {"basis": [poly_str(p, self.variables) for p in gb.basis]},
                indent=0))
            tmp.replace(path)
        return gb

    def __repr__(self):
        k = f", K={len(self.presentation)} gens" if self.presentation else ""
        return f"RingContext({'/'.join(self.variables)}{k})"


class Ideal:
    """Generator list plus cached Groebner bases and local representative."""

    def __init__(self, context: RingContext, gens: Sequence[Polynomial],
                 _interreduced: bool = False):
        self.context = context
        polys = [g for g in gens if not g.is_zero()]
        for g in polys:
            if g.arity != context.arity:
                raise ContextMismatch("generator arity does not match the ring")
        if polys and not _interreduced:
            polys = _interreduce(polys, GREVLEX, context.arity,
                                 context.degree_cap)
        self.gens = tuple(polys)
        self._local: Optional[tuple["Ideal", int]] = None
        self._powers: dict[int, "Ideal"] = {}
        self._colength: Optional[int] = None

    # -- plumbing

    def _check(self, other: "Ideal"):
        if self.context is not other.context:
            raise ContextMismatch("ideals live in different ring contexts")

    def gb(self, order: MonomialOrder = GREVLEX) -> ReducedGB:
        return self.context.gb(self.gens, order)

    def is_zero(self) -> bool:
        return not self.gens and not self.context.presentation

    def __repr__(self):
        gens = ", ".join(poly_str(g, self.context.variables) for g in self.gens)
        return f"Ideal({gens})"

    # -- algebra

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.context, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        if not self.gens or not other.gens:
            return Ideal(self.context, ())
        prods = [a * b for a in self.gens for b in other.gens]
        return Ideal(self.context, prods)

    def power(self, n: int) -> "Ideal":
        if n < 0:
            raise ValueError("negative ideal power")
        if n not in self._powers:
            if n == 0:
                r = Ideal(self.context, (Polynomial.one(self.context.arity),),
                          _interreduced=True)
            elif n == 1:
                r = self
            else:
                r = self.power(n - 1) * self
            self._powers[n] = r
        return self._powers[n]

    def intersect(self, other: "Ideal") -> "Ideal":
        """A cap B via one auxiliary variable and a block order."""
        self._check(other)
        K = self.context.presentation
        return self._intersect_raw(self.gens + K, other.gens + K)

    def _intersect_raw(self, left: tuple[Polynomial, ...],
                       right: tuple[Polynomial, ...]) -> "Ideal":
        ctx = self.context
        if not left or not right:
            return Ideal(ctx, ())
        if all(f.is_monomial() for f in left) and all(
                g.is_monomial() for g in right):
            monos = [mono_lcm(f.terms[0][0], g.terms[0][0])
                     for f in left for g in right]
            return Ideal(ctx, [Polynomial.monomial(m) for m in monos])
        arity = ctx.arity + 1
        t = Polynomial.variable(arity, 0)
        one = Polynomial.one(arity)
        gens = [t * f.extend(1) for f in left]
        gens += [(one - t) * g.extend(1) for g in right]
        order = MonomialOrder("block", 1)
        # the auxiliary-variable construction doubles degrees by design, so
        # the runaway safeguard scales with the input here
        maxdeg = max(p.total_degree() for p in left + right)
        cap = max(ctx.degree_cap, 2 * maxdeg + 2)
        gb = buchberger(gens, order, arity=arity, degree_cap=cap)
        kept = [p.contract(1) for p in gb.basis
                if all(m[0] == 0 for m, _ in p.terms)]
        return Ideal(ctx, kept)

    def colon(self, other: "Ideal") -> "Ideal":
        """{f : f*other ⊆ self}, computed generator by generator."""
        self._check(other)
        if not other.gens:
            raise DegenerateDivisor("colon by the zero ideal")
        result: Optional[Ideal] = None
        K = self.context.presentation
        for g in other.gens:
            inter = self._intersect_raw(self.gens + K, (g,))
            quots = [f.divide_exact(g) for f in inter.gens]
            part = Ideal(self.context, quots)
            result = part if result is None else result.intersect(part)
        return result

    # -- membership and comparisons (global, in R = P/K)

    def contains(self, f: Polynomial) -> bool:
        return normalform(f, self.gb()).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        """other ⊆ self."""
        self._check(other)
        gb = self.gb()
        return all(normalform(g, gb).is_zero() for g in other.gens)

    def leq(self, other: "Ideal") -> bool:
        """self ⊆ other."""
        return other.contains_ideal(self)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    # -- localization at the origin

    def local_part(self) -> tuple["Ideal", int]:
        """The origin-primary component A + m^N and its stabilization exponent.

        N is minimal with A + m^N = A + m^{N+1}; computations that measure
        colengths or decide local equalities all run on this representative.
        """
        if self._local is not None:
            return self._local
        ctx = self.context
        homogeneous = (all(g.is_homogeneous() for g in self.gens)
                       and all(k.is_homogeneous() for k in ctx.presentation))
        if homogeneous:
            gb0 = ctx.gb(self.gens)
            if gb0.is_unit_ideal():
                self._local = (self, 0)
                return self._local
            if not is_zero_dimensional(gb0):
                raise NotLocallyFinite(
                    "homogeneous ideal is not primary to the origin")
            n = max_standard_degree(gb0) + 1
            self._local = (self, n)
            return self._local
        prev = None
        prev_n = None
        for n in range(1, ctx.local_cap + 2):
            cur = ctx.gb(tuple(_interreduce(
                list(self.gens) + list(ctx.degree_monomials(n)),
                GREVLEX, ctx.arity, ctx.degree_cap)))
            if prev is not None and cur == prev:
                rep = Ideal(ctx, prev.basis, _interreduced=True)
                rep._local = (rep, prev_n)
                self._local = (rep, prev_n)
                return self._local
            prev, prev_n = cur, n
        raise NotLocallyFinite(
            f"no stabilization of A + m^N for N <= {ctx.local_cap}")

    def local_gb(self) -> ReducedGB:
        rep, _ = self.local_part()
        return self.context.gb(rep.gens)

    def local_contains(self, f: Polynomial) -> bool:
        return normalform(f, self.local_gb()).is_zero()

    def local_contains_ideal(self, other: "Ideal") -> bool:
        """other ⊆ self in the localization at the origin."""
        self._check(other)
        gb = self.local_gb()
        return all(normalform(g, gb).is_zero() for g in other.gens)

    def local_eq(self, other: "Ideal") -> bool:
        """Equality in the localization: equal colengths plus one containment.

        If exactly one side has infinite local colength the ideals differ;
        if both do, equality in R itself decides (it implies the local one).
        """
        self._check(other)
        try:
            c1 = self.colength()
        except NotLocallyFinite:
            c1 = None
        try:
            c2 = other.colength()
        except NotLocallyFinite:
            c2 = None
        if (c1 is None) != (c2 is None):
            return False
        if c1 is None:
            return self.equals(other)
        if c1 != c2:
            return False
        return self.local_contains_ideal(other)

    def colength(self) -> int:
        """λ(R_local / self); requires finite local colength."""
        if self._colength is None:
            gb = self.local_gb()
            if not is_zero_dimensional(gb):
                raise NotLocallyFinite("local representative is not zero-dimensional")
            self._colength = count_standard_monomials(gb)
        return self._colength

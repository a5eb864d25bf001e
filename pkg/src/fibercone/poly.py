"""Exact multivariate polynomial arithmetic over Q.

Monomials are plain tuples of non-negative integer exponents; the tuple
length is the ring arity.  Polynomials keep their terms in a canonical
descending grevlex sequence, so equal polynomials compare equal regardless
of which monomial order a Groebner run is using.  Leading terms with
respect to other orders are computed on demand.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Monomial = tuple  # tuple[int, ...]


class ArityError(ValueError):
    """Operands live in rings with different numbers of variables."""


class PolyParseError(ValueError):
    """Malformed polynomial text."""


# ---------------------------------------------------------------------------
# monomial helpers


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; requires b | a."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError(f"{b} does not divide {a}")
    return q


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


class MonomialOrder:
    """A total multiplicative monomial order.

    kind is one of 'grevlex', 'lex' or 'block'.  A block order eliminates
    the first `block` variables: monomials are compared grevlex on the
    leading block first, then grevlex on the tail.
    """

    __slots__ = ("kind", "block")

    def __init__(self, kind: str = "grevlex", block: int = 0):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "block" and block < 1:
            raise ValueError("block order needs a positive leading block size")
        self.kind = kind
        self.block = block if kind == "block" else 0

    def key(self, m: Monomial):
        """Sort key: ascending in this order."""
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        b = self.block
        return (_grevlex_key(m[:b]), _grevlex_key(m[b:]))

    def cmp(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b):
            raise ArityError(f"monomial arities differ: {len(a)} vs {len(b)}")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and self.kind == other.kind and self.block == other.block)

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {self.block})"
        return f"MonomialOrder({self.kind!r})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """-1, 0 or 1 as a <, =, > b under the order."""
    return order.cmp(a, b)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable polynomial with exact rational coefficients.

    The zero polynomial has an empty term tuple.
    """

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: Iterable[tuple[Monomial, Fraction]] = (),
                 _canonical: bool = False):
        self.arity = arity
        if _canonical:
            self.terms = tuple(terms)
        else:
            acc: dict[Monomial, Fraction] = {}
            for m, c in terms:
                if len(m) != arity:
                    raise ArityError(f"monomial {m} has arity {len(m)}, expected {arity}")
                c = Fraction(c)
                acc[m] = acc.get(m, Fraction(0)) + c
            self.terms = tuple(sorted(((m, c) for m, c in acc.items() if c),
                                      key=lambda t: _grevlex_key(t[0]), reverse=True))
        self._hash = None

    # -- construction helpers

    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls(arity, (), _canonical=True)

    @classmethod
    def one(cls, arity: int) -> "Polynomial":
        return cls(arity, (((0,) * arity, Fraction(1)),), _canonical=True)

    @classmethod
    def constant(cls, arity: int, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return cls.zero(arity)
        return cls(arity, (((0,) * arity, c),), _canonical=True)

    @classmethod
    def variable(cls, arity: int, i: int) -> "Polynomial":
        m = tuple(1 if j == i else 0 for j in range(arity))
        return cls(arity, ((m, Fraction(1)),), _canonical=True)

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return cls.zero(len(m))
        return cls(len(m), ((tuple(m), c),), _canonical=True)

    @classmethod
    def from_dict(cls, arity: int, d: dict) -> "Polynomial":
        terms = tuple(sorted(((m, c) for m, c in d.items() if c),
                             key=lambda t: _grevlex_key(t[0]), reverse=True))
        return cls(arity, terms, _canonical=True)

    # -- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict:
        return dict(self.terms)

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(m) for m, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Monomial, Fraction]]:
        """Terms in strictly descending order under the given order."""
        return sorted(self.terms, key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=lambda t: order.key(t[0]))

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        if c == 1:
            return self
        return self.scale(Fraction(1) / c)

    # -- arithmetic

    def _check(self, other: "Polynomial"):
        if self.arity != other.arity:
            raise ArityError(f"arities differ: {self.arity} vs {other.arity}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        d = dict(self.terms)
        for m, c in other.terms:
            nc = d.get(m, Fraction(0)) + c
            if nc:
                d[m] = nc
            else:
                d.pop(m, None)
        return Polynomial.from_dict(self.arity, d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.arity, tuple((m, -c) for m, c in self.terms),
                          _canonical=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.arity)
        return Polynomial(self.arity, tuple((m, c * k) for m, k in self.terms),
                          _canonical=True)

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.arity)
        terms = tuple((mono_mul(mm, m), c * k) for mm, k in self.terms)
        # multiplying by a fixed monomial preserves grevlex sorting
        return Polynomial(self.arity, terms, _canonical=True)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.arity)
        if len(other.terms) == 1:
            m, c = other.terms[0]
            return self.mul_term(m, c)
        if len(self.terms) == 1:
            m, c = self.terms[0]
            return other.mul_term(m, c)
        d: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                nc = d.get(m, Fraction(0)) + c1 * c2
                if nc:
                    d[m] = nc
                else:
                    del d[m]
        return Polynomial.from_dict(self.arity, d)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def divide_exact(self, g: "Polynomial", order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Return q with self = q*g, or raise ValueError if g does not divide."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self.as_dict()
        lead_m, lead_c = g.leading_term(order)
        q: dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem, key=order.key)
            c = rem[m]
            if not mono_divides(lead_m, m):
                raise ValueError("not an exact multiple")
            qm = mono_div(m, lead_m)
            qc = c / lead_c
            q[qm] = q.get(qm, Fraction(0)) + qc
            for gm, gc in g.terms:
                mm = mono_mul(qm, gm)
                nc = rem.get(mm, Fraction(0)) - qc * gc
                if nc:
                    rem[mm] = nc
                else:
                    rem.pop(mm, None)
        return Polynomial.from_dict(self.arity, q)

    # -- arity changes (for the elimination variable)

    def extend(self, front: int) -> "Polynomial":
        """Insert `front` new variables (exponent 0) at the front."""
        pad = (0,) * front
        return Polynomial(self.arity + front,
                          tuple((pad + m, c) for m, c in self.terms))

    def contract(self, front: int) -> "Polynomial":
        """Drop the first `front` variables; they must not occur."""
        for m, _ in self.terms:
            if any(m[:front]):
                raise ValueError("polynomial involves a variable being dropped")
        return Polynomial(self.arity - front,
                          tuple((m[front:], c) for m, c in self.terms))

    # -- comparisons

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and self.arity == other.arity and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, self.terms))
        return self._hash

    def __repr__(self):
        names = [f"x{i}" for i in range(self.arity)]
        return f"Polynomial({poly_str(self, names)})"


def normalize_terms(arity: int, raw: Iterable[tuple[Monomial, object]],
                    order: MonomialOrder = GREVLEX) -> Polynomial:
    """Merge duplicates, drop zeros, canonicalize."""
    return Polynomial(arity, ((tuple(m), Fraction(c)) for m, c in raw))


# ---------------------------------------------------------------------------
# text syntax: `-x^2 + y^2`, `2*x*y^3`, `1/2 x z`


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*^]))")


def poly_parse(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse the shared polynomial text syntax over the given variables."""
    arity = len(variables)
    index = {v: i for i, v in enumerate(variables)}
    pos = 0
    tokens: list[tuple[str, str, int]] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError(f"bad character {text[pos:].lstrip()[0]!r} "
                                     f"in polynomial at offset {pos}")
            break
        if m.lastgroup:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial")

    terms: list[tuple[Monomial, Fraction]] = []
    i = 0
    n = len(tokens)

    def parse_term(i: int, sign: int):
        coeff = Fraction(sign)
        exps = [0] * arity
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, val, off = tokens[i]
            if kind == "op" and val in "+-" and not expect_factor:
                break
            if kind == "op" and val == "*":
                if expect_factor:
                    raise PolyParseError(f"unexpected '*' at offset {off}")
                expect_factor = True
                i += 1
                continue
            if kind == "op" and val in "+-" and expect_factor and not saw_factor:
                # leading sign handled by caller loop
                raise PolyParseError(f"unexpected sign at offset {off}")
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "name":
                if val not in index:
                    raise PolyParseError(f"unknown variable {val!r} at offset {off}")
                e = 1
                if i + 2 < n and tokens[i + 1][:2] == ("op", "^"):
                    if tokens[i + 2][0] != "num" or "/" in tokens[i + 2][1]:
                        raise PolyParseError(f"bad exponent at offset {tokens[i + 1][2]}")
                    e = int(tokens[i + 2][1])
                    i += 3
                elif i + 1 < n and tokens[i + 1][:2] == ("op", "^"):
                    raise PolyParseError(f"dangling '^' at offset {tokens[i + 1][2]}")
                else:
                    i += 1
                exps[index[val]] += e
            else:
                raise PolyParseError(f"unexpected {val!r} at offset {off}")
            saw_factor = True
            expect_factor = False
        if expect_factor and saw_factor:
            raise PolyParseError("dangling '*' at end of polynomial")
        if not saw_factor:
            raise PolyParseError("empty term in polynomial")
        return i, (tuple(exps), coeff)

    first = True
    while i < n:
        sign = 1
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
            first = False
        if i >= n:
            raise PolyParseError("dangling sign at end of polynomial")
        if not first and tokens[i][0] == "op":
            raise PolyParseError(f"unexpected {tokens[i][1]!r} at offset {tokens[i][2]}")
        i, term = parse_term(i, sign)
        terms.append(term)
        first = False
    return Polynomial(arity, terms)


def _term_str(m: Monomial, c: Fraction, variables: Sequence[str]) -> str:
    factors = []
    for i, e in enumerate(m):
        if e == 1:
            factors.append(variables[i])
        elif e > 1:
            factors.append(f"{variables[i]}^{e}")
    if not factors:
        return str(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c}*{body}"


def poly_str(p: Polynomial, variables: Sequence[str],
             order: MonomialOrder = GREVLEX) -> str:
    """Render in the shared text syntax, terms descending in the order."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms(order):
        s = _term_str(m, c, variables)
        if parts:
            if s.startswith("-"):
                parts.append(" - " + s[1:])
            else:
                parts.append(" + " + s)
        else:
            parts.append(s)
    return "".join(parts)

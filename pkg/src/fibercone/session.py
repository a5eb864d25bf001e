"""Session files: a tiny declarative language binding one ring, some
ideals, and a list of directives; execution of a session into a report;
text and structured report emission.

Grammar (informal EBNF)::

    session   := ringdecl idealdecl+ directive+
    ringdecl  := "ring" IDENT "vars" IDENT+ ["mod" "[" polylist "]"] ";"
    idealdecl := "ideal" IDENT "=" "[" polylist "]" ";"
    directive := ("report" | "compute" WHAT | "check" STMTID) [options] ";"
    options   := (IDENT "=" VALUE)*

with "#" starting a line comment and polynomial syntax as in poly.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field

from .poly import PolyParseError, poly_parse, poly_str
from .ideals import DEFAULT_LOCAL_CAP, Ideal, RingContext
from .invariants import (
    DEFAULT_REDUCTION_CAP, FAMILIES, HilbertSeries, LengthTable,
    ReductionData, WindowTooSmall, hilbert_series_f, hilbert_series_g,
    length_quotient, length_sum, minimal_reduction_check, reduction_data,
)
from .depth import (
    STATEMENT_IDS, ChecklistVerdict, DepthCertificate, FiberCMReport,
    InstanceInvariants, check_cortadellas_zarzuela, check_valabrega_valla,
    cm_test_fiber, depth_lower_bound, theorem_checklist,
)

COMPUTE_TARGETS = ("reduction", "sums", "series", "depth", "cm", "checklist")


class SessionSyntaxError(ValueError):
    """Lexical, syntactic or semantic error in a session file."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class RingDecl:
    name: str
    variables: tuple
    presentation: tuple  # polynomial texts


@dataclass(frozen=True)
class IdealDecl:
    name: str
    gens: tuple  # polynomial texts


@dataclass(frozen=True)
class Directive:
    kind: str            # report | compute | check
    argument: str | None
    options: tuple       # ((key, value), ...)


@dataclass(frozen=True)
class SessionAST:
    ring: RingDecl
    ideals: tuple        # IdealDecl in declaration order
    directives: tuple


# ---------------------------------------------------------------------------
# lexer / parser

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.\-]*)
  | (?P<number>[0-9]+)
  | (?P<punct>[;=\[\],^*+\-/()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SessionSyntaxError(
                f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], end_line: int):
        self.tokens = tokens
        self.pos = 0
        self.end_line = end_line

    def _err(self, message: str):
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            raise SessionSyntaxError(message, t.line, t.col)
        raise SessionSyntaxError(message + " (at end of input)",
                                 self.end_line, 1)

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, text: str = None, kind: str = None) -> _Token:
        t = self.peek()
        if t is None or (text is not None and t.text != text) or \
                (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            self._err(f"expected {want}")
        self.pos += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    # -- grammar productions

    def polylist(self, variables: tuple) -> tuple:
        """Bracketed comma-separated polynomials, returned as canonical text."""
        open_tok = self.take("[")
        polys = []
        chunk: list[_Token] = []

        def flush():
            if not chunk:
                self._err("empty polynomial in list")
            raw = " ".join(t.text for t in chunk)
            try:
                p = poly_parse(raw, variables)
            except PolyParseError as e:
                raise SessionSyntaxError(str(e), chunk[0].line, chunk[0].col)
            polys.append(poly_str(p, variables))

        while True:
            t = self.peek()
            if t is None:
                raise SessionSyntaxError("unclosed '['",
                                         open_tok.line, open_tok.col)
            if t.text == "]":
                self.pos += 1
                if chunk or not polys:
                    flush()
                return tuple(polys)
            if t.text == ",":
                self.pos += 1
                flush()
                chunk = []
                continue
            if t.text in (";", "["):
                self._err("unexpected token inside polynomial list")
            chunk.append(t)
            self.pos += 1

    def ringdecl(self) -> RingDecl:
        self.take("ring")
        name = self.take(kind="ident").text
        self.take("vars")
        variables = []
        while self.peek() is not None and self.peek().kind == "ident" \
                and self.peek().text != "mod":
            v = self.take(kind="ident").text
            if v in variables:
                self._err(f"duplicate variable {v!r}")
            variables.append(v)
        if not variables:
            self._err("ring declaration needs at least one variable")
        presentation = ()
        if self.at("mod"):
            self.take("mod")
            presentation = self.polylist(tuple(variables))
        self.take(";")
        return RingDecl(name, tuple(variables), presentation)

    def idealdecl(self, variables: tuple) -> IdealDecl:
        self.take("ideal")
        name = self.take(kind="ident").text
        self.take("=")
        gens = self.polylist(variables)
        self.take(";")
        return IdealDecl(name, gens)

    def options(self) -> tuple:
        opts = []
        while self.peek() is not None and self.peek().kind == "ident":
            key = self.take(kind="ident").text
            self.take("=")
            t = self.peek()
            if t is None or t.kind not in ("ident", "number"):
                self._err("expected option value")
            opts.append((key, self.take().text))
        return tuple(opts)

    def directive(self) -> Directive:
        t = self.peek()
        if t.text == "report":
            self.take("report")
            opts = self.options()
            self.take(";")
            return Directive("report", None, opts)
        if t.text == "compute":
            self.take("compute")
            what = self.take(kind="ident").text
            if what not in COMPUTE_TARGETS:
                raise SessionSyntaxError(
                    f"unknown compute target {what!r} "
                    f"(expected one of {', '.join(COMPUTE_TARGETS)})",
                    t.line, t.col)
            opts = self.options()
            self.take(";")
            return Directive("compute", what, opts)
        if t.text == "check":
            self.take("check")
            sid_tok = self.take(kind="ident")
            if sid_tok.text not in STATEMENT_IDS:
                raise SessionSyntaxError(
                    f"unknown statement id {sid_tok.text!r}",
                    sid_tok.line, sid_tok.col)
            opts = self.options()
            self.take(";")
            return Directive("check", sid_tok.text, opts)
        self._err("expected 'report', 'compute' or 'check'")


def parse_session(text: str) -> SessionAST:
    tokens = _tokenize(text)
    p = _Parser(tokens, end_line=text.count("\n") + 1)
    ring = p.ringdecl()
    ideals = []
    names = set()
    while p.at("ideal"):
        decl = p.idealdecl(ring.variables)
        if decl.name in names:
            p._err(f"duplicate ideal {decl.name!r}")
        names.add(decl.name)
        ideals.append(decl)
    if not ideals:
        p._err("expected at least one ideal declaration")
    directives = []
    while p.peek() is not None:
        if p.at("ring"):
            t = p.peek()
            raise SessionSyntaxError("duplicate ring declaration",
                                     t.line, t.col)
        directives.append(p.directive())
    return SessionAST(ring, tuple(ideals), tuple(directives))


def pretty_print(ast: SessionAST) -> str:
    """Canonical text form; parse_session(pretty_print(ast)) == ast."""
    lines = []
    head = f"ring {ast.ring.name} vars {' '.join(ast.ring.variables)}"
    if ast.ring.presentation:
        head += " mod [" + ", ".join(ast.ring.presentation) + "]"
    lines.append(head + ";")
    for decl in ast.ideals:
        lines.append(f"ideal {decl.name} = [" + ", ".join(decl.gens) + "];")
    for d in ast.directives:
        parts = [d.kind]
        if d.argument is not None:
            parts.append(d.argument)
        parts += [f"{k}={v}" for k, v in d.options]
        lines.append(" ".join(parts) + ";")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# execution

@dataclass
class SessionConfig:
    reduction_cap: int = DEFAULT_REDUCTION_CAP
    nmax: int | None = None          # regularity-check window; default r+d+2
    degree_cap: int | None = None
    cache_dir: str | None = None
    jobs: int = 1


@dataclass
class Report:
    ring_name: str
    variables: tuple
    presentation: tuple
    ideal_i: tuple | None = None
    ideal_j: tuple | None = None
    dimension: int | None = None
    reduction: ReductionData | None = None
    minimal_reduction: bool | None = None
    sums: dict = field(default_factory=dict)          # family -> LengthTable
    series_g: HilbertSeries | None = None
    series_f: HilbertSeries | None = None
    depth_g: DepthCertificate | None = None
    depth_f: DepthCertificate | None = None
    cm_g: str | None = None          # 'CM' | 'notCM' | 'unknown'
    cm_g_failing: list | None = None
    cm_f: FiberCMReport | None = None
    cz_verdict: str | None = None
    checklist: list | None = None    # ChecklistVerdict
    timing_seconds: float = 0.0
    cache_hits: int = 0
    cache_misses: int = 0


class _Executor:
    """Shared state across the directives of one session."""

    def __init__(self, ast: SessionAST, config: SessionConfig):
        self.ast = ast
        self.config = config
        kwargs = {}
        if config.cache_dir is not None:
            kwargs["cache_dir"] = config.cache_dir
        if config.degree_cap is not None:
            kwargs["degree_cap"] = config.degree_cap
        bare = RingContext(ast.ring.variables, **kwargs)
        pres = [bare.parse(t) for t in ast.ring.presentation]
        if pres:
            self.ctx = RingContext(ast.ring.variables, presentation=pres,
                                   **kwargs)
        else:
            self.ctx = bare
        self.bindings = {
            decl.name: self.ctx.ideal([self.ctx.parse(t) for t in decl.gens])
            for decl in ast.ideals
        }
        self.report = Report(ring_name=ast.ring.name,
                             variables=ast.ring.variables,
                             presentation=ast.ring.presentation)
        self._rd = None
        self._inv = None

    def _pair(self) -> tuple[Ideal, Ideal]:
        for name in ("I", "J"):
            if name not in self.bindings:
                raise SessionSyntaxError(
                    f"directive needs an ideal named {name!r}", 1, 1)
        return self.bindings["I"], self.bindings["J"]

    def rd(self) -> ReductionData:
        if self._rd is None:
            i, j = self._pair()
            self._rd = reduction_data(i, j, self.config.reduction_cap)
            self.report.reduction = self._rd
            self.report.minimal_reduction = minimal_reduction_check(i, j)
            self.report.dimension = self.ctx.dimension
            self.report.ideal_i = tuple(poly_str(g, self.ctx.variables)
                                        for g in i.gens)
            self.report.ideal_j = tuple(poly_str(g, self.ctx.variables)
                                        for g in j.gens)
        return self._rd

    def nmax(self) -> int:
        if self.config.nmax is not None:
            return self.config.nmax
        return self.rd().r + self.ctx.dimension + 2

    def compute_sums(self):
        i, j = self._pair()
        rd = self.rd()
        for family in FAMILIES:
            if family not in self.report.sums:
                self.report.sums[family] = length_sum(family, i, j, rd)

    def compute_series(self):
        i, _ = self._pair()
        rd = self.rd()
        window = rd.r + self.ctx.dimension + 2
        while True:
            try:
                if self.report.series_g is None:
                    self.report.series_g = hilbert_series_g(i, rd, window)
                if self.report.series_f is None:
                    self.report.series_f = hilbert_series_f(i, rd, window)
                return
            except WindowTooSmall:
                if window > 4 * (rd.r + self.ctx.dimension + 2):
                    raise
                window += self.ctx.dimension + 2

    def compute_depth(self):
        i, j = self._pair()
        rd = self.rd()
        if self.report.depth_g is None:
            self.report.depth_g = depth_lower_bound("G", i, j, self.nmax(), rd)
        if self.report.depth_f is None:
            self.report.depth_f = depth_lower_bound("F", i, j, self.nmax(), rd)

    def compute_cm(self):
        i, j = self._pair()
        rd = self.rd()
        if self.report.cm_g is None:
            # the bounded check is complete: for n > r+1 the equality is
            # automatic, so a failure certifies notCM
            holds, failing = check_valabrega_valla(i, j, rd)
            self.report.cm_g = "CM" if holds else "notCM"
            self.report.cm_g_failing = failing
        if self.report.cm_f is None:
            self.report.cm_f = cm_test_fiber(i, j, rd)
        if self.report.cz_verdict is None:
            self.compute_sums()
            self.report.cz_verdict = check_cortadellas_zarzuela(
                i, j, rd, self.report.cm_g == "CM", self.report.sums["FC1"])
        if self.report.depth_f is not None and self.report.cm_f is not None:
            self.report.depth_f.cm_flag = self.report.cm_f.verdict

    def invariants(self) -> InstanceInvariants:
        if self._inv is None:
            i, j = self._pair()
            rd = self.rd()
            self.compute_sums()
            self.compute_depth()
            self.compute_cm()
            m = self.ctx.maximal_ideal
            mi_eq = length_quotient((m * i).intersect(j), m * j) == 0
            self._inv = InstanceInvariants(
                i=i, j=j, rd=rd, d=self.ctx.dimension,
                fc1=self.report.sums["FC1"], fc2=self.report.sums["FC2"],
                lam_hm=self.report.sums["LambdaHM"],
                vv_holds=self.report.cm_g == "CM",
                mi_cap_j_eq_mj=mi_eq,
                g_bound=self.report.depth_g.lower_bound,
                f_bound=self.report.depth_f.lower_bound,
                fiber_cm=self.report.cm_f)
        return self._inv

    def compute_checklist(self):
        if self.report.checklist is None:
            self.report.checklist = theorem_checklist(self.invariants(),
                                                      jobs=self.config.jobs)

    def run_directive(self, d: Directive):
        if d.kind == "report":
            self.compute_sums()
            self.compute_series()
            self.compute_depth()
            self.compute_cm()
            self.compute_checklist()
        elif d.kind == "compute":
            {"reduction": self.rd, "sums": self.compute_sums,
             "series": self.compute_series, "depth": self.compute_depth,
             "cm": self.compute_cm,
             "checklist": self.compute_checklist}[d.argument]()
        elif d.kind == "check":
            self.compute_checklist()
        else:
            raise ValueError(f"unknown directive kind {d.kind!r}")


def run_session(ast: SessionAST, config: SessionConfig | None = None) -> Report:
    config = config or SessionConfig()
    start = time.monotonic()
    ex = _Executor(ast, config)
    for d in ast.directives:
        ex.run_directive(d)
    ex.report.timing_seconds = time.monotonic() - start
    ex.report.cache_hits = ex.ctx.cache_hits
    ex.report.cache_misses = ex.ctx.cache_misses
    return ex.report


# ---------------------------------------------------------------------------
# emission

def report_tree(report: Report) -> dict:
    """The structured report as a plain tree of exact values.

    Key names are a stable public contract; 'timing' and 'cache' carry the
    only run-dependent values and are excluded from determinism comparisons.
    """
    tree: dict = {
        "instance": {
            "ring": report.ring_name,
            "variables": list(report.variables),
            "presentation": list(report.presentation),
            "I": list(report.ideal_i) if report.ideal_i is not None else None,
            "J": list(report.ideal_j) if report.ideal_j is not None else None,
            "dimension": report.dimension,
        }
    }
    if report.reduction is not None:
        tree["reduction"] = {"r": report.reduction.r,
                             "rm": report.reduction.rm,
                             "cap": report.reduction.cap,
                             "minimal": report.minimal_reduction}
    if report.sums:
        tree["sums"] = {
            fam: {"terms": {str(n): v for n, v in sorted(t.terms.items())},
                  "total": t.total}
            for fam, t in sorted(report.sums.items())
        }
    series = {}
    for tag, s in (("G", report.series_g), ("F", report.series_f)):
        if s is not None:
            series[tag] = {"numerator": list(s.numerator),
                           "denomexp": s.denomexp, "e0": s.e0, "e1": s.e1}
    if series:
        tree["series"] = series
    depth = {}
    for tag, c in (("G", report.depth_g), ("F", report.depth_f)):
        if c is not None:
            depth[tag] = {"lowerbound": c.lower_bound,
                          "sequence": list(c.sequence),
                          "methods": list(c.methods),
                          "cmflag": c.cm_flag}
    if depth:
        tree["depth"] = depth
    cm = {}
    if report.cm_g is not None:
        cm["G"] = {"verdict": report.cm_g,
                   "vv_failing": list(report.cm_g_failing)}
    if report.cm_f is not None:
        cm["F"] = {"verdict": report.cm_f.verdict, "e0": report.cm_f.e0,
                   "layer_sum": report.cm_f.layer_sum,
                   "witness": report.cm_f.witness,
                   "mu_table": {str(n): list(v) for n, v in
                                sorted(report.cm_f.mu_table.items())}}
    if report.cz_verdict is not None:
        cm["CZ"] = {"verdict": report.cz_verdict}
    if cm:
        tree["cm"] = cm
    if report.checklist is not None:
        tree["checklist"] = [
            {"id": v.statement_id, "hypothesis": v.hypothesis_holds,
             "verdict": v.conclusion, "detail": v.detail}
            for v in report.checklist
        ]
    tree["cache"] = {"hits": report.cache_hits,
                     "misses": report.cache_misses}
    tree["timing"] = {"seconds": f"{report.timing_seconds:.3f}"}
    return tree


def _text_lines(report: Report) -> list[str]:
    out = []
    out.append(f"ring {report.ring_name} "
               f"vars {' '.join(report.variables)}")
    if report.presentation:
        out.append("  mod " + ", ".join(report.presentation))
    if report.ideal_i is not None:
        out.append("I = (" + ", ".join(report.ideal_i) + ")")
        out.append("J = (" + ", ".join(report.ideal_j) + ")")
    if report.dimension is not None:
        out.append(f"dimension        {report.dimension}")
    if report.reduction is not None:
        out.append(f"reduction r      {report.reduction.r}")
        out.append(f"reduction rm     {report.reduction.rm}")
        out.append(f"minimal          {report.minimal_reduction}")
    if report.sums:
        out.append("length sums")
        for fam, t in sorted(report.sums.items()):
            terms = "  ".join(f"{n}:{v}" for n, v in sorted(t.terms.items()))
            out.append(f"  {fam:<9} total {t.total:<4} [{terms}]")
    for tag, s in (("G", report.series_g), ("F", report.series_f)):
        if s is not None:
            parts = []
            for k, c in enumerate(s.numerator):
                if not c:
                    continue
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                mag = "" if (abs(c) == 1 and mono) else str(abs(c))
                parts.append(("- " if c < 0 else "+ " if parts else "")
                             + mag + mono)
            num = " ".join(parts) or "0"
            out.append(f"H({tag})  ({num}) / (1-t)^{s.denomexp}"
                       f"   e0={s.e0} e1={s.e1}")
    for tag, c in (("G", report.depth_g), ("F", report.depth_f)):
        if c is not None:
            seq = ", ".join(c.sequence) if c.sequence else "-"
            out.append(f"depth {tag} >= {c.lower_bound}   sequence: {seq}")
    if report.cm_g is not None:
        failing = (f" (fails at n = {', '.join(map(str, report.cm_g_failing))})"
                   if report.cm_g_failing else "")
        out.append(f"G Cohen-Macaulay: {report.cm_g}{failing}")
    if report.cm_f is not None:
        out.append(f"F Cohen-Macaulay: {report.cm_f.verdict} "
                   f"(e0 {report.cm_f.e0} vs layer sum {report.cm_f.layer_sum})")
        if report.cm_f.witness is not None:
            mu, w = report.cm_f.mu_table[report.cm_f.witness]
            out.append(f"  witness n = {report.cm_f.witness}: "
                       f"mingens {mu} < weighted sum {w}")
    if report.cz_verdict is not None:
        out.append(f"F Cohen-Macaulay (intersection criterion): "
                   f"{report.cz_verdict}")
    if report.checklist is not None:
        out.append("checklist")
        for v in report.checklist:
            hyp = "hyp+" if v.hypothesis_holds else "hyp-"
            out.append(f"  {v.statement_id:<9} {hyp}  {v.conclusion:<16} "
                       f"{v.detail}")
    out.append(f"cache hits/misses  {report.cache_hits}/{report.cache_misses}")
    out.append(f"elapsed            {report.timing_seconds:.3f}s")
    return out


def emit_report(report: Report, format: str = "text") -> str:
    if format == "structured":
        return json.dumps(report_tree(report), indent=2) + "\n"
    if format == "text":
        return "\n".join(_text_lines(report)) + "\n"
    raise ValueError(f"unknown report format {format!r}")

"""Discrete-time STL and signal regular expressions.

Both languages share the comparison syntax of the predicate module and
are interpreted over finite, non-empty traces with one sample per time
step.  The evaluators here are the qualitative reference semantics: the
until/since operators are strict in both arguments, time windows clip at
the trace boundary, and a regular expression matches a trace when it
matches the full segment from position 0 to the trace length.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from . import predicate as P
from .errors import ParseError, UnboundVariableError

_ATOM_OPS = ("<", "<=", ">", ">=")


@dataclass(frozen=True)
class TimeWindow:
    """Discrete window [lo, hi] with hi=None for an unbounded right end."""

    lo: int = 0
    hi: int | None = None

    def __post_init__(self):
        if self.lo < 0 or (self.hi is not None and self.hi < self.lo):
            raise ValueError(f"bad time window [{self.lo},{self.hi}]")

    @property
    def unbounded(self) -> bool:
        return self.hi is None

    def __repr__(self):
        hi = "inf" if self.hi is None else self.hi
        return f"[{self.lo},{hi}]"


FULL_WINDOW = TimeWindow(0, None)
NEXT_WINDOW = TimeWindow(1, 1)


class StlFormula:
    pass


@dataclass(frozen=True)
class Atom(StlFormula):
    var: str
    op: str
    value: float

    def to_literal(self) -> P.Pred:
        return P.comparison(self.var, self.op, self.value)


@dataclass(frozen=True)
class TrueFormula(StlFormula):
    pass


@dataclass(frozen=True)
class FalseFormula(StlFormula):
    pass


@dataclass(frozen=True)
class Not(StlFormula):
    arg: StlFormula


@dataclass(frozen=True)
class Or(StlFormula):
    left: StlFormula
    right: StlFormula


@dataclass(frozen=True)
class And(StlFormula):
    left: StlFormula
    right: StlFormula


@dataclass(frozen=True)
class Implies(StlFormula):
    left: StlFormula
    right: StlFormula


@dataclass(frozen=True)
class Until(StlFormula):
    left: StlFormula
    right: StlFormula
    window: TimeWindow = FULL_WINDOW


@dataclass(frozen=True)
class Since(StlFormula):
    left: StlFormula
    right: StlFormula
    window: TimeWindow = FULL_WINDOW


@dataclass(frozen=True)
class Eventually(StlFormula):
    arg: StlFormula
    window: TimeWindow = FULL_WINDOW


@dataclass(frozen=True)
class Always(StlFormula):
    arg: StlFormula
    window: TimeWindow = FULL_WINDOW


@dataclass(frozen=True)
class Once(StlFormula):
    arg: StlFormula
    window: TimeWindow = FULL_WINDOW


@dataclass(frozen=True)
class Historically(StlFormula):
    arg: StlFormula
    window: TimeWindow = FULL_WINDOW


@dataclass(frozen=True)
class Next(StlFormula):
    arg: StlFormula


@dataclass(frozen=True)
class Prev(StlFormula):
    arg: StlFormula


TRUE = TrueFormula()
FALSE = FalseFormula()

PAST_OPERATORS = (Since, Once, Historically, Prev)


class SreExpr:
    pass


@dataclass(frozen=True)
class Epsilon(SreExpr):
    pass


@dataclass(frozen=True)
class SreBasic(SreExpr):
    pred: P.Pred


@dataclass(frozen=True)
class SreConcat(SreExpr):
    left: SreExpr
    right: SreExpr


@dataclass(frozen=True)
class SreUnion(SreExpr):
    left: SreExpr
    right: SreExpr


@dataclass(frozen=True)
class SreIntersect(SreExpr):
    left: SreExpr
    right: SreExpr


@dataclass(frozen=True)
class SreStar(SreExpr):
    arg: SreExpr


@dataclass(frozen=True)
class SreDuration(SreExpr):
    arg: SreExpr
    window: TimeWindow


EPSILON = Epsilon()


# --- traces -----------------------------------------------------------------


@dataclass
class Trace:
    """Finite sequence of valuations, one per time step."""

    variables: tuple[str, ...]
    samples: list[dict]

    def __post_init__(self):
        if not self.samples:
            raise ValueError("traces must contain at least one sample")
        for sample in self.samples:
            for v in self.variables:
                if v not in sample:
                    raise UnboundVariableError(f"sample missing variable {v!r}")

    def __len__(self):
        return len(self.samples)

    @staticmethod
    def from_rows(variables, rows) -> "Trace":
        vs = tuple(variables)
        return Trace(vs, [dict(zip(vs, (float(x) for x in row))) for row in rows])


def read_trace_csv(text_or_path, from_path: bool = True) -> Trace:
    """Header row of variable names, one numeric row per sample; blank
    lines skipped."""
    if from_path:
        with open(text_or_path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if any(cell.strip() for cell in r)]
    else:
        rows = [
            r
            for r in csv.reader(io.StringIO(text_or_path))
            if any(cell.strip() for cell in r)
        ]
    if not rows:
        raise ParseError("trace file has no header row")
    header = [h.strip() for h in rows[0]]
    data = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"trace row {lineno} has {len(row)} cells, expected {len(header)}")
        try:
            data.append([float(cell) for cell in row])
        except ValueError:
            raise ParseError(f"non-numeric cell in trace row {lineno}") from None
    if not data:
        raise ParseError("trace file has no samples")
    return Trace.from_rows(header, data)


def write_trace_csv(trace: Trace, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(trace.variables)
        for sample in trace.samples:
            writer.writerow([sample[v] for v in trace.variables])


# --- qualitative STL evaluation ---------------------------------------------


def stl_variables(f: StlFormula) -> set[str]:
    if isinstance(f, Atom):
        return {f.var}
    if isinstance(f, (Not, Next, Prev)):
        return stl_variables(f.arg)
    if isinstance(f, (Eventually, Always, Once, Historically)):
        return stl_variables(f.arg)
    if isinstance(f, (Or, And, Implies, Until, Since)):
        return stl_variables(f.left) | stl_variables(f.right)
    return set()


def _future_positions(i: int, w: TimeWindow, n: int):
    start = i + w.lo
    end = n - 1 if w.hi is None else min(i + w.hi, n - 1)
    return range(start, end + 1)


def _past_positions(i: int, w: TimeWindow, n: int):
    end = i - w.lo
    start = 0 if w.hi is None else max(i - w.hi, 0)
    return range(start, min(end, n - 1) + 1)


def eval_stl(trace: Trace, i: int, formula: StlFormula) -> bool:
    """Satisfaction of ``formula`` by ``trace`` at position ``i``."""
    n = len(trace)
    if not 0 <= i < n:
        raise ValueError(f"position {i} outside trace of length {n}")
    samples = trace.samples
    memo: dict = {}

    def ev(f, i):
        key = (id(f), i)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            try:
                v = samples[i][f.var]
            except KeyError:
                raise UnboundVariableError(f"unbound variable {f.var!r}") from None
            if f.op == "<":
                r = v < f.value
            elif f.op == "<=":
                r = v <= f.value
            elif f.op == ">":
                r = v > f.value
            else:
                r = v >= f.value
        elif isinstance(f, TrueFormula):
            r = True
        elif isinstance(f, FalseFormula):
            r = False
        elif isinstance(f, Not):
            r = not ev(f.arg, i)
        elif isinstance(f, Or):
            r = ev(f.left, i) or ev(f.right, i)
        elif isinstance(f, And):
            r = ev(f.left, i) and ev(f.right, i)
        elif isinstance(f, Implies):
            r = (not ev(f.left, i)) or ev(f.right, i)
        elif isinstance(f, Until):
            r = any(
                ev(f.right, j) and all(ev(f.left, k) for k in range(i + 1, j))
                for j in _future_positions(i, f.window, n)
            )
        elif isinstance(f, Since):
            r = any(
                ev(f.right, j) and all(ev(f.left, k) for k in range(j + 1, i))
                for j in _past_positions(i, f.window, n)
            )
        elif isinstance(f, Eventually):
            r = any(ev(f.arg, j) for j in _future_positions(i, f.window, n))
        elif isinstance(f, Always):
            r = all(ev(f.arg, j) for j in _future_positions(i, f.window, n))
        elif isinstance(f, Once):
            r = any(ev(f.arg, j) for j in _past_positions(i, f.window, n))
        elif isinstance(f, Historically):
            r = all(ev(f.arg, j) for j in _past_positions(i, f.window, n))
        elif isinstance(f, Next):
            r = i + 1 < n and ev(f.arg, i + 1)
        elif isinstance(f, Prev):
            r = i >= 1 and ev(f.arg, i - 1)
        else:
            raise TypeError(f"not an STL node: {f!r}")
        memo[key] = r
        return r

    return ev(formula, i)


# --- qualitative SRE evaluation ---------------------------------------------


def sre_variables(e: SreExpr) -> set[str]:
    if isinstance(e, SreBasic):
        return P.variables_of(e.pred)
    if isinstance(e, (SreStar, SreDuration)):
        return sre_variables(e.arg)
    if isinstance(e, (SreConcat, SreUnion, SreIntersect)):
        return sre_variables(e.left) | sre_variables(e.right)
    return set()


def _sre_matches(trace: Trace, expr: SreExpr, memo: dict) -> set:
    """Set of segments (i, j), 0 <= i <= j <= len(trace), matching expr."""
    key = id(expr)
    hit = memo.get(key)
    if hit is not None:
        return hit
    n = len(trace)
    if isinstance(expr, Epsilon):
        out = {(i, i) for i in range(n + 1)}
    elif isinstance(expr, SreBasic):
        sat = [P.evaluate(s, expr.pred) for s in trace.samples]
        out = set()
        for i in range(n + 1):
            out.add((i, i))
            j = i
            while j < n and sat[j]:
                j += 1
                out.add((i, j))
    elif isinstance(expr, SreConcat):
        m1 = _sre_matches(trace, expr.left, memo)
        m2 = _sre_matches(trace, expr.right, memo)
        starts = {}
        for k, j in m2:
            starts.setdefault(k, set()).add(j)
        out = {(i, j) for (i, k) in m1 for j in starts.get(k, ())}
    elif isinstance(expr, SreUnion):
        out = _sre_matches(trace, expr.left, memo) | _sre_matches(trace, expr.right, memo)
    elif isinstance(expr, SreIntersect):
        out = _sre_matches(trace, expr.left, memo) & _sre_matches(trace, expr.right, memo)
    elif isinstance(expr, SreStar):
        base = _sre_matches(trace, expr.arg, memo)
        reach = [{i} for i in range(n + 1)]
        changed = True
        while changed:
            changed = False
            for i in range(n + 1):
                for k in list(reach[i]):
                    for (a, b) in base:
                        if a == k and b not in reach[i]:
                            reach[i].add(b)
                            changed = True
        out = {(i, j) for i in range(n + 1) for j in reach[i] if j >= i}
    elif isinstance(expr, SreDuration):
        inner = _sre_matches(trace, expr.arg, memo)
        w = expr.window
        out = {
            (i, j)
            for (i, j) in inner
            if j - i >= w.lo and (w.hi is None or j - i <= w.hi)
        }
    else:
        raise TypeError(f"not an SRE node: {expr!r}")
    memo[key] = out
    return out


def eval_sre(trace: Trace, i: int, j: int, expr: SreExpr) -> bool:
    """Match of ``expr`` against the segment [i, j) of ``trace``."""
    n = len(trace)
    if not 0 <= i <= j <= n:
        raise ValueError(f"bad segment ({i},{j}) for trace of length {n}")
    return (i, j) in _sre_matches(trace, expr, {})


def sre_accepts(trace: Trace, expr: SreExpr) -> bool:
    return eval_sre(trace, 0, len(trace), expr)


# --- rewriting ----------------------------------------------------------------


def negate(f: StlFormula) -> StlFormula:
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def desugar(f: StlFormula) -> StlFormula:
    """Rewrite to the core {atom, true, false, not, or, until, since}."""
    if isinstance(f, (Atom, TrueFormula, FalseFormula)):
        return f
    if isinstance(f, Not):
        return negate(desugar(f.arg))
    if isinstance(f, Or):
        return Or(desugar(f.left), desugar(f.right))
    if isinstance(f, And):
        return Not(Or(negate(desugar(f.left)), negate(desugar(f.right))))
    if isinstance(f, Implies):
        return Or(negate(desugar(f.left)), desugar(f.right))
    if isinstance(f, Until):
        return Until(desugar(f.left), desugar(f.right), f.window)
    if isinstance(f, Since):
        return Since(desugar(f.left), desugar(f.right), f.window)
    if isinstance(f, Eventually):
        return Until(TRUE, desugar(f.arg), f.window)
    if isinstance(f, Always):
        return Not(Until(TRUE, negate(desugar(f.arg)), f.window))
    if isinstance(f, Once):
        return Since(TRUE, desugar(f.arg), f.window)
    if isinstance(f, Historically):
        return Not(Since(TRUE, negate(desugar(f.arg)), f.window))
    if isinstance(f, Next):
        return Until(FALSE, desugar(f.arg), NEXT_WINDOW)
    if isinstance(f, Prev):
        return Since(FALSE, desugar(f.arg), NEXT_WINDOW)
    raise TypeError(f"not an STL node: {f!r}")


def _or(a, b):
    if isinstance(a, TrueFormula) or isinstance(b, TrueFormula):
        return TRUE
    if isinstance(a, FalseFormula):
        return b
    if isinstance(b, FalseFormula):
        return a
    return Or(a, b)


def _and(a, b):
    if isinstance(a, FalseFormula) or isinstance(b, FalseFormula):
        return FALSE
    if isinstance(a, TrueFormula):
        return b
    if isinstance(b, TrueFormula):
        return a
    return And(a, b)


def _next(a):
    if isinstance(a, FalseFormula):
        return FALSE
    return Next(a)


RESIDUAL_WINDOW = TimeWindow(1, None)


def _unfold_nonstrict(left, right, lo, hi):
    # until whose lower-bound side also constrains the current position
    if lo == 0:
        if hi == 0:
            return right
        if hi is None:
            return _or(right, _and(left, Until(left, right, RESIDUAL_WINDOW)))
        return _or(right, _and(left, _next(_unfold_nonstrict(left, right, 0, hi - 1))))
    nhi = None if hi is None else hi - 1
    return _and(left, _next(_unfold_nonstrict(left, right, lo - 1, nhi)))


def _unfold_strict(left, right, lo, hi):
    if lo == 0:
        if hi == 0:
            return right
        if hi is None:
            return _or(right, Until(left, right, RESIDUAL_WINDOW))
        return _or(right, _next(_unfold_nonstrict(left, right, 0, hi - 1)))
    if lo == 1 and hi is None:
        return Until(left, right, RESIDUAL_WINDOW)
    nhi = None if hi is None else hi - 1
    return _next(_unfold_nonstrict(left, right, lo - 1, nhi))


def unfold_bounded(f: StlFormula, horizon: int | None = None) -> StlFormula:
    """Expand bounded windows into nested next/or/and form.

    Also desugars first, so the result uses only atoms, Boolean
    connectives, strong next and the single residual until shape with
    window [1, inf).  With ``horizon`` given, finite window ends are
    clipped at horizon-1 and unbounded ends are made finite, which is
    sound because window positions clip at the trace boundary anyway.
    """
    f = desugar(f)

    def walk(node):
        if isinstance(node, (Atom, TrueFormula, FalseFormula)):
            return node
        if isinstance(node, Not):
            inner = walk(node.arg)
            if isinstance(inner, Not):
                return inner.arg
            if isinstance(inner, TrueFormula):
                return FALSE
            if isinstance(inner, FalseFormula):
                return TRUE
            return Not(inner)
        if isinstance(node, Or):
            return _or(walk(node.left), walk(node.right))
        if isinstance(node, Until):
            left = walk(node.left)
            right = walk(node.right)
            lo, hi = node.window.lo, node.window.hi
            if horizon is not None:
                cap = max(horizon - 1, 0)
                hi = cap if hi is None else min(hi, cap)
                if lo > hi:
                    return FALSE
            return _unfold_strict(left, right, lo, hi)
        if isinstance(node, Since):
            return Since(walk(node.left), walk(node.right), node.window)
        raise TypeError(f"unexpected node after desugaring: {node!r}")

    return walk(f)


# --- concrete syntax ----------------------------------------------------------

_STL_UNARY = {"F": Eventually, "G": Always, "P": Once, "H": Historically}
_STL_RESERVED = {"F", "G", "X", "Y", "U", "S", "P", "H", "T", "E", "true", "false"}


def _parse_window(t: P._Tokens, default=FULL_WINDOW) -> TimeWindow:
    if t.peek()[0] != "[":
        return default
    t.next()
    kind, lo, pos = t.next()
    if kind != "num" or lo != int(lo) or lo < 0:
        raise ParseError("window bounds must be naturals", pos)
    t.expect(",")
    kind, hi, pos = t.next()
    if kind == "ident" and hi == "inf":
        hi = None
    elif kind == "num" and hi == int(hi) and hi >= 0:
        hi = int(hi)
    else:
        raise ParseError("window upper bound must be a natural or inf", pos)
    t.expect("]")
    try:
        return TimeWindow(int(lo), hi)
    except ValueError as exc:
        raise ParseError(str(exc), pos) from None


class _StlParser:
    """Precedence: unary/temporal-unary > && > || > U/S > ->."""

    def __init__(self, tokens: P._Tokens):
        self.t = tokens

    def parse(self) -> StlFormula:
        node = self.parse_implies()
        kind, _, pos = self.t.peek()
        if kind != "eof":
            raise ParseError("trailing input after formula", pos)
        return node

    def parse_implies(self) -> StlFormula:
        node = self.parse_until()
        if self.t.peek()[0] == "->":
            self.t.next()
            return Implies(node, self.parse_implies())
        return node

    def parse_until(self) -> StlFormula:
        node = self.parse_or()
        while self.t.peek()[:2] in (("ident", "U"), ("ident", "S")):
            _, op, _ = self.t.next()
            window = _parse_window(self.t)
            right = self.parse_or()
            node = Until(node, right, window) if op == "U" else Since(node, right, window)
        return node

    def parse_or(self) -> StlFormula:
        node = self.parse_and()
        while self.t.peek()[0] == "||":
            self.t.next()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> StlFormula:
        node = self.parse_unary()
        while self.t.peek()[0] == "&&":
            self.t.next()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> StlFormula:
        kind, value, pos = self.t.peek()
        if kind == "!":
            self.t.next()
            return Not(self.parse_unary())
        if kind == "ident" and value in _STL_UNARY:
            self.t.next()
            window = _parse_window(self.t)
            return _STL_UNARY[value](self.parse_unary(), window)
        if kind == "ident" and value == "X":
            self.t.next()
            return Next(self.parse_unary())
        if kind == "ident" and value == "Y":
            self.t.next()
            return Prev(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> StlFormula:
        kind, value, pos = self.t.peek()
        if kind == "(":
            self.t.next()
            node = self.parse_implies()
            self.t.expect(")")
            return node
        if kind == "ident":
            if value in ("true", "T"):
                self.t.next()
                return TRUE
            if value == "false":
                self.t.next()
                return FALSE
            if value in _STL_RESERVED:
                raise ParseError(f"unexpected operator {value!r}", pos)
            self.t.next()
            op_kind, op, op_pos = self.t.next()
            if op_kind != "cmp":
                raise ParseError(f"expected comparison after variable {value!r}", op_pos)
            num_kind, k, num_pos = self.t.next()
            if num_kind != "num":
                raise ParseError("expected numeric constant in comparison", num_pos)
            return Atom(value, op, float(k))
        raise ParseError(f"expected formula, found {P._Tokens._show(self.t.peek())}", pos)


def parse_stl(text: str) -> StlFormula:
    return _StlParser(P._Tokens(text)).parse()


class _SreParser:
    """Precedence: postfix * > ; (concat) > & (intersect) > | (union)."""

    def __init__(self, tokens: P._Tokens):
        self.t = tokens

    def parse(self) -> SreExpr:
        node = self.parse_union()
        kind, _, pos = self.t.peek()
        if kind != "eof":
            raise ParseError("trailing input after expression", pos)
        return node

    def parse_union(self) -> SreExpr:
        node = self.parse_intersect()
        while self.t.peek()[0] == "|":
            self.t.next()
            node = SreUnion(node, self.parse_intersect())
        return node

    def parse_intersect(self) -> SreExpr:
        node = self.parse_concat()
        while self.t.peek()[0] == "&":
            self.t.next()
            node = SreIntersect(node, self.parse_concat())
        return node

    def parse_concat(self) -> SreExpr:
        node = self.parse_postfix()
        while self.t.peek()[0] == ";":
            self.t.next()
            node = SreConcat(node, self.parse_postfix())
        return node

    def parse_postfix(self) -> SreExpr:
        node = self.parse_primary()
        while self.t.peek()[0] == "*":
            self.t.next()
            node = SreStar(node)
        return node

    def parse_primary(self) -> SreExpr:
        kind, value, pos = self.t.peek()
        if kind == "cmp" and value == "<":
            self.t.next()
            inner = self.parse_union()
            close_kind, close_val, close_pos = self.t.next()
            if (close_kind, close_val) != ("cmp", ">"):
                raise ParseError("expected '>' closing duration brackets", close_pos)
            window = _parse_window(self.t, default=None)
            if window is None:
                raise ParseError("duration brackets need a window", close_pos)
            return SreDuration(inner, window)
        if kind == "ident" and value == "E":
            self.t.next()
            return EPSILON
        if kind == "(":
            mark = self.t.pos
            try:
                pred = P._PredParser(self.t).parse_or()
                return SreBasic(pred)
            except ParseError:
                self.t.pos = mark
            self.t.next()
            node = self.parse_union()
            self.t.expect(")")
            return node
        if kind in ("ident", "!"):
            pred = P._PredParser(self.t).parse_or()
            return SreBasic(pred)
        raise ParseError(f"expected expression, found {P._Tokens._show(self.t.peek())}", pos)


def parse_sre(text: str) -> SreExpr:
    return _SreParser(P._Tokens(text)).parse()


def parse_spec_text(text: str):
    """Parse a spec file body: optional first-line ``#lang stl|sre``."""
    lines = text.splitlines()
    lang = "stl"
    body_lines = []
    seen_content = False
    for line in lines:
        stripped = line.strip()
        if not seen_content and stripped.startswith("#lang"):
            lang = stripped.split()[-1].lower()
            if lang not in ("stl", "sre"):
                raise ParseError(f"unknown spec language {lang!r}")
            seen_content = True
            continue
        if stripped:
            seen_content = True
        body_lines.append(line)
    body = "\n".join(body_lines).strip()
    if not body:
        raise ParseError("empty specification")
    if lang == "stl":
        return "stl", parse_stl(body)
    return "sre", parse_sre(body)


# --- pretty printing ----------------------------------------------------------


def _window_suffix(w: TimeWindow) -> str:
    if w == FULL_WINDOW:
        return ""
    hi = "inf" if w.hi is None else w.hi
    return f"[{w.lo},{hi}]"


def print_stl(f: StlFormula) -> str:
    """Concrete syntax; reparsing the output rebuilds the same tree."""

    def prec(node):
        if isinstance(node, Implies):
            return 0
        if isinstance(node, (Until, Since)):
            return 1
        if isinstance(node, Or):
            return 2
        if isinstance(node, And):
            return 3
        return 4

    def wrap(node, limit):
        s = go(node)
        return f"({s})" if prec(node) < limit else s

    def go(node):
        if isinstance(node, Atom):
            return f"{node.var} {node.op} {P.fmt_const(node.value)}"
        if isinstance(node, TrueFormula):
            return "true"
        if isinstance(node, FalseFormula):
            return "false"
        if isinstance(node, Not):
            return f"!{wrap(node.arg, 4)}"
        if isinstance(node, Or):
            right = wrap(node.right, 3)
            if isinstance(node.right, Or):
                right = f"({go(node.right)})"
            return f"{wrap(node.left, 2)} || {right}"
        if isinstance(node, And):
            right = wrap(node.right, 4)
            return f"{wrap(node.left, 3)} && {right}"
        if isinstance(node, Implies):
            return f"{wrap(node.left, 1)} -> {wrap(node.right, 0)}"
        if isinstance(node, Until):
            right = wrap(node.right, 2)
            if isinstance(node.right, (Until, Since)):
                right = f"({go(node.right)})"
            return f"{wrap(node.left, 2)} U{_window_suffix(node.window)} {right}"
        if isinstance(node, Since):
            right = wrap(node.right, 2)
            if isinstance(node.right, (Until, Since)):
                right = f"({go(node.right)})"
            return f"{wrap(node.left, 2)} S{_window_suffix(node.window)} {right}"
        if isinstance(node, Eventually):
            return f"F{_window_suffix(node.window)} {wrap(node.arg, 4)}"
        if isinstance(node, Always):
            return f"G{_window_suffix(node.window)} {wrap(node.arg, 4)}"
        if isinstance(node, Once):
            return f"P{_window_suffix(node.window)} {wrap(node.arg, 4)}"
        if isinstance(node, Historically):
            return f"H{_window_suffix(node.window)} {wrap(node.arg, 4)}"
        if isinstance(node, Next):
            return f"X {wrap(node.arg, 4)}"
        if isinstance(node, Prev):
            return f"Y {wrap(node.arg, 4)}"
        raise TypeError(f"not an STL node: {node!r}")

    return go(f)


def print_sre(e: SreExpr) -> str:
    def prec(node):
        if isinstance(node, SreUnion):
            return 0
        if isinstance(node, SreIntersect):
            return 1
        if isinstance(node, SreConcat):
            return 2
        return 3

    def wrap(node, limit):
        s = go(node)
        return f"({s})" if prec(node) < limit else s

    def go(node):
        if isinstance(node, Epsilon):
            return "E"
        if isinstance(node, SreBasic):
            return P.print_predicate(node.pred)
        if isinstance(node, SreConcat):
            right = wrap(node.right, 3) if isinstance(node.right, SreConcat) else wrap(node.right, 2)
            return f"{wrap(node.left, 2)} ; {right}"
        if isinstance(node, SreIntersect):
            right = wrap(node.right, 2) if isinstance(node.right, SreIntersect) else wrap(node.right, 1)
            return f"{wrap(node.left, 1)} & {right}"
        if isinstance(node, SreUnion):
            right = wrap(node.right, 1) if isinstance(node.right, SreUnion) else wrap(node.right, 0)
            return f"{wrap(node.left, 0)} | {right}"
        if isinstance(node, SreStar):
            return f"({go(node.arg)})*"
        if isinstance(node, SreDuration):
            hi = "inf" if node.window.hi is None else node.window.hi
            return f"<{go(node.arg)}>[{node.window.lo},{hi}]"
        raise TypeError(f"not an SRE node: {node!r}")

    return go(e)

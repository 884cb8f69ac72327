"""Compiling specifications into symbolic automata.

STL goes through a finite-trace tableau: after desugaring and window
unfolding, every formula is a Boolean combination of comparison atoms,
strong next, and one residual until shape.  An automaton location is a
set of pending obligations, each tagged with the polarity under which it
must hold; consuming a sample discharges the atomic part as a transition
guard and defers the rest.  A location accepts when everything pending
is negative, since negated next-obligations hold vacuously once the
trace ends while positive ones still demand a successor.

Regular expressions compile compositionally with epsilon transitions,
which are eliminated before the automaton is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import predicate as P
from . import speclang as S
from .automaton import (
    SymbolicAutomaton,
    canonicalize,
    eps_eliminate,
    make_automaton,
    product,
    trim,
)
from .errors import UnsupportedFragmentError
from .predicate import comparison

_COMPLEMENT_OP = {"<": ">=", "<=": ">", ">": "<=", ">=": "<"}


def _atom_literal(atom: S.Atom, positive: bool) -> P.Pred:
    op = atom.op if positive else _COMPLEMENT_OP[atom.op]
    return comparison(atom.var, op, atom.value)


def _combine(alternatives_a, alternatives_b):
    out = []
    for nows_a, nexts_a in alternatives_a:
        for nows_b, nexts_b in alternatives_b:
            out.append((nows_a | nows_b, nexts_a | nexts_b))
    return out


_EMPTY = frozenset()


def _expand(node, positive, cache):
    """Alternatives (now-literals, deferred obligations) for one node."""
    key = (id(node), positive)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if isinstance(node, S.TrueFormula):
        alts = [(_EMPTY, _EMPTY)] if positive else []
    elif isinstance(node, S.FalseFormula):
        alts = [] if positive else [(_EMPTY, _EMPTY)]
    elif isinstance(node, S.Atom):
        alts = [(frozenset({_atom_literal(node, positive)}), _EMPTY)]
    elif isinstance(node, S.Not):
        alts = _expand(node.arg, not positive, cache)
    elif isinstance(node, S.Or):
        if positive:
            alts = _expand(node.left, True, cache) + _expand(node.right, True, cache)
        else:
            alts = _combine(
                _expand(node.left, False, cache), _expand(node.right, False, cache)
            )
    elif isinstance(node, S.And):
        if positive:
            alts = _combine(
                _expand(node.left, True, cache), _expand(node.right, True, cache)
            )
        else:
            alts = _expand(node.left, False, cache) + _expand(node.right, False, cache)
    elif isinstance(node, S.Next):
        alts = [(_EMPTY, frozenset({(node.arg, positive)}))]
    elif isinstance(node, S.Until):
        if node.window != S.RESIDUAL_WINDOW:
            raise ValueError(f"untranslated until window {node.window}")
        # one-step fixpoint: demand (right or (left and self)) at the successor
        unrolled = S._or(node.right, S._and(node.left, node))
        alts = [(_EMPTY, frozenset({(unrolled, positive)}))]
    else:
        raise TypeError(f"unexpected node in tableau: {node!r}")
    cache[key] = alts
    return alts


def _state_alternatives(state, cache):
    alts = [(_EMPTY, _EMPTY)]
    for obligation, positive in sorted(state, key=lambda e: (repr(e[0]), e[1])):
        alts = _combine(alts, _expand(obligation, positive, cache))
        if not alts:
            break
    pruned = []
    seen = set()
    for nows, nexts in alts:
        clause = tuple(sorted(nows, key=_literal_key))
        key = (clause, nexts)
        if key in seen:
            continue
        seen.add(key)
        if not P._clause_sat(clause or (P.TOP,), P._index(_clause_vars(clause) or ["_"])):
            continue
        pruned.append((clause, nexts))
    return pruned


def _literal_key(lit: P.Pred):
    if isinstance(lit, P.Cmp):
        return (lit.var, 0, lit.op, lit.k)
    return (lit.arg.var, 1, lit.arg.op, lit.arg.k)


def _clause_vars(clause):
    seen = []
    for lit in clause:
        v = lit.var if isinstance(lit, P.Cmp) else lit.arg.var
        if v not in seen:
            seen.append(v)
    return seen


def _guard_pred(clause) -> P.Pred:
    lits = P._minimize_clause(clause or (P.TOP,))
    node = lits[0]
    for lit in lits[1:]:
        node = P.And(node, lit)
    return node


def translate_stl(formula: S.StlFormula) -> SymbolicAutomaton:
    """Tableau translation of a future STL formula.

    The automaton accepts exactly the traces satisfying the formula at
    position 0.
    """
    _check_future(formula)
    core = S.unfold_bounded(formula)
    variables = tuple(sorted(S.stl_variables(formula)))

    cache: dict = {}
    start = frozenset({(core, True)})
    index = {start: 0}
    order = [start]
    transitions = []
    k = 0
    while k < len(order):
        state = order[k]
        k += 1
        for clause, nexts in _state_alternatives(state, cache):
            if nexts not in index:
                index[nexts] = len(order)
                order.append(nexts)
            transitions.append((index[state], _guard_pred(clause), index[nexts]))
    final = {
        index[s] for s in order if all(not positive for _, positive in s)
    }
    a = make_automaton(variables, len(order), {0}, final, transitions)
    return canonicalize(trim(a))


def _check_future(formula: S.StlFormula):
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, S.PAST_OPERATORS):
            name = {S.Since: "S", S.Once: "P", S.Historically: "H", S.Prev: "Y"}[type(node)]
            raise UnsupportedFragmentError(
                f"past operator {name!r} is not translatable to an automaton"
            )
        for attr in ("arg", "left", "right"):
            child = getattr(node, attr, None)
            if child is not None:
                stack.append(child)


# --- regular expressions -------------------------------------------------------


@dataclass
class _Frag:
    n: int
    initial: set
    final: set
    transitions: list
    eps: list


def _shift(frag: _Frag, off: int) -> _Frag:
    return _Frag(
        frag.n,
        {q + off for q in frag.initial},
        {q + off for q in frag.final},
        [(s + off, g, d + off) for s, g, d in frag.transitions],
        [(s + off, d + off) for s, d in frag.eps],
    )


def _frag_automaton(frag: _Frag, variables) -> SymbolicAutomaton:
    return make_automaton(
        variables, frag.n, frag.initial, frag.final, frag.transitions, frag.eps
    )


def _from_automaton(a: SymbolicAutomaton) -> _Frag:
    return _Frag(
        a.n_locations,
        set(a.initial),
        set(a.final),
        list(a.transitions),
        list(a.eps),
    )


def _build(expr: S.SreExpr, variables) -> _Frag:
    if isinstance(expr, S.Epsilon):
        return _Frag(1, {0}, {0}, [], [])
    if isinstance(expr, S.SreBasic):
        if not P.is_sat(P.to_dnf(expr.pred)):
            # an unsatisfiable proposition still matches the empty segment
            return _Frag(1, {0}, {0}, [], [])
        return _Frag(2, {0}, {0, 1}, [(0, expr.pred, 1), (1, expr.pred, 1)], [])
    if isinstance(expr, S.SreConcat):
        left = _build(expr.left, variables)
        right = _shift(_build(expr.right, variables), left.n)
        eps = left.eps + right.eps + [(f, i) for f in left.final for i in right.initial]
        return _Frag(
            left.n + right.n,
            left.initial,
            right.final,
            left.transitions + right.transitions,
            eps,
        )
    if isinstance(expr, S.SreUnion):
        left = _build(expr.left, variables)
        right = _shift(_build(expr.right, variables), left.n)
        return _Frag(
            left.n + right.n,
            left.initial | right.initial,
            left.final | right.final,
            left.transitions + right.transitions,
            left.eps + right.eps,
        )
    if isinstance(expr, S.SreIntersect):
        left = eps_eliminate(_frag_automaton(_build(expr.left, variables), variables))
        right = eps_eliminate(_frag_automaton(_build(expr.right, variables), variables))
        return _from_automaton(product(left, right))
    if isinstance(expr, S.SreStar):
        inner = _build(expr.arg, variables)
        hub = inner.n
        eps = inner.eps + [(hub, q) for q in inner.initial] + [(f, hub) for f in inner.final]
        return _Frag(inner.n + 1, {hub}, {hub}, inner.transitions, eps)
    if isinstance(expr, S.SreDuration):
        inner = eps_eliminate(_frag_automaton(_build(expr.arg, variables), variables))
        w = expr.window
        cap = w.lo if w.hi is None else w.hi
        saturating = w.hi is None

        def sid(q, c):
            return q * (cap + 1) + c

        transitions = []
        for src, guard, dst in inner.transitions:
            for c in range(cap + 1):
                nc = min(c + 1, cap) if saturating else c + 1
                if nc <= cap:
                    transitions.append((sid(src, c), guard, sid(dst, nc)))
        final = set()
        for q in inner.final:
            for c in range(cap + 1):
                if saturating:
                    ok = c == cap
                else:
                    ok = w.lo <= c <= cap
                if ok:
                    final.add(sid(q, c))
        return _Frag(
            inner.n_locations * (cap + 1),
            {sid(q, 0) for q in inner.initial},
            final,
            transitions,
            [],
        )
    raise TypeError(f"not an SRE node: {expr!r}")


def translate_sre(expr: S.SreExpr) -> SymbolicAutomaton:
    """Compile a signal regular expression to an epsilon-free automaton
    accepting exactly the traces the expression matches end to end."""
    variables = tuple(sorted(S.sre_variables(expr)))
    frag = _build(expr, variables)
    a = eps_eliminate(_frag_automaton(frag, variables))
    return canonicalize(trim(a))

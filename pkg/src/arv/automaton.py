"""Symbolic automata over real-valued valuations and their weighted form.

Transitions carry predicates instead of letters.  The algebra here
(epsilon elimination, product, union, mintermization, subset
determinization, complementation) keeps the symbolic guards intact and
relies on interval reasoning for satisfiability, so no solver is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from . import predicate as P
from .distance import PointwiseDistance, compile_weight
from .errors import ParseError
from .intervals import Box
from .predicate import Dnf
from .semiring import Semiring


@dataclass(frozen=True)
class SymbolicAutomaton:
    """Locations with predicate-guarded transitions.

    ``eps`` transitions are only permitted while composing fragments;
    monitor-facing automata are epsilon-free.
    """

    variables: tuple[str, ...]
    n_locations: int
    initial: frozenset[int]
    final: frozenset[int]
    transitions: tuple[tuple[int, P.Pred, int], ...]
    eps: tuple[tuple[int, int], ...] = ()

    @property
    def eps_free(self) -> bool:
        return not self.eps

    def __eq__(self, other):
        if not isinstance(other, SymbolicAutomaton):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.n_locations == other.n_locations
            and self.initial == other.initial
            and self.final == other.final
            and sorted(self.transitions, key=_trans_key) == sorted(other.transitions, key=_trans_key)
            and sorted(self.eps) == sorted(other.eps)
        )

    def __hash__(self):
        return hash((self.variables, self.n_locations, self.initial, self.final))


def _trans_key(t):
    src, guard, dst = t
    return (src, dst, P.print_predicate(guard))


def make_automaton(variables, n_locations, initial, final, transitions, eps=()) -> SymbolicAutomaton:
    """Normalize and prune: unsatisfiable guards and duplicate edges go."""
    pruned = []
    seen = set()
    for src, guard, dst in transitions:
        key = (src, P.print_predicate(guard), dst)
        if key in seen:
            continue
        seen.add(key)
        if not P.is_sat(P.to_dnf(guard)):
            continue
        pruned.append((src, guard, dst))
    return SymbolicAutomaton(
        variables=tuple(variables),
        n_locations=n_locations,
        initial=frozenset(initial),
        final=frozenset(final),
        transitions=tuple(pruned),
        eps=tuple(sorted(set(map(tuple, eps)))),
    )


def accepts(a: SymbolicAutomaton, trace) -> bool:
    """NFA membership for an epsilon-free automaton."""
    if not a.eps_free:
        raise ValueError("acceptance requires an epsilon-free automaton")
    by_src: dict = {}
    for src, guard, dst in a.transitions:
        by_src.setdefault(src, []).append((guard, dst))
    current = set(a.initial)
    for sample in trace.samples:
        nxt = set()
        for q in current:
            for guard, dst in by_src.get(q, ()):
                if dst not in nxt and P.evaluate(sample, guard):
                    nxt.add(dst)
        current = nxt
        if not current:
            break
    return bool(current & a.final)


def eps_closure(a: SymbolicAutomaton) -> list[set[int]]:
    succ: list[set[int]] = [set() for _ in range(a.n_locations)]
    for src, dst in a.eps:
        succ[src].add(dst)
    closures = []
    for q in range(a.n_locations):
        seen = {q}
        stack = [q]
        while stack:
            s = stack.pop()
            for t in succ[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        closures.append(seen)
    return closures


def eps_eliminate(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Saturate guarded transitions through epsilon moves and drop them."""
    if a.eps_free:
        return a
    closures = eps_closure(a)
    transitions = []
    for q in range(a.n_locations):
        for s in closures[q]:
            for src, guard, dst in a.transitions:
                if src == s:
                    transitions.append((q, guard, dst))
    final = {q for q in range(a.n_locations) if closures[q] & a.final}
    return make_automaton(a.variables, a.n_locations, a.initial, final, transitions)


def union(a: SymbolicAutomaton, b: SymbolicAutomaton) -> SymbolicAutomaton:
    off = a.n_locations
    variables = tuple(sorted(set(a.variables) | set(b.variables)))
    return make_automaton(
        variables,
        a.n_locations + b.n_locations,
        set(a.initial) | {q + off for q in b.initial},
        set(a.final) | {q + off for q in b.final},
        list(a.transitions) + [(s + off, g, d + off) for s, g, d in b.transitions],
        list(a.eps) + [(s + off, d + off) for s, d in b.eps],
    )


def product(a: SymbolicAutomaton, b: SymbolicAutomaton) -> SymbolicAutomaton:
    """Synchronous intersection; guards conjoin and unsatisfiable pairs drop."""
    if not (a.eps_free and b.eps_free):
        raise ValueError("product requires epsilon-free automata")
    variables = tuple(sorted(set(a.variables) | set(b.variables)))
    a_out: dict = {}
    for src, g, dst in a.transitions:
        a_out.setdefault(src, []).append((g, dst))
    b_out: dict = {}
    for src, g, dst in b.transitions:
        b_out.setdefault(src, []).append((g, dst))

    index: dict = {}
    order: list = []

    def state_id(pair):
        if pair not in index:
            index[pair] = len(order)
            order.append(pair)
        return index[pair]

    transitions = []
    frontier = [(qa, qb) for qa in sorted(a.initial) for qb in sorted(b.initial)]
    for pair in frontier:
        state_id(pair)
    k = 0
    while k < len(order):
        qa, qb = order[k]
        k += 1
        for g1, d1 in a_out.get(qa, ()):
            for g2, d2 in b_out.get(qb, ()):
                guard = P.And(g1, g2)
                if not P.is_sat(P.to_dnf(guard)):
                    continue
                transitions.append((index[(qa, qb)], guard, state_id((d1, d2))))
    initial = {index[(qa, qb)] for qa in a.initial for qb in b.initial}
    final = {
        i for (pair, i) in ((p, index[p]) for p in order) if pair[0] in a.final and pair[1] in b.final
    }
    return make_automaton(variables, len(order), initial, final, transitions)


# --- minterms ----------------------------------------------------------------


def _guard_boxes(guard: P.Pred, variables) -> list[Box]:
    return P.dnf_boxes(P.to_dnf(guard), variables)


def _refine(cells, region_boxes):
    """Split each (boxes, covers) cell into its parts inside and outside
    the region."""
    from .intervals import subtract_boxes

    out = []
    for boxes, covers in cells:
        inside = []
        for piece in boxes:
            for rbox in region_boxes:
                chunk = piece.intersect(rbox)
                if not chunk.is_empty:
                    inside.append(chunk)
        outside = boxes
        for rbox in region_boxes:
            outside = subtract_boxes(outside, rbox)
        if inside:
            out.append((inside, covers + (True,)))
        if outside:
            out.append((outside, covers + (False,)))
    return out


def _location_cells(a: SymbolicAutomaton, out_transitions, variables):
    """Partition the valuation space by the guards leaving one location.

    Returns (cell predicate, [transition index]) pairs plus the leftover
    cell covered by no guard (with an empty index list).
    """
    cells = [([Box.full(len(variables))], ())]
    for t_idx, (_, guard, _) in out_transitions:
        cells = _refine(cells, _guard_boxes(guard, variables))
    result = []
    for boxes, flags in cells:
        covered = [
            out_transitions[i][0] for i, inside in enumerate(flags) if inside
        ]
        pred = P.boxes_to_dnf(boxes, variables).to_pred()
        result.append((pred, covered))
    return result


def mintermize(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Rewrite each location's outgoing guards into pairwise-disjoint,
    satisfiable cells; targets are preserved."""
    if not a.eps_free:
        raise ValueError("mintermize requires an epsilon-free automaton")
    variables = a.variables or ("_",)
    by_src: dict = {}
    for i, t in enumerate(a.transitions):
        by_src.setdefault(t[0], []).append((i, t))
    transitions = []
    for src in range(a.n_locations):
        outs = by_src.get(src, [])
        if not outs:
            continue
        for pred, covered in _location_cells(a, outs, variables):
            for t_idx in covered:
                transitions.append((src, pred, a.transitions[t_idx][2]))
    return make_automaton(a.variables, a.n_locations, a.initial, a.final, transitions)


def determinize(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Subset construction over minterm cells, completed with a sink."""
    if not a.eps_free:
        raise ValueError("determinize requires an epsilon-free automaton")
    variables = a.variables or ("_",)
    by_src: dict = {}
    for i, t in enumerate(a.transitions):
        by_src.setdefault(t[0], []).append((i, t))

    index: dict = {}
    order: list = []

    def state_id(subset):
        if subset not in index:
            index[subset] = len(order)
            order.append(subset)
        return index[subset]

    start = frozenset(a.initial)
    state_id(start)
    transitions = []
    k = 0
    while k < len(order):
        subset = order[k]
        k += 1
        outs = [it for q in sorted(subset) for it in by_src.get(q, [])]
        if not outs:
            transitions.append((index[subset], P.TOP, state_id(frozenset())))
            continue
        for pred, covered in _location_cells(a, outs, variables):
            targets = frozenset(a.transitions[i][2] for i in covered)
            transitions.append((index[subset], pred, state_id(targets)))
    final = {index[s] for s in order if s & a.final}
    return make_automaton(a.variables, len(order), {index[start]}, final, transitions)


def complement(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Complement by determinizing (complete, with sink) and flipping
    the accepting set."""
    det = determinize(a)
    flipped = set(range(det.n_locations)) - set(det.final)
    return replace(det, final=frozenset(flipped))


def is_deterministic_complete(a: SymbolicAutomaton, probe_values=None) -> bool:
    """True when every location has exactly one enabled transition for
    every valuation over the probe grid (defaults to guard thresholds
    plus offset points)."""
    if not a.eps_free or len(a.initial) != 1:
        return False
    thresholds = set()
    for _, guard, _ in a.transitions:
        for clause in P.to_dnf(guard).clauses:
            for lit in clause:
                if isinstance(lit, P.Cmp):
                    thresholds.add(lit.k)
                elif isinstance(lit, P.Not):
                    thresholds.add(lit.arg.k)
    if probe_values is None:
        probe_values = sorted(
            {t for k in (thresholds or {0.0}) for t in (k - 1.0, k - 0.5, k, k + 0.5, k + 1.0)}
        )
    variables = a.variables or ("_",)
    by_src: dict = {}
    for src, guard, dst in a.transitions:
        by_src.setdefault(src, []).append(guard)
    from itertools import product as iproduct

    for q in range(a.n_locations):
        guards = by_src.get(q, [])
        for point in iproduct(probe_values, repeat=len(variables)):
            v = dict(zip(variables, point))
            if sum(1 for g in guards if P.evaluate(v, g)) != 1:
                return False
    return True


# --- normalization -----------------------------------------------------------


def canonicalize(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Renumber locations in BFS order from the initial set; unreachable
    locations keep their relative order at the end."""
    by_src: dict = {}
    for src, guard, dst in a.transitions:
        by_src.setdefault(src, []).append((P.print_predicate(guard), dst, guard))
    eps_by_src: dict = {}
    for src, dst in a.eps:
        eps_by_src.setdefault(src, []).append(dst)

    order = []
    seen = set()
    queue = sorted(a.initial)
    for q in queue:
        seen.add(q)
        order.append(q)
    while queue:
        q = queue.pop(0)
        succs = [(g_str, dst) for g_str, dst, _ in sorted(by_src.get(q, []), key=lambda x: (x[0], x[1]))]
        succs += [("", dst) for dst in sorted(eps_by_src.get(q, []))]
        for _, dst in succs:
            if dst not in seen:
                seen.add(dst)
                order.append(dst)
                queue.append(dst)
    for q in range(a.n_locations):
        if q not in seen:
            order.append(q)
    renum = {old: new for new, old in enumerate(order)}
    transitions = tuple(
        sorted(
            ((renum[s], g, renum[d]) for s, g, d in a.transitions),
            key=_trans_key,
        )
    )
    eps = tuple(sorted((renum[s], renum[d]) for s, d in a.eps))
    return SymbolicAutomaton(
        variables=a.variables,
        n_locations=a.n_locations,
        initial=frozenset(renum[q] for q in a.initial),
        final=frozenset(renum[q] for q in a.final),
        transitions=transitions,
        eps=eps,
    )


def trim(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Drop locations that lie on no initial-to-final path.  Initial
    locations survive even when dead so the automaton stays runnable."""
    if not a.eps_free:
        raise ValueError("trim requires an epsilon-free automaton")
    fwd = set(a.initial)
    frontier = list(a.initial)
    succ: dict = {}
    pred: dict = {}
    for src, _, dst in a.transitions:
        succ.setdefault(src, set()).add(dst)
        pred.setdefault(dst, set()).add(src)
    while frontier:
        q = frontier.pop()
        for nxt in succ.get(q, ()):
            if nxt not in fwd:
                fwd.add(nxt)
                frontier.append(nxt)
    bwd = set(q for q in a.final if q in fwd)
    frontier = list(bwd)
    while frontier:
        q = frontier.pop()
        for prv in pred.get(q, ()):
            if prv in fwd and prv not in bwd:
                bwd.add(prv)
                frontier.append(prv)
    keep = sorted(bwd | set(a.initial))
    renum = {old: new for new, old in enumerate(keep)}
    kept = set(keep)
    transitions = [
        (renum[s], g, renum[d]) for s, g, d in a.transitions if s in kept and d in kept
    ]
    return make_automaton(
        a.variables,
        len(keep),
        {renum[q] for q in a.initial},
        {renum[q] for q in a.final if q in kept},
        transitions,
    )


# --- weighted form -----------------------------------------------------------


@dataclass(frozen=True)
class WeightedAutomaton:
    """A symbolic automaton whose transition weights are, by definition,
    the distance between the consumed valuation and the guard."""

    base: SymbolicAutomaton
    semiring: Semiring
    dist: PointwiseDistance
    guards: tuple[Dnf, ...] = field(compare=False)

    @property
    def variables(self):
        return self.base.variables


def decorate(a: SymbolicAutomaton, semiring: Semiring, dist: PointwiseDistance) -> WeightedAutomaton:
    """Attach the weight rule: guards normalize to conjunction-minimal
    DNF (required whenever multiplication is not idempotent) and
    unsatisfiable transitions are pruned."""
    if not a.eps_free:
        raise ValueError("decorate requires an epsilon-free automaton")
    transitions = []
    guards = []
    for src, guard, dst in a.transitions:
        dnf = P.wedge_minimize(P.to_dnf(guard))
        if not P.is_sat(dnf):
            continue
        transitions.append((src, guard, dst))
        guards.append(dnf)
    base = SymbolicAutomaton(
        variables=a.variables,
        n_locations=a.n_locations,
        initial=a.initial,
        final=a.final,
        transitions=tuple(transitions),
    )
    return WeightedAutomaton(base=base, semiring=semiring, dist=dist, guards=tuple(guards))


def compiled_weights(w: WeightedAutomaton):
    """Per-transition ``valuation -> weight`` closures."""
    return [compile_weight(g, w.semiring, w.dist) for g in w.guards]


# --- serialization -----------------------------------------------------------


def to_dot(a: SymbolicAutomaton) -> str:
    lines = ["digraph automaton {", "  rankdir=LR;"]
    for q in range(a.n_locations):
        shape = "doublecircle" if q in a.final else "circle"
        style = ' style=bold color=blue' if q in a.initial else ""
        lines.append(f'  {q} [shape={shape}{style} label="q{q}"];')
    for src, guard, dst in a.transitions:
        label = P.print_predicate(guard).replace('"', '\\"')
        lines.append(f'  {src} -> {dst} [label="{label}"];')
    for src, dst in a.eps:
        lines.append(f'  {src} -> {dst} [label="ε" style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(a: SymbolicAutomaton) -> str:
    a = canonicalize(a)
    doc = {
        "variables": list(a.variables),
        "locations": list(range(a.n_locations)),
        "initial": sorted(a.initial),
        "final": sorted(a.final),
        "transitions": [
            {"src": s, "guard": P.print_predicate(g), "dst": d} for s, g, d in a.transitions
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _expect_key(doc, key, path):
    if key not in doc:
        raise ParseError(f"missing key {key!r} at {path}")
    return doc[key]


def from_json(text: str) -> SymbolicAutomaton:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("schema error at $: expected an object")
    variables = _expect_key(doc, "variables", "$")
    locations = _expect_key(doc, "locations", "$")
    initial = _expect_key(doc, "initial", "$")
    final = _expect_key(doc, "final", "$")
    raw_transitions = _expect_key(doc, "transitions", "$")
    if not isinstance(locations, list) or not all(isinstance(q, int) for q in locations):
        raise ParseError("schema error at $.locations: expected a list of ints")
    n = len(locations)
    for name, group in (("initial", initial), ("final", final)):
        if not isinstance(group, list) or not all(isinstance(q, int) and 0 <= q < n for q in group):
            raise ParseError(f"schema error at $.{name}: expected location ids")
    transitions = []
    for i, t in enumerate(raw_transitions):
        if not isinstance(t, dict):
            raise ParseError(f"schema error at $.transitions[{i}]: expected an object")
        src = _expect_key(t, "src", f"$.transitions[{i}]")
        dst = _expect_key(t, "dst", f"$.transitions[{i}]")
        guard_text = _expect_key(t, "guard", f"$.transitions[{i}]")
        if not (isinstance(src, int) and 0 <= src < n and isinstance(dst, int) and 0 <= dst < n):
            raise ParseError(f"schema error at $.transitions[{i}]: bad src/dst")
        try:
            guard = P.parse_predicate(guard_text)
        except ParseError as exc:
            raise ParseError(f"schema error at $.transitions[{i}].guard: {exc}") from None
        transitions.append((src, guard, dst))
    return make_automaton(tuple(variables), n, initial, final, transitions)

"""Trace measurement over weighted symbolic automata.

One dynamic-programming pass keeps, per location, the best cost of
reaching it with the consumed prefix; adding a sample costs one sweep
over the transitions, independent of trace length.  The robustness
verdict combines the distances to a specification and to its negation
into a signed degree, with the sign resolved against the qualitative
semantics when the degree is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import automaton as A
from . import speclang as S
from .distance import PointwiseDistance, Valuation, default_distance, point_dist, vpd
from .errors import UnboundVariableError, UnsupportedFragmentError
from .predicate import evaluate as pred_eval
from .semiring import Semiring, SemiringValue, to_signed
from .speclang import SreExpr, StlFormula, Trace
from .translate import translate_sre, translate_stl


class ValueStream:
    """Online evaluator: feed samples one at a time.

    After ``k`` steps, ``value`` equals the batch computation on the
    first ``k`` samples.  ``path_exists`` tells whether the automaton
    has any accepting transition sequence of the consumed length at all,
    which distinguishes "far from the language" from "the language has
    no trace of this length".
    """

    def __init__(self, w: A.WeightedAutomaton):
        self.w = w
        base = w.base
        weights = A.compiled_weights(w)
        self._edges = [
            (src, dst, weights[i]) for i, (src, guard, dst) in enumerate(base.transitions)
        ]
        self._semiring = w.semiring
        self._costs = [
            w.semiring.e_times if q in base.initial else w.semiring.e_plus
            for q in range(base.n_locations)
        ]
        self._reach = [q in base.initial for q in range(base.n_locations)]
        self._finals = sorted(base.final)
        self._steps = 0
        self._closed = False

    @property
    def steps(self) -> int:
        return self._steps

    @property
    def costs(self) -> dict:
        return dict(enumerate(self._costs))

    @property
    def value(self) -> SemiringValue:
        return self._semiring.sum(self._costs[q] for q in self._finals)

    @property
    def path_exists(self) -> bool:
        return any(self._reach[q] for q in self._finals)

    def step(self, valuation: Valuation) -> SemiringValue:
        if self._closed:
            raise ValueError("stream is closed")
        sr = self._semiring
        e_plus = sr.e_plus
        oplus = sr.oplus
        otimes = sr.otimes
        costs = self._costs
        reach = self._reach
        new_costs = [e_plus] * len(costs)
        new_reach = [False] * len(costs)
        try:
            for src, dst, weight in self._edges:
                c = costs[src]
                if c != e_plus:
                    new_costs[dst] = oplus(new_costs[dst], otimes(c, weight(valuation)))
                if reach[src]:
                    new_reach[dst] = True
        except KeyError as exc:
            raise UnboundVariableError(f"unbound variable {exc.args[0]!r}") from None
        self._costs = new_costs
        self._reach = new_reach
        self._steps += 1
        return self.value

    def close(self):
        self._closed = True


def _check_variables(w: A.WeightedAutomaton, trace: Trace):
    missing = set(w.variables) - set(trace.variables) - {"_"}
    if missing:
        raise UnboundVariableError(f"trace lacks variables {sorted(missing)}")


def trace_value(trace: Trace, w: A.WeightedAutomaton) -> SemiringValue:
    """Best accepting cost of the whole trace (batch form)."""
    _check_variables(w, trace)
    stream = ValueStream(w)
    out = w.semiring.e_plus
    for sample in trace.samples:
        out = stream.step(sample)
    return out


def _value_and_reach(trace: Trace, w: A.WeightedAutomaton):
    _check_variables(w, trace)
    stream = ValueStream(w)
    for sample in trace.samples:
        stream.step(sample)
    return stream.value, stream.path_exists


@dataclass(frozen=True)
class RobustnessVerdict:
    """Signed robustness degree plus the qualitative verdict.

    ``rho`` is positive when the trace satisfies the specification with
    slack, negative when it violates it, and carries sign -inf/+inf when
    the specification (or its negation) has no trace of this length at
    all.  ``satisfied`` resolves the rho == 0 boundary.
    """

    rho: float
    satisfied: bool
    d_phi: SemiringValue
    d_not_phi: SemiringValue


def _rho(v1, exists1, v2, exists2, semiring: Semiring) -> float:
    if not exists1:
        return -math.inf
    if v1 == semiring.e_times:
        if not exists2:
            return math.inf
        return to_signed(v2, negate=False)
    return to_signed(v1, negate=True)


def _reject_past(formula: StlFormula):
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, S.PAST_OPERATORS):
            name = {
                S.Since: "S",
                S.Once: "P",
                S.Historically: "H",
                S.Prev: "Y",
            }[type(node)]
            raise UnsupportedFragmentError(
                f"past operator {name!r} is not translatable to an automaton"
            )
        for attr in ("arg", "left", "right"):
            child = getattr(node, attr, None)
            if child is not None:
                stack.append(child)


def build_monitor_pair(spec, semiring: Semiring, dist: PointwiseDistance | None = None):
    """The weighted automata for a specification and its negation."""
    if dist is None:
        dist = default_distance(semiring)
    if isinstance(spec, StlFormula):
        _reject_past(spec)
        pos = translate_stl(spec)
        neg = translate_stl(S.negate(spec))
    elif isinstance(spec, SreExpr):
        pos = translate_sre(spec)
        neg = A.complement(pos)
    else:
        raise TypeError(f"not a specification: {spec!r}")
    return A.decorate(pos, semiring, dist), A.decorate(neg, semiring, dist)


def _qualitative(trace: Trace, spec) -> bool:
    if isinstance(spec, StlFormula):
        return S.eval_stl(trace, 0, spec)
    return S.sre_accepts(trace, spec)


def robustness(
    trace: Trace,
    spec,
    semiring: Semiring,
    dist: PointwiseDistance | None = None,
) -> RobustnessVerdict:
    """Signed distance of the trace to the specification language."""
    w_pos, w_neg = build_monitor_pair(spec, semiring, dist)
    v1, exists1 = _value_and_reach(trace, w_pos)
    v2, exists2 = _value_and_reach(trace, w_neg)
    return RobustnessVerdict(
        rho=_rho(v1, exists1, v2, exists2, semiring),
        satisfied=_qualitative(trace, spec),
        d_phi=v1,
        d_not_phi=v2,
    )


def robustness_prefix_series(
    trace: Trace,
    spec,
    semiring: Semiring,
    dist: PointwiseDistance | None = None,
) -> list[tuple[int, float, bool]]:
    """(t, rho, satisfied) for every prefix, in one pass per automaton.

    The qualitative column comes from simulating the positive automaton
    set-wise, so the whole series costs one sweep per sample.
    """
    w_pos, w_neg = build_monitor_pair(spec, semiring, dist)
    _check_variables(w_pos, trace)
    _check_variables(w_neg, trace)
    pos_stream = ValueStream(w_pos)
    neg_stream = ValueStream(w_neg)

    base = w_pos.base
    by_src: dict = {}
    for i, (src, guard, dst) in enumerate(base.transitions):
        by_src.setdefault(src, []).append((w_pos.guards[i], dst))
    current = set(base.initial)

    out = []
    for t, sample in enumerate(trace.samples, start=1):
        pos_stream.step(sample)
        neg_stream.step(sample)
        nxt = set()
        for q in current:
            for dnf, dst in by_src.get(q, ()):
                if dst not in nxt and any(
                    all(pred_eval(sample, lit) for lit in clause) for clause in dnf.clauses
                ):
                    nxt.add(dst)
        current = nxt
        satisfied = bool(current & base.final)
        rho = _rho(
            pos_stream.value,
            pos_stream.path_exists,
            neg_stream.value,
            neg_stream.path_exists,
            semiring,
        )
        out.append((t, rho, satisfied))
    return out


def deterministic_robustness(
    trace: Trace, w: A.WeightedAutomaton
) -> RobustnessVerdict:
    """Single-pass verdict for a deterministic, complete automaton.

    The negation's distance is read off the non-accepting locations of
    the same cost vector, so no second automaton is needed.
    """
    base = w.base
    _check_variables(w, trace)
    if len(base.initial) != 1:
        raise ValueError("deterministic evaluation needs a single initial location")
    stream = ValueStream(w)
    run = next(iter(base.initial))
    by_src: dict = {}
    for i, (src, guard, dst) in enumerate(base.transitions):
        by_src.setdefault(src, []).append((w.guards[i], dst))
    for sample in trace.samples:
        stream.step(sample)
        taken = [
            dst
            for dnf, dst in by_src.get(run, ())
            if any(all(pred_eval(sample, lit) for lit in clause) for clause in dnf.clauses)
        ]
        if len(taken) != 1:
            raise ValueError("automaton is not deterministic and complete")
        run = taken[0]
    satisfied = run in base.final
    finals = set(base.final)
    non_finals = [q for q in range(base.n_locations) if q not in finals]
    costs = stream._costs
    sr = w.semiring
    v_acc = sr.sum(costs[q] for q in sorted(finals))
    v_rej = sr.sum(costs[q] for q in non_finals)
    exists_acc = stream.path_exists
    exists_rej = any(stream._reach[q] for q in non_finals)
    if satisfied:
        rho = math.inf if not exists_rej else to_signed(v_rej, negate=False)
    else:
        rho = -math.inf if not exists_acc else to_signed(v_acc, negate=True)
    return RobustnessVerdict(rho=rho, satisfied=satisfied, d_phi=v_acc, d_not_phi=v_rej)


# --- brute-force oracles -------------------------------------------------------


def path_enumeration_value(
    trace: Trace, w: A.WeightedAutomaton, max_paths: int = 10**6
) -> SemiringValue:
    """Fold over every structurally-accepting transition sequence.

    Enumerates all length-n location paths from an initial to a final
    location, multiplies the per-step valuation distances, and sums the
    path weights.  Independent of the dynamic-programming order.
    """
    base = w.base
    _check_variables(w, trace)
    n = len(trace)
    by_src: dict = {}
    for i, (src, guard, dst) in enumerate(base.transitions):
        by_src.setdefault(src, []).append((i, dst))

    counts = {q: 1 for q in base.initial}
    for _ in range(n):
        nxt: dict = {}
        for q, c in counts.items():
            for _, dst in by_src.get(q, ()):
                nxt[dst] = nxt.get(dst, 0) + c
        counts = nxt
    total = sum(c for q, c in counts.items() if q in base.final)
    if total > max_paths:
        raise ValueError(f"{total} accepting paths exceed the bound {max_paths}")

    sr = w.semiring
    acc = sr.e_plus

    def walk(q, depth, weight):
        nonlocal acc
        if depth == n:
            if q in base.final:
                acc = sr.oplus(acc, weight)
            return
        sample = trace.samples[depth]
        for i, dst in by_src.get(q, ()):
            step_w = vpd(sample, w.guards[i], sr, w.dist)
            walk(dst, depth + 1, sr.otimes(weight, step_w))

    for q in sorted(base.initial):
        walk(q, 0, sr.e_times)
    return acc


def trace_distance_brute_force(
    trace: Trace,
    spec,
    semiring: Semiring,
    dist: PointwiseDistance,
    grid,
    max_candidates: int = 10**7,
) -> SemiringValue:
    """Fold of the trace-to-language distance over an explicit grid.

    Enumerates every same-length trace with values on the grid, keeps
    the ones satisfying the specification, and sums the multiplied
    pointwise sample distances.  Exact for closed comparisons whose
    thresholds lie on the grid.
    """
    variables = trace.variables
    n = len(trace)
    values = [float(g) for g in grid]
    total = len(values) ** (len(variables) * n)
    if total > max_candidates:
        raise ValueError(f"{total} candidate traces exceed the bound {max_candidates}")

    from itertools import product

    acc = semiring.e_plus
    points = list(product(values, repeat=len(variables)))
    for combo in product(points, repeat=n):
        candidate = Trace(variables, [dict(zip(variables, pt)) for pt in combo])
        if not _qualitative(candidate, spec):
            continue
        weight = semiring.e_times
        for s_orig, s_cand in zip(trace.samples, candidate.samples):
            for x in variables:
                weight = semiring.otimes(weight, point_dist(s_orig[x], s_cand[x], dist))
        acc = semiring.oplus(acc, weight)
    return acc

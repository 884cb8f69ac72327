"""Distances between valuations and predicates.

The central operation here scores a single trace sample against a guard
predicate in DNF: a satisfied literal contributes the multiplicative
identity, a violated literal the pointwise distance of the sample value
to the threshold, disjunction maps to semiring addition and conjunction
to semiring multiplication.  An unsatisfiable input scores the additive
identity (the distance to an empty set).
"""

from __future__ import annotations

import enum
from itertools import product

from .errors import UnboundVariableError
from .predicate import (
    Bottom,
    Cmp,
    Dnf,
    Not,
    Top,
    _clause_sat,
    _index,
    dnf_variables,
    evaluate,
    evaluate_dnf,
    is_sat,
)
from .semiring import Semiring, SemiringValue

Valuation = dict


class PointwiseDistance(enum.Enum):
    """Distance between two reals: exact-match indicator or absolute gap."""

    DISCRETE01 = "discrete01"
    ABS_DIFF = "absdiff"


def point_dist(a: float, b: float, kind: PointwiseDistance) -> SemiringValue:
    if kind is PointwiseDistance.DISCRETE01:
        return 0.0 if a == b else 1.0
    return abs(a - b)


def default_distance(semiring: Semiring) -> PointwiseDistance:
    """The pointwise distance each shipped semiring is paired with."""
    if semiring.name == "boolean":
        return PointwiseDistance.DISCRETE01
    return PointwiseDistance.ABS_DIFF


def _literal_weight(valuation, lit, dist, semiring):
    if isinstance(lit, Top):
        return semiring.e_times
    if isinstance(lit, Bottom):
        return semiring.e_plus
    cmpnode = lit.arg if isinstance(lit, Not) else lit
    try:
        v = valuation[cmpnode.var]
    except KeyError:
        raise UnboundVariableError(f"unbound variable {cmpnode.var!r}") from None
    if evaluate(valuation, lit):
        return semiring.e_times
    return point_dist(v, cmpnode.k, dist)


def vpd(
    valuation: Valuation,
    dnf: Dnf,
    semiring: Semiring,
    dist: PointwiseDistance,
    demonstration: bool = False,
) -> SemiringValue:
    """Distance between one valuation and a DNF predicate.

    Without multiplicative idempotence the result is only exact on
    conjunction-minimal input, so non-minimal input is rejected for such
    semirings unless ``demonstration`` explicitly allows it.
    """
    if (
        not semiring.multiplicatively_idempotent
        and not dnf.wedge_minimal
        and not demonstration
    ):
        raise ValueError(f"semiring {semiring.name!r} requires ∧-minimal DNF")
    idx = _index(dnf_variables(dnf) or ["_"])
    acc = semiring.e_plus
    for clause in dnf.clauses:
        if not _clause_sat(clause, idx):
            continue
        acc = semiring.oplus(
            acc,
            semiring.product(
                _literal_weight(valuation, lit, dist, semiring) for lit in clause
            ),
        )
    return acc


def vpd_brute_force(
    valuation: Valuation,
    dnf: Dnf,
    semiring: Semiring,
    dist: PointwiseDistance,
    grid: range,
) -> SemiringValue:
    """Literal fold of the set-distance definition over a finite grid.

    Sums, with semiring addition, over every grid valuation satisfying
    the predicate, the product over variables of the pointwise
    distances.  Exact for the real-valued definition when thresholds and
    valuation values lie on the grid and all literals are closed.
    """
    variables = dnf_variables(dnf)
    if not variables:
        return semiring.e_times if is_sat(dnf) else semiring.e_plus
    acc = semiring.e_plus
    for point in product(grid, repeat=len(variables)):
        candidate = dict(zip(variables, (float(x) for x in point)))
        if not evaluate_dnf(candidate, dnf):
            continue
        weight = semiring.product(
            point_dist(valuation[x], candidate[x], dist) for x in variables
        )
        acc = semiring.oplus(acc, weight)
    return acc


def compile_weight(dnf: Dnf, semiring: Semiring, dist: PointwiseDistance):
    """Build a fast ``valuation -> weight`` closure for one guard.

    Unsatisfiable clauses are dropped up front; the per-step loop then
    only touches live literals.  Behaviour matches ``vpd`` exactly.
    """
    idx = _index(dnf_variables(dnf) or ["_"])
    clauses = []
    for clause in dnf.clauses:
        if not _clause_sat(clause, idx):
            continue
        lits = []
        for lit in clause:
            if isinstance(lit, Top):
                continue
            if isinstance(lit, Cmp):
                lits.append((lit.var, lit.op, lit.k, False))
            else:
                c = lit.arg
                lits.append((c.var, c.op, c.k, True))
        clauses.append(tuple(lits))

    e_plus = semiring.e_plus
    e_times = semiring.e_times
    oplus = semiring.oplus
    otimes = semiring.otimes
    discrete = dist is PointwiseDistance.DISCRETE01

    def weight(valuation):
        best = e_plus
        for lits in clauses:
            acc = e_times
            for var, op, k, negated in lits:
                v = valuation[var]
                sat = (v < k) if op == "<" else (v <= k)
                if negated:
                    sat = not sat
                if sat:
                    continue
                d = (0.0 if v == k else 1.0) if discrete else abs(v - k)
                acc = otimes(acc, d)
            best = oplus(best, acc)
        return best

    return weight

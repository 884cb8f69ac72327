"""Semiring-parametric robustness monitoring for discrete-time STL and
signal regular expressions, via symbolic weighted automata."""

from .automaton import (
    SymbolicAutomaton,
    WeightedAutomaton,
    complement,
    decorate,
    determinize,
    eps_eliminate,
    from_json,
    mintermize,
    product,
    to_dot,
    to_json,
    union,
)
from .distance import PointwiseDistance, default_distance, point_dist, vpd, vpd_brute_force
from .monitor import (
    RobustnessVerdict,
    ValueStream,
    deterministic_robustness,
    path_enumeration_value,
    robustness,
    robustness_prefix_series,
    trace_distance_brute_force,
    trace_value,
)
from .predicate import (
    Dnf,
    evaluate,
    is_sat,
    minimal_dnf,
    parse_predicate,
    print_predicate,
    to_dnf,
    wedge_minimize,
)
from .semiring import BOOLEAN, MINMAX, TROPICAL, Semiring, to_signed
from .speclang import (
    Trace,
    desugar,
    eval_sre,
    eval_stl,
    negate,
    parse_spec_text,
    parse_sre,
    parse_stl,
    print_sre,
    print_stl,
    read_trace_csv,
    unfold_bounded,
    write_trace_csv,
)
from .translate import translate_sre, translate_stl

__all__ = [
    "BOOLEAN",
    "MINMAX",
    "TROPICAL",
    "Dnf",
    "PointwiseDistance",
    "RobustnessVerdict",
    "Semiring",
    "SymbolicAutomaton",
    "Trace",
    "ValueStream",
    "WeightedAutomaton",
    "complement",
    "decorate",
    "default_distance",
    "desugar",
    "deterministic_robustness",
    "determinize",
    "eps_eliminate",
    "eval_sre",
    "eval_stl",
    "evaluate",
    "from_json",
    "is_sat",
    "minimal_dnf",
    "mintermize",
    "negate",
    "parse_predicate",
    "parse_spec_text",
    "parse_sre",
    "parse_stl",
    "path_enumeration_value",
    "point_dist",
    "print_predicate",
    "print_sre",
    "print_stl",
    "product",
    "read_trace_csv",
    "robustness",
    "robustness_prefix_series",
    "to_dnf",
    "to_dot",
    "to_json",
    "to_signed",
    "trace_distance_brute_force",
    "trace_value",
    "translate_sre",
    "translate_stl",
    "unfold_bounded",
    "union",
    "vpd",
    "vpd_brute_force",
    "wedge_minimize",
    "write_trace_csv",
]

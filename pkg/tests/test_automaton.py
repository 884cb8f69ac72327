import random

import pytest

from arv import predicate as P
from arv.automaton import (
    accepts,
    canonicalize,
    complement,
    decorate,
    determinize,
    eps_eliminate,
    from_json,
    is_deterministic_complete,
    make_automaton,
    mintermize,
    product,
    to_dot,
    to_json,
    trim,
    union,
)
from arv.distance import PointwiseDistance, default_distance
from arv.errors import ParseError
from arv.fixtures import example_automaton
from arv.generators import all_traces, random_automaton
from arv.semiring import MINMAX, TROPICAL
from arv.speclang import Trace


def g(text):
    return P.parse_predicate(text)


def single_word_acceptor(literals):
    transitions = [(i, lit, i + 1) for i, lit in enumerate(literals)]
    return make_automaton(("x",), len(literals) + 1, {0}, {len(literals)}, transitions)


def traces_upto(variables, values, max_len):
    out = []
    for n in range(1, max_len + 1):
        out.extend(all_traces(variables, values, n))
    return out


def test_make_automaton_prunes_unsat_and_duplicates():
    a = make_automaton(
        ("x",),
        2,
        {0},
        {1},
        [
            (0, g("x <= 3"), 1),
            (0, g("x <= 3"), 1),
            (0, g("x >= 5 && x < 5"), 1),
        ],
    )
    assert len(a.transitions) == 1


def test_eps_eliminate_preserves_concat_language():
    left = single_word_acceptor([g("x <= 2")])
    right = single_word_acceptor([g("x >= 5")])
    # concatenation gadget with an epsilon bridge
    glued = make_automaton(
        ("x",),
        4,
        {0},
        {3},
        [(0, g("x <= 2"), 1), (2, g("x >= 5"), 3)],
        eps=[(1, 2)],
    )
    flat = eps_eliminate(glued)
    assert flat.eps_free
    for t in traces_upto(("x",), range(0, 7), 3):
        expected = len(t) == 2 and t.samples[0]["x"] <= 2 and t.samples[1]["x"] >= 5
        assert accepts(flat, t) == expected


def test_product_with_top_loop_is_identity():
    top = make_automaton(("x",), 1, {0}, {0}, [(0, P.TOP, 0)])
    a = single_word_acceptor([g("x <= 2"), g("x >= 4")])
    prod = product(top, a)
    for t in traces_upto(("x",), range(0, 6), 3):
        assert accepts(prod, t) == accepts(a, t)


def test_union_of_single_word_acceptors():
    a = single_word_acceptor([g("x <= 0")])
    b = single_word_acceptor([g("x >= 9")])
    u = union(a, b)
    for t in traces_upto(("x",), range(0, 10), 2):
        expected = len(t) == 1 and (t.samples[0]["x"] <= 0 or t.samples[0]["x"] >= 9)
        assert accepts(u, t) == expected


def test_mintermize_cells():
    a = make_automaton(
        ("x",), 2, {0}, {1}, [(0, g("x <= 3"), 1), (0, g("x <= 5"), 1)]
    )
    m = mintermize(a)
    rendered = sorted(P.print_predicate(guard) for _, guard, _ in m.transitions)
    assert rendered == ["x <= 3", "x <= 5 && !(x <= 3)"]


def test_mintermize_guard_disjointness():
    rng = random.Random(21)
    for _ in range(25):
        a = random_automaton(rng, ("x", "y"), max_locations=4, max_transitions=6)
        m = mintermize(a)
        by_src = {}
        for src, guard, dst in m.transitions:
            by_src.setdefault(src, set()).add(P.print_predicate(guard))
        for t in all_traces(("x", "y"), range(0, 5), 1):
            v = t.samples[0]
            for src, guards in by_src.items():
                sat = [gd for gd in guards if P.evaluate(v, P.parse_predicate(gd))]
                assert len(sat) <= 1
        for t in traces_upto(("x", "y"), range(0, 5), 2):
            assert accepts(m, t) == accepts(a, t)


def test_determinize_and_complement():
    rng = random.Random(33)
    for _ in range(15):
        a = random_automaton(rng, ("x",), max_locations=4, max_transitions=5)
        d = determinize(a)
        c = complement(a)
        assert is_deterministic_complete(d)
        for t in traces_upto(("x",), range(0, 6), 3):
            assert accepts(d, t) == accepts(a, t)
            assert accepts(c, t) == (not accepts(a, t))
        d2 = determinize(d)
        for t in traces_upto(("x",), range(0, 6), 2):
            assert accepts(d2, t) == accepts(d, t)


def test_trim_keeps_language():
    a = make_automaton(
        ("x",),
        4,
        {0},
        {1},
        [(0, g("x <= 1"), 1), (0, g("x >= 3"), 2), (3, P.TOP, 1)],
    )
    t = trim(a)
    assert t.n_locations == 2
    for trc in traces_upto(("x",), range(0, 5), 2):
        assert accepts(t, trc) == accepts(a, trc)


def test_decorate_minimizes_guards_and_prunes():
    a = make_automaton(
        ("x",),
        2,
        {0},
        {1},
        [(0, g("x <= 3 && x <= 5"), 1), (1, P.TOP, 1)],
    )
    w = decorate(a, TROPICAL, PointwiseDistance.ABS_DIFF)
    assert all(dnf.wedge_minimal for dnf in w.guards)
    assert [set(c) for c in w.guards[0].clauses] == [{P.Cmp("x", "<=", 3.0)}]
    # a top guard weighs nothing under any valuation
    from arv.distance import vpd

    assert vpd({"x": 123.0}, w.guards[1], TROPICAL, w.dist) == 0.0


def test_fixture_dot_shape():
    dot = to_dot(example_automaton())
    assert dot.count("shape=") == 3
    assert dot.count("->") == 4


def test_json_roundtrip():
    rng = random.Random(43)
    for _ in range(20):
        a = random_automaton(rng, ("x", "y"), max_locations=4, max_transitions=6)
        text = to_json(a)
        back = from_json(text)
        assert back == canonicalize(a)
        assert to_json(back) == text


def test_guard_rendering_roundtrip():
    guard = g("x <= 3 && !(y < 6)")
    assert P.parse_predicate(P.print_predicate(guard)) == guard
    assert P.to_dnf(P.parse_predicate(P.print_predicate(guard))) == P.to_dnf(guard)


def test_from_json_schema_errors():
    with pytest.raises(ParseError, match="invalid JSON"):
        from_json("{nope")
    with pytest.raises(ParseError, match=r"\$\.locations"):
        from_json('{"variables": [], "locations": "x", "initial": [], "final": [], "transitions": []}')
    with pytest.raises(ParseError, match=r"transitions\[0\]"):
        from_json(
            '{"variables": ["x"], "locations": [0], "initial": [0], "final": [0],'
            ' "transitions": [{"src": 0, "dst": 5, "guard": "x <= 1"}]}'
        )
    with pytest.raises(ParseError, match=r"guard"):
        from_json(
            '{"variables": ["x"], "locations": [0], "initial": [0], "final": [0],'
            ' "transitions": [{"src": 0, "dst": 0, "guard": "x <="}]}'
        )


def test_monitors_share_one_automaton():
    from arv.monitor import ValueStream, trace_value

    auto = example_automaton()
    w = decorate(auto, MINMAX, default_distance(MINMAX))
    t1 = Trace(("x", "y"), [{"x": 1.0, "y": 9.0}, {"x": 2.0, "y": 9.0}])
    t2 = Trace(("x", "y"), [{"x": 9.0, "y": 0.0}, {"x": 9.0, "y": 0.0}])
    s1, s2 = ValueStream(w), ValueStream(w)
    for a, b in zip(t1.samples, t2.samples):
        s1.step(a)
        s2.step(b)
    assert s1.value == trace_value(t1, w)
    assert s2.value == trace_value(t2, w)

"""Batch command-line front end.

Subcommands: ``monitor`` (verdict or prefix series for trace files),
``translate`` (spec to DOT/JSON), ``oracle`` (randomized cross-check
suites), ``fixtures`` (reproduce the worked example tables) and ``vpd``
(score one valuation against one predicate).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from pathlib import Path

from . import automaton as A
from . import fixtures as FX
from . import monitor as M
from . import predicate as P
from .distance import PointwiseDistance, default_distance, vpd, vpd_brute_force
from .errors import ArvError
from .generators import (
    CLOSED_OPS,
    random_automaton,
    random_dnf,
    random_stl,
    random_trace,
    random_valuation,
)
from .semiring import BOOLEAN, MINMAX, SEMIRINGS, TROPICAL, by_name
from .speclang import parse_spec_text, read_trace_csv
from .translate import translate_stl


def _json_value(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _verdict_doc(verdict: M.RobustnessVerdict) -> dict:
    return {
        "rho": _json_value(verdict.rho),
        "satisfied": verdict.satisfied,
        "d_phi": _json_value(verdict.d_phi),
        "d_not_phi": _json_value(verdict.d_not_phi),
    }


def _atomic_write(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _load_spec(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_spec_text(text)


def _out_path(base: str, trace_path: str, many: bool) -> Path:
    out = Path(base)
    if not many:
        return out
    stem = Path(trace_path).stem
    return out.with_name(f"{out.stem}.{stem}{out.suffix}")


def cmd_monitor(args) -> int:
    _, spec = _load_spec(args.spec)
    semiring = by_name(args.semiring)
    mode = args.mode
    if args.prefix_series:
        mode = "prefix-series"
    many = len(args.trace) > 1
    for trace_path in args.trace:
        trace = read_trace_csv(trace_path)
        if mode == "prefix-series":
            series = M.robustness_prefix_series(trace, spec, semiring)
            lines = ["t,rho,satisfied"]
            lines += [
                f"{t},{_csv_num(rho)},{str(sat).lower()}" for t, rho, sat in series
            ]
            text = "\n".join(lines) + "\n"
            target = args.prefix_series or args.out
            if target:
                _atomic_write(_out_path(target, trace_path, many), text)
            else:
                sys.stdout.write(text)
            final_t, final_rho, final_sat = series[-1]
            print(
                f"{trace_path}: prefix series of {final_t} rows, "
                f"final rho = {_fmt_num(final_rho)} ({'satisfied' if final_sat else 'violated'})"
            )
        else:
            verdict = M.robustness(trace, spec, semiring)
            doc = _verdict_doc(verdict)
            status = "satisfied" if verdict.satisfied else "violated"
            print(
                f"{trace_path}: rho = {_fmt_num(verdict.rho)} ({status}), "
                f"d_phi = {_fmt_num(verdict.d_phi)}, d_not_phi = {_fmt_num(verdict.d_not_phi)}"
            )
            if args.json or args.out:
                text = json.dumps(doc, indent=2) + "\n"
                if args.out:
                    _atomic_write(_out_path(args.out, trace_path, many), text)
                else:
                    sys.stdout.write(text)
    return 0


def _fmt_num(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def _csv_num(x: float) -> str:
    return _fmt_num(x)


def cmd_translate(args) -> int:
    kind, spec = _load_spec(args.spec)
    if kind == "stl":
        auto = translate_stl(spec)
    else:
        from .translate import translate_sre

        auto = translate_sre(spec)
    print(
        f"{args.spec}: {auto.n_locations} locations, {len(auto.transitions)} transitions, "
        f"{len(auto.final)} accepting"
    )
    if args.dot:
        _atomic_write(Path(args.dot), A.to_dot(auto))
    if args.json_out:
        _atomic_write(Path(args.json_out), A.to_json(auto))
    return 0


def cmd_vpd(args) -> int:
    valuation = {}
    for binding in args.valuation.split(","):
        name, _, value = binding.partition("=")
        valuation[name.strip()] = float(value)
    pred = P.parse_predicate(args.pred)
    semiring = by_name(args.semiring)
    dist = (
        PointwiseDistance(args.dist) if args.dist else default_distance(semiring)
    )
    dnf = P.to_dnf(pred)
    if not args.raw:
        dnf = P.wedge_minimize(dnf)
    value = vpd(valuation, dnf, semiring, dist, demonstration=args.raw)
    print(_fmt_num(value))
    return 0


# --- randomized cross-check suites -------------------------------------------


def vpd_cross_check(cases: int, seed: int) -> int:
    """Distance engine vs grid fold: closed literals, thresholds in
    [-8, 8], valuations and grid on [-12, 12]."""
    rng = random.Random(seed)
    grid = range(-12, 13)
    mismatches = 0
    for _ in range(cases):
        variables = ["x"] if rng.random() < 0.6 else ["x", "y"]
        dnf = random_dnf(rng, variables, ops=CLOSED_OPS)
        valuation = random_valuation(rng, variables)
        expected = vpd_brute_force(valuation, dnf, MINMAX, PointwiseDistance.ABS_DIFF, grid)
        if vpd(valuation, dnf, MINMAX, PointwiseDistance.ABS_DIFF) != expected:
            mismatches += 1
        minimized = P.wedge_minimize(dnf)
        expected = vpd_brute_force(valuation, dnf, TROPICAL, PointwiseDistance.ABS_DIFF, grid)
        if vpd(valuation, minimized, TROPICAL, PointwiseDistance.ABS_DIFF) != expected:
            mismatches += 1
    return mismatches


def value_cross_check(cases: int, seed: int) -> int:
    """Dynamic program vs explicit path enumeration on random automata."""
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(cases):
        variables = ("x", "y")
        auto = random_automaton(rng, variables, max_transitions=6)
        trace = random_trace(rng, variables, rng.randint(1, 5))
        for semiring in (BOOLEAN, MINMAX, TROPICAL):
            w = A.decorate(auto, semiring, default_distance(semiring))
            if M.trace_value(trace, w) != M.path_enumeration_value(trace, w):
                mismatches += 1
    return mismatches


def _guards_closed(auto: A.SymbolicAutomaton) -> bool:
    for _, guard, _ in auto.transitions:
        for clause in P.to_dnf(guard).clauses:
            for lit in clause:
                if isinstance(lit, P.Cmp) and lit.op == "<":
                    return False
                if isinstance(lit, P.Not) and lit.arg.op == "<=":
                    return False
    return True


def language_distance_cross_check(cases: int, seed: int) -> int:
    """End-to-end pipeline vs the trace-to-language grid fold.

    Formulas are resampled until the compiled guards contain only closed
    comparisons, so the grid attains every infimum.
    """
    rng = random.Random(seed)
    grid = range(0, 5)
    mismatches = 0
    done = 0
    while done < cases:
        formula = random_stl(rng, ["x"], depth=2, ops=CLOSED_OPS)
        auto = translate_stl(formula)
        if not _guards_closed(auto):
            continue
        done += 1
        trace = random_trace(rng, ("x",), rng.randint(1, 3), 0, 4)
        for semiring in (BOOLEAN, MINMAX, TROPICAL):
            dist = default_distance(semiring)
            w = A.decorate(auto, semiring, dist)
            got = M.trace_value(trace, w)
            expected = M.trace_distance_brute_force(trace, formula, semiring, dist, grid)
            if got != expected:
                mismatches += 1
    return mismatches


def cmd_oracle(args) -> int:
    total = 0
    checks = [
        ("valuation-predicate distance", vpd_cross_check, args.vpd_cases),
        ("trace value vs path enumeration", value_cross_check, args.value_cases),
        ("pipeline vs language distance", language_distance_cross_check, args.language_cases),
    ]
    for label, fn, cases in checks:
        mism = fn(cases, args.seed)
        total += mism
        print(f"{label}: {cases} cases, {mism} mismatches")
    print(f"total mismatches: {total}")
    return 0 if total == 0 else 1


# --- fixtures -----------------------------------------------------------------


def cmd_fixtures(_args) -> int:
    trace = FX.example_trace()
    auto = FX.example_automaton()
    failures = 0

    print("conjunction minimization, min-plus distance for x = 6:")
    raw = P.to_dnf(P.parse_predicate("x <= 3 && x <= 5"))
    minimized = P.wedge_minimize(raw)
    got_raw = vpd({"x": 6.0}, raw, TROPICAL, PointwiseDistance.ABS_DIFF, demonstration=True)
    got_min = vpd({"x": 6.0}, minimized, TROPICAL, PointwiseDistance.ABS_DIFF)
    for label, got, expected in (("raw", got_raw, 4.0), ("minimized", got_min, 3.0)):
        ok = got == expected
        failures += 0 if ok else 1
        print(f"  {label:>9}: {_fmt_num(got)} (expected {_fmt_num(expected)}) {'PASS' if ok else 'FAIL'}")

    published = {"boolean": (FX.BOOLEAN_TABLE, FX.BOOLEAN_FINAL), "minmax": (FX.MINMAX_TABLE, FX.MINMAX_FINAL)}
    for name in ("boolean", "minmax", "tropical"):
        semiring = SEMIRINGS[name]
        w = A.decorate(auto, semiring, default_distance(semiring))
        if name in published:
            table, final_expected = published[name]
            source = "published run"
        else:
            table = {
                q: [FX.state_costs_by_paths(trace, w, i)[q] for i in range(len(trace) + 1)]
                for q in range(auto.n_locations)
            }
            final_expected = FX.TROPICAL_FINAL
            source = "path-enumeration oracle"
        print(f"{name} cost table (expected from {source}):")
        stream = M.ValueStream(w)
        columns = [stream.costs]
        for sample in trace.samples:
            stream.step(sample)
            columns.append(stream.costs)
        for q in range(auto.n_locations):
            row = [columns[i][q] for i in range(len(columns))]
            cells = []
            for i, got in enumerate(row):
                expected = float(table[q][i])
                ok = got == expected
                failures += 0 if ok else 1
                cells.append(f"{_fmt_num(got)}{'' if ok else '!FAIL'}")
            print(f"  q{q}: " + " ".join(f"{c:>6}" for c in cells))
        final = stream.value
        ok = final == final_expected
        failures += 0 if ok else 1
        print(f"  final value: {_fmt_num(final)} (expected {_fmt_num(final_expected)}) {'PASS' if ok else 'FAIL'}")

    print("all cells PASS" if failures == 0 else f"{failures} cells FAILED")
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="arv",
        description="Semiring-parametric robustness monitoring over symbolic weighted automata",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mon = sub.add_parser("monitor", help="measure traces against a specification")
    p_mon.add_argument("--spec", required=True, help="spec file (#lang stl|sre, default stl)")
    p_mon.add_argument("--trace", required=True, action="append", help="trace CSV (repeatable)")
    p_mon.add_argument("--semiring", default="minmax", choices=sorted(SEMIRINGS))
    p_mon.add_argument("--mode", default="final", choices=["final", "prefix-series"])
    p_mon.add_argument("--prefix-series", metavar="PATH", help="write per-prefix CSV here")
    p_mon.add_argument("--json", action="store_true", help="print the verdict as JSON")
    p_mon.add_argument("--out", help="write the verdict/series to this path")
    p_mon.set_defaults(fn=cmd_monitor)

    p_tr = sub.add_parser("translate", help="compile a specification to an automaton")
    p_tr.add_argument("--spec", required=True)
    p_tr.add_argument("--dot", help="write GraphViz here")
    p_tr.add_argument("--json", dest="json_out", help="write the JSON form here")
    p_tr.set_defaults(fn=cmd_translate)

    p_or = sub.add_parser("oracle", help="run the randomized cross-check suites")
    p_or.add_argument("--vpd-cases", type=int, default=1000)
    p_or.add_argument("--value-cases", type=int, default=500)
    p_or.add_argument("--language-cases", type=int, default=200)
    p_or.add_argument("--seed", type=int, default=2024)
    p_or.set_defaults(fn=cmd_oracle)

    p_fx = sub.add_parser("fixtures", help="reproduce the worked example tables")
    p_fx.set_defaults(fn=cmd_fixtures)

    p_vpd = sub.add_parser("vpd", help="distance of one valuation to one predicate")
    p_vpd.add_argument("--valuation", required=True, help='e.g. "x=6,y=2"')
    p_vpd.add_argument("--pred", required=True, help='e.g. "x <= 3 && x <= 5"')
    p_vpd.add_argument("--semiring", default="minmax", choices=sorted(SEMIRINGS))
    p_vpd.add_argument("--dist", choices=[d.value for d in PointwiseDistance])
    p_vpd.add_argument(
        "--raw",
        action="store_true",
        help="skip conjunction minimization (demonstration mode)",
    )
    p_vpd.set_defaults(fn=cmd_vpd)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ArvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

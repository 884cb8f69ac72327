import json

import pytest

from arv.cli import main
from arv.speclang import Trace, read_trace_csv, write_trace_csv


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def spec_file(tmp_path):
    return write(tmp_path / "spec.stl", "G(x <= 10)\n")


@pytest.fixture
def trace_file(tmp_path):
    return write(tmp_path / "t.csv", "x\n4\n7\n2\n9\n")


def test_monitor_final_json(spec_file, trace_file, tmp_path, capsys):
    out = tmp_path / "verdict.json"
    code = main(
        ["monitor", "--spec", spec_file, "--trace", trace_file, "--semiring", "minmax", "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["rho"] == 1.0
    assert doc["satisfied"] is True
    printed = capsys.readouterr().out
    assert "rho = 1" in printed


def test_monitor_infinite_rho_spelling(tmp_path, capsys):
    spec = write(tmp_path / "psi5.stl", "G(a >= 5 && a < 5)\n")
    trace = write(tmp_path / "t.csv", "a\n1\n2\n")
    code = main(["monitor", "--spec", spec, "--trace", trace, "--semiring", "minmax", "--json"])
    assert code == 0
    printed = capsys.readouterr().out
    doc = json.loads(printed[printed.index("{") :])
    assert doc["rho"] == "-inf"
    assert doc["satisfied"] is False


def test_monitor_prefix_series(spec_file, tmp_path, capsys):
    trace = write(tmp_path / "t.csv", "x\n4\n7\n2\n9\n")
    out = tmp_path / "series.csv"
    code = main(
        [
            "monitor",
            "--spec",
            spec_file,
            "--trace",
            trace,
            "--semiring",
            "tropical",
            "--prefix-series",
            str(out),
        ]
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,rho,satisfied"
    assert len(lines) == 5
    assert lines[1].startswith("1,")


def test_monitor_multiple_traces(spec_file, tmp_path):
    t1 = write(tmp_path / "a.csv", "x\n1\n")
    t2 = write(tmp_path / "b.csv", "x\n20\n")
    out = tmp_path / "v.json"
    code = main(
        ["monitor", "--spec", spec_file, "--trace", t1, "--trace", t2, "--out", str(out)]
    )
    assert code == 0
    doc_a = json.loads((tmp_path / "v.a.json").read_text())
    doc_b = json.loads((tmp_path / "v.b.json").read_text())
    assert doc_a["rho"] == 9.0
    assert doc_b["rho"] == -10.0


def test_monitor_exit_codes(tmp_path):
    bad_spec = write(tmp_path / "bad.stl", "G(x <= )\n")
    trace = write(tmp_path / "t.csv", "x\n1\n")
    assert main(["monitor", "--spec", bad_spec, "--trace", trace]) == 2

    spec = write(tmp_path / "s.stl", "G(y <= 1)\n")
    assert main(["monitor", "--spec", spec, "--trace", trace]) == 3

    past = write(tmp_path / "p.stl", "Y x <= 1\n")
    assert main(["monitor", "--spec", past, "--trace", trace]) == 4

    bad_trace = write(tmp_path / "bad.csv", "x\noops\n")
    assert main(["monitor", "--spec", spec_file_text(tmp_path), "--trace", bad_trace]) == 2


def spec_file_text(tmp_path):
    return write(tmp_path / "ok.stl", "G(x <= 1)\n")


def test_monitor_sre_spec(tmp_path, capsys):
    spec = write(tmp_path / "s.sre", "#lang sre\nx <= 3\n")
    trace = write(tmp_path / "t.csv", "x\n1\n2\n")
    code = main(["monitor", "--spec", spec, "--trace", trace, "--semiring", "minmax", "--json"])
    assert code == 0
    printed = capsys.readouterr().out
    doc = json.loads(printed[printed.index("{") :])
    assert doc["rho"] == 1.0


def test_translate_outputs(tmp_path, capsys):
    spec = write(tmp_path / "phi1.stl", "F (x <= 5 && G[0,1](x <= 3 && y > 6))\n")
    dot = tmp_path / "a.dot"
    jsn = tmp_path / "a.json"
    code = main(["translate", "--spec", spec, "--dot", str(dot), "--json", str(jsn)])
    assert code == 0
    text = dot.read_text()
    assert text.count("shape=") == 3
    assert text.count("->") == 4
    doc = json.loads(jsn.read_text())
    assert len(doc["locations"]) == 3
    assert len(doc["transitions"]) == 4
    assert "3 locations" in capsys.readouterr().out


def test_vpd_subcommand(capsys):
    code = main(
        ["vpd", "--valuation", "x=6", "--pred", "x <= 3 && x <= 5", "--semiring", "tropical", "--raw"]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == "4"
    code = main(
        ["vpd", "--valuation", "x=6", "--pred", "x <= 3 && x <= 5", "--semiring", "tropical"]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == "3"


def test_fixtures_subcommand(capsys):
    assert main(["fixtures"]) == 0
    out = capsys.readouterr().out
    assert "all cells PASS" in out
    assert "!FAIL" not in out


def test_oracle_subcommand_small(capsys):
    code = main(
        ["oracle", "--vpd-cases", "30", "--value-cases", "15", "--language-cases", "8", "--seed", "5"]
    )
    assert code == 0
    assert "total mismatches: 0" in capsys.readouterr().out


def test_csv_roundtrip_value_identical(tmp_path):
    import random

    rng = random.Random(123)
    trace = Trace(
        ("w", "v"),
        [
            {"w": float(rng.randint(-100, 100)), "v": rng.random() * 10}
            for _ in range(25)
        ],
    )
    path = tmp_path / "t.csv"
    write_trace_csv(trace, path)
    back = read_trace_csv(path)
    assert back.variables == trace.variables
    assert back.samples == trace.samples

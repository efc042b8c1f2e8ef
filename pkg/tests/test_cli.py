import json
from pathlib import Path

import jsonschema
import pytest

import formring
from formring import cli
from formring.graded import Unresolved
from formring.instances import InstanceError, corpus_paths, parse_instance

CORPUS = Path(formring.__file__).parent / "corpus"
GOLDEN = CORPUS / "golden"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json", "--no-timings")
    return code, json.loads(out)


# ------------------------------------------------------------------ instances


def test_parse_instance_roundtrip():
    inst = parse_instance("name: t\nvariables: x, y\nambient:\nideal: x^2, y^2  # comment\ncandidates: x, y; x\nnmax: 4\n")
    assert inst.name == "t" and inst.n_max == 4
    assert [str(f) for f in inst.ideal] == ["x^2", "y^2"]
    assert inst.candidates == [["x", "y"], ["x"]]
    assert not inst.has_sv


@pytest.mark.parametrize("text", [
    "ideal: x",
    "variables: x\nideal: w",
    "variables: x\nideal: x\nbogus: 1",
    "variables: x\nideal: x\nnmax: zero",
    "variables: x\nideal: x\nnmax: 0",
    "variables: x, y\nX: x",
    "variables: x\n",
    "variables: x\nideal: x\nideal: x",
    "variables: x, x\nideal: x",
])
def test_parse_instance_errors(text):
    with pytest.raises(InstanceError):
        parse_instance(text)


def test_corpus_has_required_instances():
    names = {p.stem for p in corpus_paths()}
    assert {"example-xy-xz", "example-2.4", "principal-x", "line-xy", "triangle", "product-diagonal"} <= names


# ------------------------------------------------------------------ commands


def test_check_example_24(capsys):
    code, rep = run_json(capsys, "check", CORPUS / "example-2.4.ideal")
    assert code == 0
    assert {k: rep["verdicts"][k]["status"] for k in ("i", "i_prime", "ii", "iii")} == dict.fromkeys(
        ("i", "i_prime", "ii", "iii"), "holds")


def test_check_sec2_records_divergence(capsys):
    code, rep = run_json(capsys, "check", CORPUS / "example-xy-xz.ideal")
    assert code == 0
    assert rep["result"]["audit"]["divergence"] is True
    assert rep["proxies"]["equidimensional"] is False


def test_svcycle_two_seeds(capsys):
    code, rep = run_json(capsys, "svcycle", CORPUS / "lines-xy.sv", "--seed", 1, "--seed", 2)
    assert code == 0 and rep["seeds"] == [1, 2]
    assert [t["bezout"]["total"] for t in rep["result"]["traces"]] == [4, 4]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FORMRING_SEED", "7")
    code, rep = run_json(capsys, "svcycle", CORPUS / "transverse.sv")
    assert code == 0 and rep["seeds"] == [7]


@pytest.mark.parametrize("command", ["gb", "dim", "minprimes", "rees", "assocgraded", "spread",
                                     "symbolic", "closure", "check", "distinguished"])
def test_every_command_validates(capsys, command):
    code, rep = run_json(capsys, command, CORPUS / "triangle.ideal")
    assert code == 0, rep["reason"]
    jsonschema.validate(rep, cli.load_schema())
    assert rep["command"] == command and rep["instance"] == "triangle"


def test_gb_lex_order(capsys):
    code, rep = run_json(capsys, "gb", CORPUS / "example-2.4.ideal", "--order", "lex")
    assert rep["result"]["basis"] == ["x^2", "y^2"]


def test_spread_with_prime(capsys):
    code, rep = run_json(capsys, "spread", CORPUS / "product-diagonal.ideal",
                         "--prime", "x0, x1, y0, y1, x2 - y2")
    assert code == 0
    assert (rep["result"]["analytic_spread"], rep["result"]["local_dimension"]) == (3, 3)


def test_symbolic_and_closure_outputs(capsys):
    _, rep = run_json(capsys, "symbolic", CORPUS / "triangle.ideal", "--power", 2)
    assert "x*y*z" in rep["result"]["powers"][1]["symbolic"]
    _, rep = run_json(capsys, "closure", CORPUS / "example-2.4.ideal", "--power", 1)
    assert rep["result"]["powers"][0]["closure"] == ["x^2", "x*y", "y^2"]


# ------------------------------------------------------------------ exit codes


def test_input_errors_exit_3(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("variables: x\nideal: w\n")
    code, rep = run_json(capsys, "check", bad)
    assert code == 3 and rep["reason"]["code"] == "input-error"
    code, rep = run_json(capsys, "check", tmp_path / "missing.ideal")
    assert code == 3
    code, rep = run_json(capsys, "symbolic", CORPUS / "example-xy-xz.ideal")
    assert code == 3
    code, rep = run_json(capsys, "svcycle", CORPUS / "triangle.ideal")
    assert code == 3
    assert cli.main(["nonsense"]) == 3
    assert cli.main(["check", "--nmax", "0", str(CORPUS / "triangle.ideal")]) == 3
    assert cli.main(["check"]) == 3


def test_unresolved_exits_2(capsys, monkeypatch):
    def stuck(*args, **kwargs):
        raise Unresolved("stuck leaf", None)

    monkeypatch.setitem(cli.HANDLERS, "minprimes", stuck)
    code, rep = run_json(capsys, "minprimes", CORPUS / "triangle.ideal")
    assert code == 2 and rep["reason"]["code"] == "unresolved"


def test_audit_failure_exits_1(capsys, monkeypatch):
    from formring import severi

    real = severi.audit_equivalences
    monkeypatch.setattr(cli, "check_instance", lambda *a, **k: _forced_failure(real, *a, **k))
    code, rep = run_json(capsys, "check", CORPUS / "triangle.ideal")
    assert code == 1 and rep["reason"]["code"] == "audit-failure"


def _forced_failure(real_audit, *args, **kwargs):
    from formring.severi import HOLDS, Verdict, check_instance

    report = check_instance(*args, **kwargs)
    report.verdict_i = Verdict(HOLDS)
    report.audit = real_audit(report)
    return report


# ------------------------------------------------------------------ output files


def test_out_dir_and_byte_identical_goldens(capsys, tmp_path):
    for path in sorted(CORPUS.glob("*.ideal")):
        assert cli.main(["check", str(path), "--no-timings", "--out", str(tmp_path)]) == 0
        assert cli.main(["assocgraded", str(path), "--no-timings", "--out", str(tmp_path)]) == 0
    for path in sorted(CORPUS.glob("*.sv")):
        assert cli.main(["svcycle", str(path), "--seed", "1", "--seed", "2", "--no-timings",
                         "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    produced = sorted(p.name for p in tmp_path.iterdir())
    assert produced == sorted(p.name for p in GOLDEN.iterdir())
    for name in produced:
        assert (tmp_path / name).read_bytes() == (GOLDEN / name).read_bytes(), name
    assert not list(tmp_path.glob(".*.tmp"))


def test_timings_present_by_default(capsys):
    code, out = run(capsys, "dim", CORPUS / "triangle.ideal", "--json")
    assert "dim" in json.loads(out)["timings"]


def test_human_summary(capsys):
    code, out = run(capsys, "check", CORPUS / "triangle.ideal")
    assert out.startswith("check triangle: ok (exit 0)")
    assert "  i: fails" in out


def test_corpus_parallel_matches_sequential(capsys):
    code1, a = run(capsys, "corpus", "--json", "--no-timings", "--jobs", "3")
    code2, b = run(capsys, "corpus", "--json", "--no-timings")
    assert code1 == code2 == 0
    assert a == b
    rep = json.loads(a)
    jsonschema.validate(rep, cli.load_schema())
    for name, item in rep["result"]["instances"].items():
        for suite, res in item.get("properties", {}).items():
            assert res["status"] in ("pass", "not-applicable"), (name, suite, res)

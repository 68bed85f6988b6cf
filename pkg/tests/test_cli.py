import os
import subprocess
import sys

import pytest

from slstar.cli import main, run
from slstar.experiments import experiment_names
from slstar.report import parse_report, verify_digest


def cli(tmp_path, *args):
    out = str(tmp_path / "reports")
    rep, code = run(["--out", out, "--quiet", *args])
    return rep, code, out


def read_only_report(out):
    files = os.listdir(out)
    assert len(files) == 1
    with open(os.path.join(out, files[0]), encoding="utf-8") as fh:
        return fh.read()


def test_ring_selftest_passes(tmp_path):
    for desc in ("SplitQuat(GF(3))", "Mat(2,Z/(9))"):
        rep, code, _ = cli(tmp_path, "ring", "selftest", desc, "--samples", "500")
        assert code == 0 and rep.verdict == "pass"


def test_malformed_descriptor_is_usage_error(tmp_path, capsys):
    rep, code, _ = cli(tmp_path, "ring", "selftest", "Mat(2,GF(3)")
    assert rep is None and code == 3
    assert "position" in capsys.readouterr().err


def test_classify_examples(tmp_path):
    for desc, kind in (("Z/(9)", "one-local"), ("Prod(Z/(4),Z/(4))", "two-local"), ("GF(4)", "one-local")):
        rep, code, _ = cli(tmp_path, "classify", desc)
        assert code == 0
        assert dict(rep.records)["kind"] == kind


def test_divide_success_and_refusal(tmp_path):
    rep, code, _ = cli(tmp_path, "divide", "Mat(2,GF(3))", "[[0,0],[0,1]]", "[[1,0],[0,0]]")
    assert code == 0 and dict(rep.records)["verified"] == "true"
    rep, code, _ = cli(tmp_path, "divide", "SplitQuat(GF(3))", "[[1,0],[1,0]]", "[[0,1],[0,1]]")
    recs = dict(rep.records)
    assert code == 1 and recs["certificate.unit_remainders"] == "0"


def test_divide_hypothesis_violation_is_refusal(tmp_path):
    _rep, code, _ = cli(tmp_path, "divide", "Mat(2,GF(3))", "[[1,0],[0,0]]", "[[1,0],[0,0]]")
    assert code == 1


def test_slstar_subcommands(tmp_path):
    rep, code, _ = cli(tmp_path, "slstar", "enumerate", "GF(3)")
    assert code == 0 and dict(rep.records)["group_size"] == "24"
    rep, code, _ = cli(tmp_path, "slstar", "closure", "GF(3)")
    assert dict(rep.records)["closure_size"] == "24"
    rep, code, _ = cli(tmp_path, "slstar", "check", "GF(3)", "[[1,1],[0,1]]")
    assert code == 0 and dict(rep.records)["member"] == "true"
    rep, code, _ = cli(tmp_path, "slstar", "check", "GF(3)", "[[1,1],[0,2]]")
    assert code == 1
    rep, code, _ = cli(tmp_path, "slstar", "factor", "GF(3)", "[[0,1],[2,0]]")
    assert code == 0 and dict(rep.records)["verified"] == "true"
    _rep, code, _ = cli(tmp_path, "slstar", "factor", "GF(3)")
    assert code == 3


def test_adelic_subcommands(tmp_path):
    rep, code, _ = cli(tmp_path, "adelic", "divide", "Q", "{tail: [[1,0],[0,1]]}", "{tail: [[0,0],[0,0]]}")
    assert code == 0 and dict(rep.records)["verified"] == "true"
    rep, code, _ = cli(tmp_path, "adelic", "split", "Q", "{2: [[1,1],[0,1]], tail: [[1,0],[0,1]]}",
                       "--places", "2,3")
    assert code == 0 and "a_S" in dict(rep.records)
    rep, code, _ = cli(tmp_path, "adelic", "involute", "Q", "{tail: [[1,2],[2,1]]}")
    assert dict(rep.records)["symmetric"] == "true"
    rep, code, _ = cli(tmp_path, "adelic", "divide", "SplitQuat(Q)", "{tail: [[1,0],[0,1]]}",
                       "{tail: [[0,0],[0,0]]}", "--n", "1")
    assert code == 1 and "witness.a" in dict(rep.records)
    _rep, code, _ = cli(tmp_path, "adelic", "divide", "Q", "{tail: [[1,0],[0,1]]}")
    assert code == 3


def test_unknown_experiment_lists_names(tmp_path, capsys):
    _rep, code, _ = cli(tmp_path, "experiment", "no-such-thing")
    assert code == 3
    err = capsys.readouterr().err
    assert all(name in err for name in experiment_names())


def test_bad_usage_exit_code(tmp_path):
    assert main(["--out", str(tmp_path), "frobnicate"]) == 3
    assert main(["--out", str(tmp_path), "--seed", "x", "classify", "GF(2)"]) == 3


def test_report_file_has_valid_footer(tmp_path):
    _rep, _code, out = cli(tmp_path, "classify", "Z/(9)")
    text = read_only_report(out)
    assert verify_digest(text)
    fields = parse_report(text)
    for key in ("experiment", "descriptor", "anchor", "seed", "timestamp", "verdict", "sha256"):
        assert key in fields
    assert not verify_digest(text.replace("one-local", "two-local"))


def _strip_timestamp(text):
    return "\n".join(ln for ln in text.splitlines() if not ln.startswith("timestamp: "))


def test_reports_are_deterministic(tmp_path):
    args = ["divide", "Mat(2,GF(5))", "[[0,0],[0,1]]", "[[1,0],[0,0]]"]
    _r1, _c1, out1 = cli(tmp_path / "one", *args)
    _r2, _c2, out2 = cli(tmp_path / "two", *args)
    t1, t2 = read_only_report(out1), read_only_report(out2)
    assert _strip_timestamp(t1) == _strip_timestamp(t2)
    assert os.listdir(out1) == os.listdir(out2)


def test_seed_is_recorded_and_replayed(tmp_path):
    rep, _code, _ = cli(tmp_path, "--seed", "7", "classify", "GF(2)")
    assert rep.seed == 7
    assert rep.params["argv"] == "--seed 7 classify GF(2)"


@pytest.mark.parametrize("name", ["counterexample-char-odd", "adelic-Q", "adelic-quat-char0-refusal"])
def test_experiment_command(tmp_path, name):
    rep, code, out = cli(tmp_path, "experiment", name)
    expected = 1 if name.endswith("refusal") else 0
    assert code == expected
    assert os.path.exists(os.path.join(out, f"{name}.txt"))


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "slstar", "--out", str(tmp_path), "classify", "Z/(9)"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "kind: one-local" in res.stdout

import json
import os
import subprocess
import sys

import pytest

from weylchar.cli import main, split_generators, UsageError
from weylchar.morphism import remark2_map


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, validate, schema, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    validate(schema, data)
    return code, data


def test_spec_examples(capsys):
    assert run(capsys, "comm", "--algebra", "weyl", "--n", "1", "--p", "5", "x1^2", "y1")[:2] == (0, "2*x1\n")
    code, out, _ = run(capsys, "growth", "--n", "1", "--p", "2", "--gens", "x1,y1", "--N", "3")
    assert code == 0
    assert out.splitlines()[0] == "N,d_N"
    assert out.splitlines()[-1] == "3,10"


def test_global_flags_before_subcommand(capsys):
    assert run(capsys, "--p", "5", "normalize", "x1*y1")[:2] == (0, "y1*x1 + 1\n")
    assert run(capsys, "--algebra", "poisson", "--p", "5", "normalize", "x1*y1")[1] == "x1*y1\n"


def test_text_outputs(capsys):
    assert run(capsys, "bracket", "--p", "5", "x1^2", "y1")[1] == "2*x1\n"
    assert run(capsys, "central", "x1^2")[1] == "true\n"
    assert run(capsys, "central", "--direct", "y1*x1")[1] == "false\n"
    assert run(capsys, "decompose", "x1^3")[1] == "x1: x1^2\n"
    assert run(capsys, "decompose", "y1", "--map", "remark2", "--deg-bound", "6")[1] == "u1: y1^2\nv1: 1\n"
    assert run(capsys, "check", "--map", "remark2")[:2] == (0, "valid\n")
    assert run(capsys, "apply", "--map", "remark2", "y1^2*x1")[1] == "y1^4*x1^3\n"
    code, out, _ = run(capsys, "kernel", "--map", "a2", "--n", "2", "--deg-bound", "4")
    assert out.splitlines() == ["dimension 1 at degree bound 4", "y1^2*y2^2 + x1^2"]
    assert run(capsys, "member", "x1*y1", "--gens", "x1,y1", "--N", "2")[1] == "true\n"
    assert run(capsys, "member", "x1", "--gens", "y1", "--N", "5")[1] == "false\n"
    assert run(capsys, "depend", "x1", "x1^3")[1] == "dependent: a^3 = 1*b^1\n"
    assert run(capsys, "depend", "x1", "y1")[1] == "independent\n"
    out = run(capsys, "rectify", "x1", "y1 + x1^3")[1]
    assert out.splitlines() == ["u: y1", "v: x1^3 + y1", "steps: 1"]


def test_json_outputs_validate(capsys, validate, tmp_path):
    _, d = run_json(capsys, validate, "normalize", "normalize", "--p", "5", "x1*y1")
    assert d["result"] == "y1*x1 + 1"
    run_json(capsys, validate, "comm", "comm", "x1", "y1")
    run_json(capsys, validate, "bracket", "bracket", "x1", "y1")
    _, d = run_json(capsys, validate, "central", "central", "--p", "3", "x1^3*y1^6")
    assert d["central"] is True
    run_json(capsys, validate, "decompose", "decompose", "--p", "3", "x1^4*y1 + 2")
    run_json(capsys, validate, "decompose", "decompose", "y1", "--map", "remark2", "--deg-bound", "4")
    _, d = run_json(capsys, validate, "check", "check", "--map", "theorem3", "--n", "2")
    assert d["valid"]
    validate("endomorphism", d["map"])
    run_json(capsys, validate, "apply", "apply", "--map", "a2", "--n", "2", "x1^2 + y1^2*y2^2")
    _, d = run_json(capsys, validate, "kernel", "kernel", "--map", "remark2", "--deg-bound", "6")
    assert d["dimension"] == 0
    _, d = run_json(capsys, validate, "growth", "growth", "--gens", "x1,y1", "--N", "10", "--fit")
    assert [r["d_N"] for r in d["table"]][-1] == 66
    validate("fit", d["fit"])
    run_json(capsys, validate, "member", "member", "y1", "--gens", "y1", "--N", "1")
    _, d = run_json(capsys, validate, "depend", "depend", "--p", "5", "(x1+y1)^2", "(x1+y1)^3")
    assert d["witness"] == {"f": 1, "q": 3, "r": 2}
    _, d = run_json(capsys, validate, "rectify", "rectify", "x1", "y1 + x1^3")
    for step in d["steps"]:
        validate("rectify_step", step)


def test_rectify_log(capsys, validate, tmp_path):
    log = tmp_path / "steps.jsonl"
    assert run(capsys, "rectify", "x1", "y1 + x1^5", "--log", str(log))[0] == 0
    lines = log.read_text().splitlines()
    assert lines
    for line in lines:
        step = json.loads(line)
        validate("rectify_step", step)
        assert step["Def_after"] < step["Def"]


def test_map_from_file(capsys, tmp_path):
    path = tmp_path / "phi.json"
    path.write_text(remark2_map().dumps())
    assert run(capsys, "check", "--map", str(path))[:2] == (0, "valid\n")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "weyl", "n": 1, "p": 5, "u": ["x1^2"], "v": ["y1"]}))
    code, _, err = run(capsys, "check", "--map", str(bad))
    assert code == 1 and "[u1,v1] = 2*x1" in err


def test_failure_exit_codes(capsys, validate):
    code, d = run_json(capsys, validate, "decompose", "decompose", "y1", "--map", "remark2", "--deg-bound", "0")
    assert code == 1 and d["found"] is False
    code, d = run_json(capsys, validate, "rectify", "rectify", "x1", "y1 + x1^3", "--max-steps", "0")
    assert code == 1 and d["capped"] is True
    bad = ["check", "--map", "identity", "--n", "1"]
    assert run(capsys, *bad)[0] == 0


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["normalize"],
    ["normalize", "x1 +"],
    ["normalize", "x3", "--n", "2"],
    ["normalize", "x1", "--p", "4"],
    ["normalize", "x1", "--n", "0"],
    ["comm", "--algebra", "poisson", "x1", "y1"],
    ["bracket", "--algebra", "weyl", "x1", "y1"],
    ["check", "--map", "no-such-map"],
    ["check", "--map", "remark2", "--p", "3"],
    ["growth", "--N", "3"],
    ["growth", "--gens", "x1,,y1", "--N", "3"],
    ["growth", "--gens", "x1", "--N", "3", "--fit"],
    ["rectify", "x1", "x1^2"],
    ["verify-paper", "--only", "99"],
    ["normalize", "x1", "--pp", "3"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_split_generators():
    assert split_generators("x1, (x1 + y1)^2,y2*(x2+1)") == ["x1", "(x1 + y1)^2", "y2*(x2+1)"]
    with pytest.raises(UsageError):
        split_generators("x1,")


def test_term_limit_env_var():
    env = dict(os.environ, WEYLCHAR_MAX_TERMS="20")
    cmd = [sys.executable, "-m", "weylchar.cli", "normalize", "--n", "2", "--p", "7",
           "(x1 + y1 + x2 + y2 + 1)^6"]
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
    assert proc.returncode == 1
    assert "WEYLCHAR_MAX_TERMS" in proc.stderr or "cap" in proc.stderr


def test_console_script_help():
    proc = subprocess.run([sys.executable, "-m", "weylchar.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for sub in ("normalize", "comm", "bracket", "central", "decompose", "check", "apply", "kernel",
                "growth", "member", "depend", "rectify", "verify-paper"):
        assert sub in proc.stdout


def test_verify_paper_subset(capsys, validate):
    code, d = run_json(capsys, validate, "verify-paper", "verify-paper", "--p", "2", "--only", "1,4,5,12")
    assert code == 0 and d["passed"]
    assert [c["number"] for c in d["checks"]] == [1, 4, 5, 12]

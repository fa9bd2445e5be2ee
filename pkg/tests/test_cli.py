import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

import tordiff
from tordiff.cli import dispatch
from tordiff.dsl import parse_source
from tordiff.report import REPORT_SCHEMA, emit_report, to_json
from tordiff.scenarios import REGISTRY, run_scenario
from tordiff.workspace import SemanticError, build_workspace, run_checks

WORKED = Path(tordiff.__file__).parent / "worked"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_scenario_json_report_exit_zero():
    code, out, _ = run("scenario", "run", "whitney_torsion", "--report", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["checks"][0]["witness"] == "z^2 * dx = 0"
    assert data["status"] == "pass"


def test_sdh_scenario_exit_zero():
    assert run("scenario", "run", "sdh_failure", "--p", "2", "--n", "1")[0] == 0


def test_unknown_scenario_exit_two():
    code, out, err = run("scenario", "run", "nosuch")
    assert code == 2 and not out and "unknown scenario" in err


def test_param_out_of_range_exit_two():
    assert run("scenario", "run", "sdh_failure", "--p", "7")[0] == 2
    assert run("scenario", "run", "h_vanishing", "--p", "3", "--m", "4")[0] == 2


def test_usage_error_exit_two():
    assert run("frobnicate")[0] == 2
    assert run("scenario", "run")[0] == 2


def test_resource_cap_exit_three():
    code, _, err = run("--degree-cap", "1", "scenario", "run", "whitney_torsion")
    assert code == 3 and "resource cap" in err


def test_list_scenarios():
    code, out, _ = run("scenario", "list", "--report", "json")
    assert code == 0
    items = json.loads(out)
    assert [i["name"] for i in items] == list(REGISTRY)
    assert all(i["anchors"] for i in items)


@pytest.mark.parametrize("name", list(REGISTRY))
def test_text_and_json_agree(name):
    report = run_scenario(name)
    data = json.loads(emit_report(report, "json"))
    text = emit_report(report, "text").decode("utf-8")
    for c in data["checks"]:
        assert c["id"] in text
    assert data["status"].upper() in text.splitlines()[0]
    jsonschema.validate(data, REPORT_SCHEMA)


@pytest.mark.parametrize("name", list(REGISTRY))
def test_reports_are_deterministic(name):
    a = to_json(run_scenario(name), timing=False)
    b = to_json(run_scenario(name), timing=False)
    assert a == b


@pytest.mark.parametrize("path", sorted(WORKED.glob("*.tdf")), ids=lambda p: p.name)
def test_verify_worked_files(path):
    code, out, err = run("verify", str(path))
    assert code == 0, out + err
    assert "[ fail  ]" not in out


def test_file_subcommands():
    w = str(WORKED / "whitney.tdf")
    code, out, _ = run("gb", w, "--of", "Y")
    assert code == 0 and out.splitlines()[1] == "x*z^2 + y^2"
    code, out, _ = run("omega", w, "--ring", "Y")
    assert code == 0 and "z^2 * dx = 0" in out
    code, out, _ = run("torsion", w, "--ring", "Y")
    assert code == 0 and "  z^2 * dx = 0" in out.splitlines()
    code, out, _ = run("pullback", w, "--map", "pi")
    assert out.splitlines() == ["dx -> 0", "dy -> z * du + u * dz", "dz -> dz"]
    code, out, _ = run("descent", w, "--diagram", "cover")
    assert code == 0 and "alpha to X:" in out
    assert run("torsion", w, "--ring", "Nope")[0] == 2
    assert run("omega", w, "--ring", "Y", "-n", "4")[0] == 2


def test_parse_error_reports_span(tmp_path):
    bad = tmp_path / "bad.tdf"
    bad.write_text("ring A = F2[x", encoding="utf-8")
    code, _, err = run("verify", str(bad))
    assert code == 2 and "1:13" in err and "unclosed bracket" in err
    assert run("verify", str(tmp_path / "missing.tdf"))[0] == 2


def test_failing_check_exit_one(tmp_path):
    f = tmp_path / "f.tdf"
    f.write_text("ring R = F2[x, y] / (x^2)\ncheck zero(R, x)\ncheck nilpotent(R, x)\n", encoding="utf-8")
    code, out, _ = run("verify", str(f))
    assert code == 1
    assert out.splitlines()[0].startswith("[ fail  ] line 2")
    assert out.splitlines()[1].startswith("[ pass  ] line 3")


def test_semantic_errors():
    sf = parse_source("ring A = F4[x]\nring B = Q[y]\nmap f : B -> B { y -> z }\nring B = Q[t]\n")
    with pytest.raises(SemanticError) as e:
        build_workspace(sf)
    assert [d.line for d in e.value.diagnostics] == [1, 3, 4]


def test_workspace_checks_report_status():
    src = (
        "ring C = Q[x, y] / (y^2 - x^3)\nring L = Q[t]\nmap nu : C -> L { x -> t^2, y -> t^3 }\n"
        "check torsion(C, 2*x*dy - 3*y*dx)\ncheck torsion(C, dx)\ncheck nosuch(C)\n"
    )
    outcomes = run_checks(build_workspace(parse_source(src)))
    assert [o.status for o in outcomes] == ["pass", "fail", "fail"]
    assert outcomes[0].witness == "y * (-3*y * dx + 2*x * dy) = 0"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tordiff", "scenario", "run", "nosuch"], capture_output=True, text=True)
    assert res.returncode == 2 and "unknown scenario" in res.stderr

import json

import pytest

from rescycle.cli import case_from_dict, main, parse_case
from rescycle.cycles import Cycle
from rescycle.engine import NONPURE_CURRENTS, NONPURE_RESOLUTION, run_case
from rescycle.errors import CaseParseError

CI = {"name": "ci", "variables": ["x", "y"], "ideal": ["x^2", "y^3"]}
CM = {"name": "cm", "variables": ["x", "y"], "ideal": ["x^2", "x*y", "y^3"], "mode": "cm"}
NONPURE = {"name": "np", "variables": ["x", "y", "z"], "ideal": ["x*z", "y*z"],
           "resolution": NONPURE_RESOLUTION, "currents": {str(k): v for k, v in NONPURE_CURRENTS.items()}}


def write(tmp_path, name, data):
    p = tmp_path / f"{name}.json"
    p.write_text(data if isinstance(data, str) else json.dumps(data, indent=2))
    return str(p)


def test_verify_pass_text(tmp_path, capsys):
    assert main(["verify", write(tmp_path, "ci", CI)]) == 0
    out = capsys.readouterr().out
    assert "computed: 6*[x=y=0]; oracle: 6*[x=y=0]; PASS" in out
    assert "= [Z]" in out


def test_verify_injected_currents(tmp_path, capsys):
    assert main(["verify", write(tmp_path, "np", NONPURE)]) == 0
    assert "[z=0] + [x=y=0]" in capsys.readouterr().out


def test_verify_mismatch_exit_one(tmp_path, capsys):
    bad = json.loads(json.dumps(NONPURE))
    bad["currents"]["1"][0][0] = "2*" + bad["currents"]["1"][0][0]
    assert main(["verify", write(tmp_path, "bad", bad)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_unsupported_exit_two(tmp_path, capsys):
    case = {"variables": ["x", "y"], "ideal": ["x^2 + y", "y^3"]}
    assert main(["verify", write(tmp_path, "nm", case)]) == 2
    assert "unsupported" in capsys.readouterr().out


def test_parse_error_exit_three_with_location(tmp_path, capsys):
    text = '{"variables": ["x", "y"],\n "ideal": ["x^2", "y^3 + w"]}'
    assert main(["verify", write(tmp_path, "pe", text)]) == 3
    out = capsys.readouterr().out
    assert "parse error" in out and "line 2" in out
    with pytest.raises(CaseParseError) as e:
        parse_case(write(tmp_path, "pe2", text))
    assert e.value.line == 2 and e.value.column is not None


def test_schema_error_exit_three(tmp_path, capsys):
    assert main(["verify", write(tmp_path, "se", {"variables": ["x"], "ideal": ["x"], "extra": 1})]) == 3
    assert main(["verify", write(tmp_path, "rv", {"variables": ["d"], "ideal": ["d"]})]) == 3
    assert main(["verify", write(tmp_path, "js", "{not json")]) == 3
    assert main(["verify", "--mode", "nope", write(tmp_path, "ok", CI)]) == 3
    capsys.readouterr()


def test_json_round_trip(tmp_path, capsys):
    assert main(["verify", "--format", "json", write(tmp_path, "cm", CM)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["match"] is True
    again = case_from_dict(out)
    original = case_from_dict(CM)
    assert again.ideal == original.ideal and again.mode == original.mode
    assert run_case(again).computed == Cycle.point([0, 1], 4)


def test_multiple_files_json_ordering(tmp_path, capsys):
    files = [write(tmp_path, n, dict(CI, name=n)) for n in ("a", "b", "c")]
    files.insert(1, write(tmp_path, "cm", CM))
    assert main(["verify", "--format", "json", "--jobs", "2"] + files) == 0
    names = [r["name"] for r in json.loads(capsys.readouterr().out)]
    assert names == ["a", "cm", "b", "c"]


def test_emit_intermediates(tmp_path, capsys):
    d = tmp_path / "inter"
    assert main(["verify", "--emit-intermediates", str(d), write(tmp_path, "ci", CI)]) == 0
    text = (d / "ci.txt").read_text()
    assert "Dphi_product" in text and "R_p" in text
    capsys.readouterr()


def test_mode_override_and_seed(tmp_path, capsys):
    f = write(tmp_path, "cm", dict(CM, mode="auto"))
    assert main(["verify", "--mode", "universal", "--seed", "4", f]) == 0
    assert "[universal]" in capsys.readouterr().out


def test_cycle_command(tmp_path, capsys):
    f = write(tmp_path, "np", {"variables": ["x", "y", "z"], "ideal": ["x*z", "y*z"]})
    assert main(["cycle", f]) == 0
    assert "[Z] = [z=0] + [x=y=0]" in capsys.readouterr().out
    assert main(["cycle", "--format", "json", f]) == 0
    comps = json.loads(capsys.readouterr().out)["results"]["components"]
    assert comps == [{"subspace": ["z"], "multiplicity": 1}, {"subspace": ["x", "y"], "multiplicity": 1}]


def test_demo_commands(capsys):
    assert main(["demo", "ex-embedded", "--params", "3,2,1"]) == 0
    out = capsys.readouterr().out
    assert "10*(2*pi*i)^2" in out and "PASS" in out
    assert main(["demo", "ex-nonpure"]) == 0
    assert "[z=0] + [x=y=0]" in capsys.readouterr().out
    assert main(["demo", "ex-embedded", "--params", "2,1,2"]) == 2
    assert main(["demo", "ex-embedded", "--params", "1,2"]) == 3
    capsys.readouterr()


def test_deterministic_output(tmp_path, capsys):
    f = write(tmp_path, "cm", CM)
    main(["verify", "--format", "json", f])
    a = json.loads(capsys.readouterr().out)
    main(["verify", "--format", "json", f])
    b = json.loads(capsys.readouterr().out)
    for r in (a, b):
        r["results"].pop("timings")
    assert a == b

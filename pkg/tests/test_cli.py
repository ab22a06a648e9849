"""Command line front end: reports, exit codes, schema conformance."""

import json
import subprocess
import sys

import jsonschema
import pytest

from tatecoh.cli import main
from tatecoh.cohomology import TwoCocycle
from tatecoh.datum import data_dir, dump_datum
from tatecoh.gaction import FiniteGroup, GModule
from tatecoh.langlands import ClassFormationDatum
from tatecoh.report import CheckRecord, RunReport, format_group

SCHEMA = json.loads(data_dir().joinpath("report-schema.json").read_text(encoding="utf-8"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_format_group():
    assert format_group([]) == "0"
    assert format_group([0]) == "Z"
    assert format_group([2]) == "Z/2"
    assert format_group([0, 2, 4]) == "Z x Z/2 x Z/4"


def test_report_verdicts():
    rep = RunReport(["x"], [CheckRecord("a", "pass"), CheckRecord("b", "skipped")])
    assert rep.verdict == "pass" and rep.exit_code == 0
    rep = RunReport(["x"], [CheckRecord("a", "hypothesis-failed"), CheckRecord("b", "pass")])
    assert rep.verdict == "hypothesis-failed" and rep.exit_code == 3
    rep = RunReport(["x"], [CheckRecord("a", "hypothesis-failed"), CheckRecord("b", "fail")])
    assert rep.verdict == "fail" and rep.exit_code == 1
    with pytest.raises(ValueError):
        CheckRecord("a", "maybe")


def test_kottwitz_example(capsys):
    code, out, _ = run(capsys, "kottwitz", "norm1_ramified.json")
    assert code == 0
    assert "target = Z/2" in out
    assert out.endswith("verdict: pass\n")


def test_verify_diagram_example(capsys):
    code, out, _ = run(capsys, "verify-diagram", "gm_split.json", "unram_c1.json",
                       "--modulus", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "command: verify-diagram gm_split.json unram_c1.json --modulus 4"
    assert sum(1 for l in lines if l.startswith("check ")) == 8
    assert all(": pass" in l for l in lines if l.startswith("check "))


def test_cohomology_example(capsys):
    code, out, _ = run(capsys, "cohomology", "c2_zminus.json", "--degree", "1")
    assert code == 0 and "H^1 = Z/2" in out


def test_tate_degrees(capsys):
    for degree, expect in ((0, "Z/2"), (-1, "0"), (-2, "Z/2"), (2, "Z/2")):
        code, out, _ = run(capsys, "cohomology", "c2_z.json", "--degree",
                           str(degree), "--tate")
        assert code == 0 and f"Hhat^{degree} = {expect}" in out, (degree, out)


def test_class_formation_passes_and_fails(capsys, tmp_path):
    code, out, _ = run(capsys, "class-formation", "unram_c3.json")
    assert code == 0 and out.count("check subgroup-") == 2

    # finite class modules cannot satisfy the axioms
    c2 = FiniteGroup.cyclic(2)
    bad = ClassFormationDatum("finite", TwoCocycle(GModule.integers_mod(c2, 2), [0]))
    path = tmp_path / "finite_formation.json"
    path.write_text(dump_datum(bad), encoding="utf-8")
    code, out, _ = run(capsys, "class-formation", str(path))
    assert code == 1 and "fail" in out and out.endswith("verdict: fail\n")


def test_pi1(capsys):
    code, out, _ = run(capsys, "pi1", "norm1_unramified.json", "unram_c1.json")
    assert code == 0 and "pi1 = Z" in out and "[[-1]]" in out


def test_kottwitz_with_modulus(capsys):
    code, out, _ = run(capsys, "kottwitz", "gm_split.json", "--modulus", "4")
    assert code == 0 and "dual-sequence-exact: pass" in out
    code, out, _ = run(capsys, "kottwitz", "norm1_unramified.json", "--modulus", "4")
    assert code == 3
    assert "fixed-point-identification: hypothesis-failed" in out
    assert out.endswith("verdict: hypothesis-failed\n")
    code, out, _ = run(capsys, "kottwitz", "norm1_unramified.json", "--modulus", "3")
    assert code == 0


def test_correspondence_exit_codes(capsys):
    code, out, _ = run(capsys, "correspondence", "induced_quadratic.json",
                       "unram_c2.json", "--modulus", "4")
    assert code == 0 and "characters = Z/4" in out and "classes = Z/4" in out
    code, out, _ = run(capsys, "correspondence", "norm1_ramified.json",
                       "unram_c2.json", "--modulus", "2")
    assert code == 3
    assert "characters = 0" in out and "classes = Z/2" in out


def test_sheaf_function(capsys):
    code, out, _ = run(capsys, "sheaf-function", "mu8_frob3.json",
                       "--level", "2", "--modulus", "8")
    assert code == 0
    assert "duality-bijective: pass" in out
    assert "downstairs = Z/2" in out and "upstairs-fixed = Z/2" in out


def test_depth(capsys):
    code, out, _ = run(capsys, "depth", "mu8_frob3.json", "mu8_chain.json",
                       "--modulus", "8")
    assert code == 0
    assert "depth-preserved-level-1: pass" in out
    assert "depth-preserved-level-2: pass" in out
    assert "depths 0, infinite, 2, infinite, 1, infinite, 2, infinite" in out
    code, out, _ = run(capsys, "depth", "z2_swap.json", "swap_chain.json",
                       "--modulus", "4")
    assert code == 0


def test_usage_and_parse_errors(capsys, tmp_path):
    cases = [
        ("kottwitz", "no_such_file.json"),
        ("kottwitz", "unram_c2.json"),
        ("cohomology", "c2_z.json", "--degree", "-1"),
        ("correspondence", "gm_split.json", "unram_c1.json", "--modulus", "1"),
        ("sheaf-function", "mu8_frob3.json", "--level", "0", "--modulus", "4"),
        ("nonsense",),
        ("kottwitz",),
    ]
    for argv in cases:
        code, _, _ = run(capsys, *argv)
        assert code == 2, argv
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = run(capsys, "kottwitz", str(bad))
    assert code == 2 and "not valid JSON" in err


def test_corrupted_twist_fails_at_validation(capsys, tmp_path):
    doc = json.loads(data_dir().joinpath("unram_c2.json").read_text(encoding="utf-8"))
    doc["twist"] = {"base_map": [0, 1], "kernel_map": [[2]]}
    path = tmp_path / "corrupt.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "class-formation", str(path))
    assert code == 2 and "invalid-twist" in err


def test_max_order_skips(capsys):
    code, out, _ = run(capsys, "cohomology", "c2_z.json", "--degree", "1",
                       "--max-order", "1")
    assert code == 0 and "skipped" in out and "exceeds --max-order" in out


def test_json_reports_validate_and_repeat(capsys):
    batteries = [
        ("kottwitz", "norm1_ramified.json", "--json"),
        ("verify-diagram", "gm_split.json", "unram_c1.json", "--modulus", "4", "--json"),
        ("correspondence", "norm1_ramified.json", "unram_c2.json", "--modulus", "2", "--json"),
        ("depth", "mu8_frob3.json", "mu8_chain.json", "--modulus", "8", "--json"),
        ("class-formation", "unram_c2.json", "--json"),
    ]
    for argv in batteries:
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert out1 == out2, argv
        doc = json.loads(out1)
        jsonschema.validate(doc, SCHEMA)
        assert doc["command"] == list(argv)
        # text and json carry the same verdict
        text_code, text_out, _ = run(capsys, *argv[:-1])
        assert text_code == code1
        assert text_out.strip().splitlines()[-1] == f"verdict: {doc['verdict']}"


def test_seed_flag_is_echoed(capsys):
    code, out, _ = run(capsys, "kottwitz", "norm1_ramified.json", "--seed", "7", "--json")
    assert code == 0 and "--seed" in json.loads(out)["command"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tatecoh.cli", "kottwitz", "norm1_ramified.json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "target = Z/2" in proc.stdout

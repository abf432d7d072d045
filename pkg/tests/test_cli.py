import io as _io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from awb.cli import main

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run("--json", *argv)
    return code, json.loads(out)


def test_check_valid_fixture():
    code, rep = run_json("check", FIX / "t_m2.json")
    assert code == 0 and rep["ok"] and rep["validation"]["violations"] == 0


def test_check_corrupted_fixture_gives_witness():
    code, rep = run_json("check", FIX / "corrupt_bad_identity.json")
    assert code == 1
    w = rep["validation"]["witnesses"][0]
    assert w == {"axiom": "awb_identity", "indices": [0, 0, 0], "lhs": {"0": "1"},
                 "rhs": {"0": "2"}}


def test_uce_not_perfect_exit_2():
    code, out, err = run("uce", FIX / "n2.json")
    assert code == 2 and "not perfect" in err


def test_uce_report_matches_homology():
    code, rep = run_json("uce", FIX / "t_m2.json")
    assert code == 0 and rep["kernel_dim"] == rep["h1_dim"] == 0
    assert rep["relation_families"]["displayed_lines"] == 25


def test_uce_against_extension():
    code, rep = run_json("uce", FIX / "t_ext3.json", "--against", FIX / "ce_t_ext3_nonsplit.json")
    assert code == 0 and rep["kernel_dim"] == 1
    assert rep["universality"]["sections_differ"] is True


def test_invariants_and_homology():
    code, rep = run_json("invariants", FIX / "n2.json")
    assert code == 0 and rep["h0_dim"] == 1 and rep["perfect"] is False
    code, rep = run_json("homology", FIX / "n2.json", "--max-degree", "1", "--representatives")
    assert code == 0 and rep["dims"] == [1, 3] and len(rep["representatives"]["1"]) == 3


def test_action_and_semidirect():
    code, rep = run_json("action", "check", FIX / "action_t_m2_on_k2.json")
    assert code == 0 and rep["equation_status"]["action.r4c1"] == "vacuous"
    code, rep = run_json("semidirect", FIX / "action_t_m2_on_k2.json")
    assert code == 0 and rep["semidirect"]["dim"] == 6 and rep["split"]


def test_xmod_and_cat1_commands(tmp_path):
    code, rep = run_json("xmod", "to-cat1", FIX / "xmod_representation.json")
    assert code == 0 and rep["roundtrip_isomorphism"]
    p = tmp_path / "c.json"
    p.write_text(json.dumps(rep["cat1"]))
    code, rep = run_json("cat1", "check", p)
    assert code == 0
    code, rep = run_json("cat1", "to-xmod", p)
    assert code == 0 and rep["xmod"]["M"]["dim"] == 2


def test_tensor_commands():
    code, rep = run_json("tensor", FIX / "n2.json", FIX / "ab1.json")
    assert code == 0 and rep["dim"] == 5
    code, rep = run_json("tensor", FIX / "t_ext3.json", FIX / "t_ext3.json",
                         "--actions", FIX / "mutual_self_t_ext3.json")
    assert code == 0 and rep["dim"] == 4 and rep["psi_M_kernel_dim"] == 1
    code, rep = run_json("tensor-self", FIX / "t_m2.json", "--structure")
    assert code == 0 and rep["structure"]["dim"] == 4


def test_trivial_tensor_mismatch_is_failure():
    code, rep = run_json("trivial-tensor", FIX / "n2.json", FIX / "ab1.json")
    assert code == 1 and "wrong shape" in rep["error"]
    code, rep = run_json("trivial-tensor", FIX / "ab2.json", FIX / "ab3.json")
    assert code == 0 and rep["dim"] == 24


def test_four_term_command():
    code, rep = run_json("four-term", FIX / "t_ext3.json", "--ideal", "0,1,0")
    assert code == 0 and rep["ideal_dim"] == 1
    code, rep = run_json("four-term", FIX / "t_ext3.json", "--ideal", "[[0,1]]")
    assert code == 2


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, rep = run_json("check", bad)
    assert code == 2 and "line 1" in rep["error"]
    code, _, _ = run("frobnicate")
    assert code == 2
    code, rep = run_json("tensor", FIX / "ab1.json", FIX / "ab1_gf5.json")
    assert code == 2


def test_text_output_lists_dotted_keys():
    code, out, _ = run("check", FIX / "ab1.json")
    assert code == 0 and "validation.valid: true" in out.splitlines()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "awb", "--json", "check", str(FIX / "ab1.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["ok"] is True

import json
import subprocess
import sys

import pytest

from digitopo import catalog
from digitopo.cli import main, main_capture
from digitopo.homotopy import DigitalLoop
from digitopo.io import dump_image, dump_path, load_certificate


def run_json(*argv):
    code, out = main_capture([*argv, "--json"])
    return code, json.loads(out)


def test_chi():
    code, out = main_capture(["chi", "MSS_18"])
    assert code == 0 and "chi: -2" in out
    assert run_json("chi", "MSC8s") == (0, {"alpha": [8, 17, 12, 2], "chi": 1, "differs": True, "legacy_vef": 3})
    assert run_json("chi", "MSS_18p@26")[1]["chi"] == 2


def test_verify_d_table():
    code, out = run_json("verify", "D_TABLE")
    assert code == 0 and out["valid"] and out["flags"]["endpoint_fixed"]


def test_verify_contraction_and_file(tmp_path):
    assert run_json("verify", "X_cnp:H")[0] == 0
    from digitopo.io import dump_homotopy
    rows = [list(r) for r in catalog.D_TABLE]
    rows[3], rows[4] = rows[4], rows[3]
    grid = catalog.build("D_TABLE").artifacts["grid"]
    bad = type(grid)(tuple(map(tuple, rows)), grid.codomain, endpoint_fixed=True)
    dump_homotopy(bad, tmp_path / "bad.json")
    code, out = run_json("verify", str(tmp_path / "bad.json"))
    assert code == 1 and not out["valid"] and out["violations"]


def test_contract_writes_a_certificate(tmp_path):
    code, out = run_json("contract", "D_LOOP", "--loop", "loop", "--out", str(tmp_path / "c.json"))
    assert code == 0 and out["contracted"] and out["generator"] == "clamp_contract_mss6"
    assert load_certificate(tmp_path / "c.json").check().valid


def test_contract_from_files(tmp_path, mss18):
    X26 = mss18.with_adjacency("26")
    dump_image(X26, tmp_path / "x.json")
    f = DigitalLoop(X26, [catalog.C[i] for i in (0, 6, 7, 3, 8, 9, 0)])
    dump_path(f, tmp_path / "f.json")
    code, out = run_json("contract", str(tmp_path / "x.json"), "--loop", str(tmp_path / "f.json"))
    assert code == 0 and out["generator"].startswith("adjacency_lift(18)")


def test_contract_without_generator():
    code, out = run_json("contract", "LOOPHOLE_X", "--loop", "loop")
    assert code == 1 and not out["contracted"]


def test_explore_exit_codes():
    # frozen search result: the padded FIG48 cycle does contract under 8
    code, out = run_json("explore", "FIG48", "--loop", "7cycle", "--moves", "fixed", "--pad", "10")
    assert code == 0 and out["status"] == "Reached" and out["label"] == "bounded evidence"
    code, out = run_json("explore", "LOOPHOLE_X", "--loop", "loop", "--moves", "looppres")
    assert code == 3 and out["status"] == "Exhausted" and out["states"] == 8
    code, out = run_json("explore", "LOOPHOLE_X", "--loop", "loop", "--pad", "12", "--budget", "20")
    assert code == 3 and out["status"] == "BudgetExceeded"


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("DIGITOPO_BUDGET", "20")
    code, out = run_json("explore", "LOOPHOLE_X", "--loop", "loop", "--pad", "12")
    assert code == 3 and out["status"] == "BudgetExceeded"
    monkeypatch.setenv("DIGITOPO_BUDGET", "lots")
    assert main(["chi", "MSS_18"]) == 2


def test_nohole_and_iso():
    code, out = run_json("nohole", "MSC8ps")
    assert code == 0 and out["agree"] and not out["has_hole"]
    assert main_capture(["nohole", "MSS_6"])[0] == 2
    code, out = run_json("nohole", "MSC4s", "--cap", "9", "--budget", "5")
    assert code == 3 and out["status"] == "BudgetExceeded"
    code, out = run_json("iso", "MSS_18p", "MSS_18p@26")
    assert code == 0 and out["isomorphic"]
    assert run_json("iso", "MSC8ps", "MSC4s")[0] == 1


def test_catalog_list_and_dump():
    code, out = main_capture(["catalog", "list"])
    assert code == 0 and all(i in out for i in catalog.IDS)
    code, out = run_json("catalog", "dump", "FIG48")
    assert code == 0 and len(out["image"]["points"]) == 7


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["chi"], ["chi", "NOPE"], ["catalog", "dump"], ["explore", "FIG48", "--loop", "nope"],
    ["chi", "MSS_18", "--threads", "0"], ["chi", "MSS_18", "--budget", "0"], ["explore", "FIG48"],
])
def test_usage_errors(argv):
    assert main_capture(argv)[0] == 2


def test_threads_do_not_change_output():
    a = main_capture(["explore", "FIG48", "--loop", "7cycle", "--pad", "10", "--json"])
    b = main_capture(["explore", "FIG48", "--loop", "7cycle", "--pad", "10", "--json", "--threads", "4"])
    assert a == b


def test_json_output_is_byte_stable():
    argv = [sys.executable, "-m", "digitopo", "explore", "D_LOOP", "--loop", "loop", "--pad", "10",
            "--strategy", "greedy", "--json", "--seed", "3"]
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout

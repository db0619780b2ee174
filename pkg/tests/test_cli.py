import json
import subprocess
import sys

import numpy as np
import pytest

from qudit_dfs.cli import main
from qudit_dfs.codes import phi_prime_state
from qudit_dfs.collective import SiteConfig, StateVector
from qudit_dfs.dfs_finder import DecompositionReport
from qudit_dfs.noise_sim import FidelityReport, read_summary
from qudit_dfs.serialization import matrix_from_json
from qudit_dfs.tableaux import Decomposition


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def summands(line):
    return sorted(int(x) for x in line.split(" ⊕ "))


@pytest.mark.parametrize(
    "d, factors, dims",
    [(3, "f,f,f", [1, 8, 8, 10]), (2, "f,f", [1, 3]), (3, "af,f", [1, 8])],
)
def test_decompose(capsys, d, factors, dims):
    code, out, _ = run(capsys, "decompose", "--d", str(d), "--factors", factors)
    assert code == 0
    assert summands(out.splitlines()[0]) == dims


def test_decompose_json_roundtrip(capsys, tmp_path):
    path = tmp_path / "dec.json"
    code, out, _ = run(capsys, "decompose", "--d", "3", "--factors", "f,f,f", "--json", str(path))
    assert code == 0
    dec = Decomposition.from_json(json.loads(path.read_text()))
    assert dec.as_dict() == {(1, 1): 2, (0, 0): 1, (3, 0): 1}
    assert "(1,1) [8] x2" in out


def test_decompose_bad_factors(capsys):
    code, _, err = run(capsys, "decompose", "--d", "3", "--factors", "f,q")
    assert code == 2
    assert "factor" in err


def test_missing_argument_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decompose", "--d", "3"])
    assert exc.value.code == 2


def test_operators(capsys, tmp_path):
    path = tmp_path / "ops.json"
    code, out, _ = run(capsys, "operators", "--d", "3", "--kinds", "f,af", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["commutation_residual"] < 1e-12
    assert len(data["nnz"]) == 8


@pytest.mark.parametrize(
    "args, sectors, comm",
    [
        (["--d", "3", "--n", "3"], {(1, 1): 2, (0, 0): 1, (3, 0): 1}, 6),
        (["--d", "2", "--n", "3"], {(1,): 2, (3,): 1}, 5),
        (["--d", "3", "--n", "1"], {(1, 0): 1}, 1),
    ],
)
def test_find_dfs(capsys, tmp_path, args, sectors, comm):
    path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "find-dfs", *args, "--json", str(path), "--include-v")
    assert code == 0
    assert f"commutant dimension {comm}" in out
    data = json.loads(path.read_text())
    assert data["commutant_dimension"] == comm
    report = DecompositionReport.from_json(data)
    assert report.decomposition().as_dict() == sectors
    assert report.V is not None


def test_find_dfs_size_bound(capsys, monkeypatch):
    monkeypatch.setenv("QDK_MAX_DIM", "8")
    code, _, err = run(capsys, "find-dfs", "--d", "3", "--n", "2")
    assert code == 2
    assert "matrix-free" in err
    assert run(capsys, "find-dfs", "--d", "2", "--n", "3")[0] == 0


def test_find_dfs_kinds_mismatch(capsys):
    assert run(capsys, "find-dfs", "--d", "3", "--n", "3", "--kinds", "f,af")[0] == 2


def test_verify_code_qutrit(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify-code", "--code", "qutrit3", "--trials", "20", "--seed", "1", "--json", str(path))
    assert code == 0
    assert "\nPASS\n" in out
    results = {r["name"]: r for r in json.loads(path.read_text())["results"]}
    assert results["off-block residual"]["residual"] < 1e-10


def test_verify_code_qubit_reports_printed_matrix_mismatch(capsys):
    # the printed S_dfs carries +a3 at entry (7,7); the invariant suite reports it
    code, out, _ = run(capsys, "verify-code", "--code", "qubit3", "--trials", "5")
    assert code == 1
    assert "FAIL printed S_dfs" in out
    assert "(6, 6)" in out


def test_verify_code_unknown(capsys):
    assert run(capsys, "verify-code", "--code", "unknown")[0] == 2


def test_label(capsys, tmp_path):
    code, out, _ = run(capsys, "label", "--code", "qutrit3")
    assert code == 0
    assert "|1,1;0;1,1,0>" in out.splitlines()[0]
    state = StateVector.basis(SiteConfig.uniform(3, 3), "000")
    path = tmp_path / "s.json"
    path.write_text(json.dumps(state.to_json()))
    code, out, _ = run(capsys, "label", "--state", str(path))
    assert code == 0
    assert "|3,0;0;3/2,3/2,1>" in out


def test_discriminate(capsys, tmp_path):
    code, out, _ = run(capsys, "discriminate", "--preset", "phi-prime")
    assert code == 0 and "\nsinglet" in out
    code, out, _ = run(capsys, "discriminate", "--preset", "phi")
    assert code == 0 and "not a singlet" in out
    path = tmp_path / "s.json"
    path.write_text(json.dumps(phi_prime_state().to_json()))
    out_json = tmp_path / "d.json"
    assert run(capsys, "discriminate", "--state", str(path), "--json", str(out_json))[0] == 0
    assert json.loads(out_json.read_text())["is_singlet"] is True


def test_bad_state_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    assert run(capsys, "discriminate", "--state", str(path))[0] == 2
    assert run(capsys, "discriminate", "--state", str(tmp_path / "missing.json"))[0] == 2


def test_simulate_outputs_are_deterministic(capsys, tmp_path):
    bodies = []
    for k in range(2):
        csv_path, json_path = tmp_path / f"r{k}.csv", tmp_path / f"r{k}.json"
        code, _, _ = run(
            capsys, "simulate", "--code", "qutrit3", "--encoding", "dfs", "--trials", "30",
            "--seed", "7", "--csv", str(csv_path), "--json", str(json_path),
        )
        assert code == 0
        bodies.append((csv_path.read_text(), json_path.read_text()))
    assert bodies[0] == bodies[1]
    report = FidelityReport.from_csv(bodies[0][0])
    assert report.min >= 1 - 1e-9
    assert read_summary(tmp_path / "r0.json")["trials"] == 30


def test_simulate_bare(capsys):
    code, out, _ = run(capsys, "simulate", "--code", "qutrit3", "--encoding", "bare", "--trials", "30", "--seed", "7")
    assert code == 0
    mean = float(out.split("fidelity mean ")[1].split()[0])
    assert mean < 1


@pytest.mark.parametrize("extra", [["--trials", "0"], ["--sigma", "-1"], ["--code", "nope"]])
def test_simulate_validation(capsys, extra):
    assert run(capsys, "simulate", *extra)[0] == 2


def test_twirl(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "twirl", "--preset", "phi-prime", "--samples", "500", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["change"] < 1e-6
    rho = matrix_from_json(data["rho"])
    assert np.trace(rho).real == pytest.approx(1.0)
    code, out, _ = run(capsys, "twirl", "--d", "3", "--n", "2", "--samples", "200", "--seed", "4")
    assert code == 0
    assert run(capsys, "twirl", "--samples", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qudit_dfs", "decompose", "--d", "2", "--factors", "f,f,f"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert summands(proc.stdout.splitlines()[0]) == [2, 2, 4]

import json

import numpy as np
import pytest

from ghzlocc.cli.main import main
from ghzlocc.core.ghz_canonical import StateClass
from ghzlocc.errors import NoSignChange
from ghzlocc.loaders import read_state_text
from ghzlocc.state import random_state


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_invariants(capsys, ghz_state_file):
    code, output = run_json(capsys, ["invariants", ghz_state_file])
    assert code == 0
    assert output["I1"] == pytest.approx(0.5)
    assert output["I4"] > 0


def test_classify(capsys, w_state_file):
    code, output = run_json(capsys, ["classify", w_state_file])
    assert code == 0
    assert output["class"] == StateClass.W_CLASS.value


def test_canon(capsys, real_state_file, product_state_file):
    code, output = run_json(capsys, ["canon", real_state_file])
    assert code == 0
    assert len(output["deltas"]) == 3
    _, output = run_json(capsys, ["canon", product_state_file])
    assert output == {"class": StateClass.FULLY_PRODUCT.value}


def test_parse_error(capsys, malformed_state_file):
    code, output = run_json(capsys, ["invariants", malformed_state_file])
    assert code == 2
    assert output["error"] == "ParseError"
    assert output["line"] == 3


def test_not_normalized(capsys, non_normalized_state_file):
    code, output = run_json(capsys, ["invariants", non_normalized_state_file])
    assert code == 2
    assert output["error"] == "NotNormalized"


def test_missing_file(capsys, tmp_path):
    code, output = run_json(capsys, ["invariants", str(tmp_path / "missing.json")])
    assert code == 2
    assert output["error"] == "FileNotFoundError"


def test_tolerance_override(capsys, non_normalized_state_file):
    code, _ = run_json(capsys, ["--tol-norm", "0.5", "invariants", non_normalized_state_file])
    assert code == 0


def test_invalid_tolerance(capsys, ghz_state_file):
    code, output = run_json(capsys, ["--tol-gate", "-1", "invariants", ghz_state_file])
    assert code == 2
    assert output["error"] == "ValueError"


def test_gate_find(capsys, real_state_file):
    code, output = run_json(capsys, ["gate-find", real_state_file, "--party", "A"])
    assert code == 0
    assert output["party"] == "A"
    assert output["zeta"] == 0
    assert max(abs(output["residuals"]["r1"]), abs(output["residuals"]["r2"])) <= 1e-9


def test_gate_find_search_failure(capsys, monkeypatch, real_state_file):
    def failing_search(*args, **kwargs):
        raise NoSignChange("no sign change on the grid")

    monkeypatch.setattr("ghzlocc.cli.main.find_gate_unitary", failing_search)
    code, output = run_json(capsys, ["gate-find", real_state_file, "--party", "B"])
    assert code == 3
    assert output == {"error": "NoSignChange", "detail": "no sign change on the grid"}


def test_apply_povm(capsys, real_state_file):
    code, output = run_json(capsys, ["apply-povm", real_state_file, "--party", "C", "--lambda", "2"])
    assert code == 0
    assert output["outcome"]["verdict"] == "same_orbit"
    assert output["outcome"]["q0"] + output["outcome"]["q1"] == pytest.approx(1)
    assert output["povm"]["lambda"] == 2.0


def test_apply_povm_out_of_range(capsys, real_state_file):
    code, output = run_json(capsys, ["apply-povm", real_state_file, "--party", "C", "--lambda", "0.5"])
    assert code == 2
    assert output["error"] == "OutOfRange"


def test_curve_csv(capsys, real_state_file):
    code = main(["--format", "csv", "curve", real_state_file, "--party", "A", "--samples", "5"])
    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert lines[0] == "lambda,I1,I2,I3,I4,I5,ReOmega"
    assert len(lines) == 6


def test_protocol_ghz2real(capsys):
    argv = ["protocol", "ghz2real", "--mu", "0.866", "--delta", "1.047", "--delta-prime", "0.785"]
    code, output = run_json(capsys, argv)
    assert code == 0
    assert output["min_fidelity"] >= 1 - 1e-10
    assert len(output["leaves"]) == 8


def test_protocol_ghz2complex(capsys):
    argv = ["protocol", "ghz2complex", "--delta", "1.0", "--delta-prime", "0.7"]
    argv += ["--delta-double-prime", "0.4"]
    code, output = run_json(capsys, argv)
    assert code == 0
    assert output["total_probability"] == pytest.approx(1)


def test_protocol_needs_mu():
    with pytest.raises(SystemExit):
        main(["protocol", "ghz2real", "--delta", "1.0", "--delta-prime", "0.7"])


def test_protocol_out_of_range(capsys):
    argv = ["protocol", "ghz2real", "--mu", "0.5", "--delta", "1", "--delta-prime", "1"]
    code, output = run_json(capsys, argv)
    assert code == 2
    assert output["error"] == "OutOfRange"


def test_chain(capsys, ghz_state_file):
    code, output = run_json(capsys, ["chain", ghz_state_file, "--step", "C:2", "--step", "b:3"])
    assert code == 0
    assert [row["party"] for row in output] == ["", "C", "B"]


def test_chain_failure(capsys, w_state_file):
    code, output = run_json(capsys, ["chain", w_state_file, "--step", "A:2"])
    assert code == 2
    assert output["error"] == "ChainStepFailed"
    assert output["step"] == 1
    assert output["cause"] == "NotGhzClass"


def test_random_state_is_reproducible(capsys):
    assert main(["--seed", "7", "random-state"]) == 0
    first = capsys.readouterr().out
    assert main(["--seed", "7", "random-state"]) == 0
    assert capsys.readouterr().out == first
    assert np.array_equal(read_state_text(first).amps, random_state(7).amps)


def test_random_state_to_file(tmp_path):
    path = tmp_path / "state.json"
    assert main(["--seed", "3", "--out", str(path), "random-state", "--ensemble", "ghz_class_real"]) == 0
    assert read_state_text(path.read_text()).is_real()


def test_reachable(capsys):
    code, output = run_json(capsys, ["reachable", "--samples", "1"])
    assert code == 0
    assert len(output["members"]) == 4
    assert all(member["reachable"] for member in output["members"])


def test_verify_is_reproducible(capsys):
    argv = ["--seed", "5", "verify", "invariant_oracle", "--trials", "3"]
    code, first = run_json(capsys, argv)
    _, second = run_json(capsys, argv)
    assert code == 0
    assert first == second
    assert first["passed"] == 3


def test_no_command(capsys):
    assert main([]) == 0
    assert "usage" in capsys.readouterr().out

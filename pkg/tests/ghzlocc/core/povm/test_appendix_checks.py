import numpy as np
import pytest

import ghzlocc.core.povm.appendix_checks as appendix_module
from ghzlocc.core.invariants import compute_invariants
from ghzlocc.core.povm.appendix_checks import appendix_checks
from ghzlocc.core.povm.deterministic_povm import apply_deterministic_povm, build_deterministic_povm
from ghzlocc.errors import GateConditionViolated, OutOfRange
from ghzlocc.state import Party
from ghzlocc.state.local_operators import IDENTITY


def test_checks_on_rotated_ghz(rotated_ghz):
    report = appendix_checks(rotated_ghz, Party.C, 2.0)
    assert report.x == pytest.approx(1 / 3)
    assert report.y == pytest.approx(2 / 3)
    assert report.roots[2] == pytest.approx(-1)
    assert report.root_product == pytest.approx(1)
    assert report.root_product_ok
    assert report.cayley_hamilton_ok
    assert report.one_root_above_one


def test_checks_on_real_gate_state(real_gate_state):
    for lam in (1.2, 2.0, 7.5):
        report = appendix_checks(real_gate_state, Party.A, lam)
        assert report.passed
        assert report.a < report.b
        assert report.i5_outcome < report.i5_input


def test_identity_measurement(rotated_ghz):
    report = appendix_checks(rotated_ghz, Party.C, 1.0)
    assert report.identity_povm
    assert report.i5_decreases
    assert report.one_root_above_one


def test_checks_to_dict(real_gate_state):
    output = appendix_checks(real_gate_state, Party.A, 2.0).to_dict()
    assert output["passed"] is True
    assert len(output["roots"]) == 3


def test_checks_errors(real_gate_state, complex_state):
    with pytest.raises(GateConditionViolated):
        appendix_checks(complex_state, Party.A, 2.0)
    with pytest.raises(OutOfRange):
        appendix_checks(real_gate_state, Party.A, 0.5)


def test_outcome_i5_is_simulated(real_gate_state):
    report = appendix_checks(real_gate_state, Party.A, 2.0)
    povm = build_deterministic_povm(real_gate_state, Party.A, IDENTITY, 2.0)
    outcome = apply_deterministic_povm(real_gate_state, povm)
    assert report.i5_outcome == pytest.approx(compute_invariants(outcome.outcome0).i5, abs=1e-12)
    assert report.i5_input == pytest.approx(compute_invariants(real_gate_state).i5, abs=1e-12)
    assert report.i5_closed_form == pytest.approx(report.i5_outcome, abs=1e-9)
    assert report.closed_form_ok
    assert "i5_closed_form" in report.to_dict()


def test_wrong_closed_form_fails(real_gate_state, monkeypatch):
    monkeypatch.setattr(appendix_module, "outcome_invariants_closed_form", lambda t, x, y: np.zeros(5))
    report = appendix_checks(real_gate_state, Party.A, 2.0)
    assert report.cubic_residuals == pytest.approx((0, 0, 0), abs=1e-9)
    assert not report.closed_form_ok
    assert not report.passed

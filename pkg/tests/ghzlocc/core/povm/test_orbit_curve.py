import numpy as np
import pytest

from ghzlocc.core.invariants import compute_invariants
from ghzlocc.core.povm.deterministic_povm import build_deterministic_povm
from ghzlocc.core.povm.orbit_curve import CURVE_COLUMNS, orbit_curve
from ghzlocc.errors import GateConditionViolated
from ghzlocc.state import Party
from ghzlocc.state.local_operators import IDENTITY


def test_curve_starts_at_the_gate_state(real_gate_state):
    curve = orbit_curve(real_gate_state, Party.A, 100.0, 5)
    expected = compute_invariants(real_gate_state).real_part
    assert np.abs(curve.invariants_at(1.0) - expected).max() <= 1e-10
    assert curve.samples["lambda"][0] == 1
    assert np.abs(curve.samples.iloc[0][CURVE_COLUMNS[1:6]].to_numpy(dtype=float) - expected).max() <= 1e-10


def test_curve_samples(real_gate_state):
    curve = orbit_curve(real_gate_state, Party.A, 1e3, 16)
    assert list(curve.samples.columns) == CURVE_COLUMNS
    assert len(curve.samples) == 16
    assert curve.samples["lambda"].is_monotonic_increasing
    assert curve.samples["lambda"].iloc[-1] == pytest.approx(1e3)
    assert curve.a <= curve.b


def test_three_tangle_vanishes_for_large_lambda(real_gate_state):
    curve = orbit_curve(real_gate_state, Party.A, 1e6, 3)
    i4 = curve.samples["I4"]
    assert i4.iloc[-1] <= 1e-5 * i4.iloc[0]


@pytest.mark.parametrize("lam", [1.5, 3.0, 10.0])
def test_curve_matches_measured_outcomes(real_gate_state, lam):
    curve = orbit_curve(real_gate_state, Party.A, 10.0, 2)
    povm = build_deterministic_povm(real_gate_state, Party.A, IDENTITY, lam)
    assert np.abs(curve.invariants_at(lam) - povm.outcome_fingerprint.real_part).max() <= 1e-10


def test_re_omega_is_constant_along_the_curve(real_gate_state):
    re_omega = orbit_curve(real_gate_state, Party.A, 100.0, 8).samples["ReOmega"]
    assert np.abs(re_omega - re_omega[0]).max() <= 1e-8


def test_curve_on_rotated_ghz(rotated_ghz):
    curve = orbit_curve(rotated_ghz, Party.C, 50.0, 6)
    assert curve.a == pytest.approx(0.5)
    assert curve.b == pytest.approx(0.5)
    assert np.abs(curve.samples["ReOmega"]).max() <= 1e-10
    assert curve.samples["I3"].is_monotonic_increasing


def test_curve_arguments(real_gate_state, complex_state):
    with pytest.raises(ValueError):
        orbit_curve(real_gate_state, Party.A, 0.5, 10)
    with pytest.raises(ValueError):
        orbit_curve(real_gate_state, Party.A, 10.0, 0)
    with pytest.raises(GateConditionViolated):
        orbit_curve(complex_state, Party.A, 10.0, 10)

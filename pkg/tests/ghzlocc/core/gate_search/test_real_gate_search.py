import numpy as np
import pytest

from ghzlocc.core.gate_search.gate_conditions import gate_residuals
from ghzlocc.core.gate_search.real_gate_search import build_p1_real, find_gate_unitary_real
from ghzlocc.core.invariants import OrbitRelation, compute_invariants, orbit_fingerprints_equal
from ghzlocc.errors import NotGhzClass, StructureViolation
from ghzlocc.state import Ensemble, Party, random_state, t_matrices
from ghzlocc.state.local_operators import rotation
from ghzlocc.state.pure_state import TMatrixPair, apply_local_unitary


def test_rotated_ghz_matrices_are_a_gate_pair():
    t = TMatrixPair(np.eye(2, dtype=complex) / 2, np.diag([-1, 1]).astype(complex) / 2, Party.C)
    residuals = gate_residuals(t)
    assert residuals.r1 == 0
    assert abs(residuals.r2) == 0


def test_ghz_is_a_gate_state(ghz):
    residuals = gate_residuals(t_matrices(ghz, Party.A))
    assert residuals.r1 == pytest.approx(0, abs=1e-15)
    assert abs(residuals.r2) == pytest.approx(0, abs=1e-15)


def test_second_condition_is_real():
    for seed in range(5):
        t = t_matrices(random_state(seed, Ensemble.COMPLEX_HAAR), Party.B)
        t0, t1 = t.stacked
        m = t1 @ t0.conj().T
        p0, p1 = t0 @ t0.conj().T, t1 @ t1.conj().T
        g10, g01 = np.trace(m @ p1 @ m.conj().T), np.trace(m.conj().T @ p0 @ m)
        assert abs(g10.imag) <= 1e-15
        assert abs(g01.imag) <= 1e-15
        residuals = gate_residuals(t)
        assert isinstance(residuals.r2, float)
        expected = np.trace(p0).real * g10.real - np.trace(p1).real * g01.real
        assert residuals.r2 == pytest.approx(expected, abs=1e-14)


def test_random_states_are_not_gate_states():
    values = [abs(gate_residuals(t_matrices(random_state(seed), Party.A)).r1) for seed in range(11)]
    assert np.median(values) > 1e-6


def test_p1_structure(real_state):
    for party in Party:
        p1 = build_p1_real(real_state, party)
        assert p1(1.0) == pytest.approx(-p1(-1.0), rel=1e-12, abs=1e-15)
        assert p1(1.0) * p1(-1.0) <= 0
        assert abs(p1(1j)) <= 1e-12 * max(1.0, np.abs(p1.coefficients).max())


def test_p1_roots_come_in_pairs(real_state):
    p1 = build_p1_real(real_state, Party.A)
    roots = p1.roots()
    for root in roots:
        if abs(root) < 1e-6:
            continue
        partner = -1 / root
        assert np.abs(roots - partner).min() <= 1e-6 * (1 + abs(partner))


def test_p1_vanishes_at_zero_for_gate_state(ghz):
    p1 = build_p1_real(ghz, Party.A)
    assert p1.coeff_a == pytest.approx(0, abs=1e-14)


def test_p1_matches_rotated_residuals(real_state):
    p1 = build_p1_real(real_state, Party.B)
    t = t_matrices(real_state, Party.B)
    for alpha in np.linspace(-1.2, 1.2, 7):
        direct = gate_residuals(t.mixed(rotation(alpha))).r1
        assert p1.at_angle(alpha) == pytest.approx(direct, abs=1e-12)


def test_p1_needs_real_amplitudes(complex_state):
    with pytest.raises(StructureViolation):
        build_p1_real(complex_state, Party.A)


def test_ghz_needs_no_rotation(ghz):
    result = find_gate_unitary_real(ghz, Party.C)
    assert result.alpha == 0
    assert result.residuals.max_abs <= 1e-9
    rotated = apply_local_unitary(ghz, Party.C, rotation(np.pi / 4))
    assert gate_residuals(t_matrices(rotated, Party.C)).max_abs <= 1e-15


@pytest.mark.parametrize("party", list(Party))
def test_real_gate_search(real_state, party):
    result = find_gate_unitary_real(real_state, party, probe_lambda=2.0)
    assert result.party is party
    assert result.zeta == 0
    assert -np.pi / 4 <= result.alpha <= np.pi / 4
    assert result.residuals.max_abs <= 1e-9
    assert gate_residuals(t_matrices(result.transformed, party)).max_abs <= 1e-9
    assert result.povm is not None
    assert result.povm.party is party


def test_real_gate_search_without_probe(real_state):
    assert find_gate_unitary_real(real_state, Party.A).povm is None


def test_real_gate_search_on_random_states():
    for seed in range(20):
        state = random_state(seed, Ensemble.GHZ_CLASS_REAL)
        for party in Party:
            result = find_gate_unitary_real(state, party, probe_lambda=1.5)
            assert result.residuals.max_abs <= 1e-9
            fingerprint = compute_invariants(result.transformed)
            assert orbit_fingerprints_equal(
                fingerprint, compute_invariants(state), 1e-8
            ) is OrbitRelation.SAME_ORBIT


def test_real_gate_search_needs_ghz_class(w):
    with pytest.raises(NotGhzClass):
        find_gate_unitary_real(w, Party.A)


def test_real_gate_search_needs_real_amplitudes(complex_state):
    with pytest.raises(StructureViolation):
        find_gate_unitary_real(complex_state, Party.A)


def test_gate_search_result_to_dict(real_state):
    output = find_gate_unitary_real(real_state, Party.C).to_dict()
    assert output["party"] == "C"
    assert output["candidates_tried"] == 1
    assert set(output["residuals"]) == {"r1", "r2"}

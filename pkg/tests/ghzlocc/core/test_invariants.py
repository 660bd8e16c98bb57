import itertools

import numpy as np
import pytest

from ghzlocc.core.invariants import (
    Im6Sign,
    OrbitRelation,
    brute_force_invariants,
    compute_invariants,
    orbit_fingerprints_equal,
    trace_moments,
)
from ghzlocc.state import (
    Ensemble,
    Party,
    PureState3Q,
    apply_kraus,
    conjugate,
    haar_unitary,
    random_state,
    random_two_outcome_povm,
    t_matrices,
)
from ghzlocc.state.pure_state import TMatrixPair, apply_local_unitaries


def assert_fingerprints_close(first, second, tolerance=1e-9):
    assert np.abs(first.real_part - second.real_part).max() <= tolerance
    assert abs(first.i6 - second.i6) <= tolerance


def test_product_state_invariants(product):
    for invariants in (compute_invariants(product), brute_force_invariants(product)):
        assert invariants.i1 == pytest.approx(1)
        assert invariants.i2 == pytest.approx(1)
        assert invariants.i3 == pytest.approx(1)
        assert invariants.i4 == pytest.approx(0)
        assert invariants.i5 == pytest.approx(1)
        assert invariants.i6 == pytest.approx(1)
        assert invariants.im6_sign is Im6Sign.ZERO


def test_ghz_invariants(ghz):
    invariants = compute_invariants(ghz)
    assert invariants.i1 == pytest.approx(0.5)
    assert invariants.i2 == pytest.approx(0.5)
    assert invariants.i3 == pytest.approx(0.5)
    assert invariants.i4 > 0
    assert_fingerprints_close(invariants, brute_force_invariants(ghz))


def test_w_state_has_no_three_tangle(w):
    assert compute_invariants(w).i4 == pytest.approx(0, abs=1e-15)
    assert brute_force_invariants(w).i4 == pytest.approx(0, abs=1e-15)


def test_real_state_has_no_im6(real_state):
    invariants = compute_invariants(real_state)
    assert invariants.im6_sign is Im6Sign.ZERO
    assert abs(invariants.i6.imag) < 1e-15


@pytest.mark.parametrize("ensemble", list(Ensemble))
def test_compute_matches_brute_force(ensemble):
    for seed in range(3):
        state = random_state(seed, ensemble)
        assert_fingerprints_close(compute_invariants(state), brute_force_invariants(state))


def test_invariants_under_local_unitaries(rng):
    for seed in range(5):
        state = random_state(seed, Ensemble.COMPLEX_HAAR)
        before = compute_invariants(state)
        for _ in range(5):
            image = apply_local_unitaries(state, {party: haar_unitary(rng) for party in Party})
            assert_fingerprints_close(before, compute_invariants(image))


def test_conjugation(complex_state):
    original = compute_invariants(complex_state)
    conjugated = compute_invariants(conjugate(complex_state))
    assert np.abs(original.real_part - conjugated.real_part).max() < 1e-12
    assert abs(conjugated.i6 - original.i6.conjugate()) < 1e-12
    assert conjugated.im6_sign is original.im6_sign.flipped()


def test_three_tangle_under_party_permutations(complex_state):
    i4 = compute_invariants(complex_state).i4
    for axes in itertools.permutations(range(3)):
        permuted = PureState3Q.from_tensor(np.transpose(complex_state.tensor, axes))
        assert compute_invariants(permuted).i4 == pytest.approx(i4, abs=1e-9)


def test_entanglement_does_not_increase_on_average(rng):
    for seed in range(20):
        state = random_state(seed, Ensemble.GHZ_CLASS_COMPLEX)
        party = list(Party)[seed % 3]
        k0, k1 = random_two_outcome_povm(rng)
        outcomes = [apply_kraus(state, party, k) for k in (k0, k1)]
        before = compute_invariants(state)
        after = [(compute_invariants(outcome), q) for outcome, q in outcomes]
        for name in ("i1", "i2", "i3"):
            averaged = sum(q * (1 - getattr(invariants, name)) for invariants, q in after)
            assert averaged <= 1 - getattr(before, name) + 1e-12
        assert sum(q * invariants.i4 for invariants, q in after) <= before.i4 + 1e-12


def test_orbit_relations(complex_state, ghz, product, rng):
    fingerprint = compute_invariants(complex_state)
    assert orbit_fingerprints_equal(fingerprint, fingerprint, 1e-8) is OrbitRelation.SAME_ORBIT
    conjugated = compute_invariants(conjugate(complex_state))
    assert orbit_fingerprints_equal(fingerprint, conjugated, 1e-8) is OrbitRelation.CONJUGATE_ORBIT
    image = apply_local_unitaries(complex_state, {Party.B: haar_unitary(rng)})
    assert orbit_fingerprints_equal(fingerprint, compute_invariants(image), 1e-8) is OrbitRelation.SAME_ORBIT
    relation = orbit_fingerprints_equal(compute_invariants(ghz), compute_invariants(product), 1e-8)
    assert relation is OrbitRelation.DIFFERENT


def test_zero_sign_against_nonzero_sign_is_different(complex_state, real_state):
    fingerprint = compute_invariants(complex_state)
    zero_sign = compute_invariants(real_state)
    assert orbit_fingerprints_equal(fingerprint, zero_sign, 10.0) is OrbitRelation.DIFFERENT


def test_orbit_tolerance_must_be_positive(ghz):
    fingerprint = compute_invariants(ghz)
    with pytest.raises(ValueError):
        orbit_fingerprints_equal(fingerprint, fingerprint, 0)


def test_invariants_to_dict(complex_state):
    invariants = compute_invariants(complex_state)
    output = invariants.to_dict()
    assert output["I1"] == invariants.i1
    assert output["I6"] == [invariants.i6.real, invariants.i6.imag]
    assert output["im6_sign"] in ("+", "-")


def test_ghz_trace_moments(ghz):
    moments = trace_moments(t_matrices(ghz, Party.A))
    assert moments.f0 == pytest.approx(0.25)
    assert moments.f1 == pytest.approx(0.25)
    assert moments.tr01 == 0
    assert moments.tr10 == 0
    assert moments.cross == 0


def test_rotated_ghz_trace_moments():
    t = TMatrixPair(np.eye(2, dtype=complex) / 2, np.diag([-1, 1]).astype(complex) / 2, Party.C)
    moments = trace_moments(t)
    assert moments.f0 == pytest.approx(1 / 8)
    assert moments.f1 == pytest.approx(1 / 8)


def test_trace_moments_without_second_slice(product):
    moments = trace_moments(t_matrices(product, Party.A))
    assert moments.f1 == 0
    assert moments.g11 == 0
    assert moments.tr01 == 0
    assert moments.mixed_rows == 0
    assert moments.mixed_columns == 0
    assert moments.h1 == 0

import numpy as np
import pytest

from ghzlocc.config import Tolerances
from ghzlocc.core.invariants import compute_invariants
from ghzlocc.errors import EnsembleExhausted
from ghzlocc.state import Ensemble, haar_unitary, random_state


def test_same_seed_same_state():
    first = random_state(7)
    second = random_state(7)
    assert first.amps.tobytes() == second.amps.tobytes()
    assert random_state(8).amps.tobytes() != first.amps.tobytes()


def test_seed_sequence_is_accepted():
    seed = np.random.SeedSequence([3, 1])
    assert np.array_equal(random_state(seed).amps, random_state(np.random.SeedSequence([3, 1])).amps)


def test_real_orthogonal_ensemble():
    for seed in range(5):
        state = random_state(seed, Ensemble.REAL_ORTHOGONAL)
        assert np.abs(state.amps.imag).max() == 0


def test_ensemble_from_string():
    expected = random_state(2, Ensemble.REAL_ORTHOGONAL).amps
    assert np.array_equal(random_state(2, "real_orthogonal").amps, expected)
    with pytest.raises(ValueError):
        random_state(2, "gaussian")


def test_ghz_class_complex_ensemble(tolerances):
    fingerprints = [compute_invariants(random_state(seed, Ensemble.GHZ_CLASS_COMPLEX)) for seed in range(50)]
    assert all(fingerprint.i4 > tolerances.tangle for fingerprint in fingerprints)
    assert all(max(fingerprint.real_part[:3]) < 1 for fingerprint in fingerprints)
    with_phase = sum(abs(fingerprint.i6.imag) > tolerances.im6 for fingerprint in fingerprints)
    assert with_phase >= 48


def test_ghz_class_real_ensemble_is_real(tolerances):
    for seed in range(10):
        state = random_state(seed, Ensemble.GHZ_CLASS_REAL)
        assert state.is_real()
        assert compute_invariants(state).i4 > tolerances.tangle


def test_ensemble_exhausted():
    with pytest.raises(EnsembleExhausted):
        random_state(0, Ensemble.GHZ_CLASS_REAL, Tolerances(tangle=10.0), max_attempts=3)


def test_haar_unitary_is_unitary(rng):
    for real in (False, True):
        u = haar_unitary(rng, 4, real=real)
        assert np.abs(u.conj().T @ u - np.eye(4)).max() < 1e-14
    assert np.abs(haar_unitary(rng, real=True).imag).max() == 0

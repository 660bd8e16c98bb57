import os

import numpy as np
import pytest

from ghzlocc.config import DEFAULT_TOLERANCES
from ghzlocc.core.gate_search.real_gate_search import find_gate_unitary_real
from ghzlocc.core.ghz_canonical import ghz_canonical_state
from ghzlocc.loaders import read_state
from ghzlocc.state import Ensemble, Party, PureState3Q, ghz_state, random_state, w_state
from ghzlocc.state.local_operators import GHZ_ROTATION
from ghzlocc.state.pure_state import apply_local_unitary

DATA_DIR_NAME = "data"
GHZ_STATE_FILE = "ghz_state.json"
W_STATE_FILE = "w_state.json"
PRODUCT_STATE_FILE = "product_state.json"
REAL_STATE_FILE = "real_state.json"
MALFORMED_STATE_FILE = "malformed_state.json"
NON_NORMALIZED_STATE_FILE = "non_normalized_state.json"
COMPLEX_STATE_SEED = 7
CANONICAL_PARAMETERS = (0.8, 0.6, 1.0, (1.0, 0.7, 0.5))
TEST_DIR = os.path.dirname(__file__)


@pytest.fixture
def test_data_dir():
    return os.path.join(TEST_DIR, DATA_DIR_NAME)


@pytest.fixture
def ghz_state_file(test_data_dir):
    return os.path.join(test_data_dir, GHZ_STATE_FILE)


@pytest.fixture
def w_state_file(test_data_dir):
    return os.path.join(test_data_dir, W_STATE_FILE)


@pytest.fixture
def product_state_file(test_data_dir):
    return os.path.join(test_data_dir, PRODUCT_STATE_FILE)


@pytest.fixture
def real_state_file(test_data_dir):
    return os.path.join(test_data_dir, REAL_STATE_FILE)


@pytest.fixture
def malformed_state_file(test_data_dir):
    return os.path.join(test_data_dir, MALFORMED_STATE_FILE)


@pytest.fixture
def non_normalized_state_file(test_data_dir):
    return os.path.join(test_data_dir, NON_NORMALIZED_STATE_FILE)


@pytest.fixture
def tolerances():
    return DEFAULT_TOLERANCES


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def ghz():
    return ghz_state()


@pytest.fixture
def w():
    return w_state()


@pytest.fixture
def product():
    return PureState3Q.basis("000")


@pytest.fixture
def real_state(real_state_file):
    return read_state(real_state_file)


@pytest.fixture
def complex_state():
    return random_state(COMPLEX_STATE_SEED, Ensemble.GHZ_CLASS_COMPLEX)


@pytest.fixture
def canonical_state():
    mu, nu, gamma, deltas = CANONICAL_PARAMETERS
    return ghz_canonical_state(mu, nu, gamma, deltas)


@pytest.fixture
def real_gate_state(real_state):
    return find_gate_unitary_real(real_state, Party.A).transformed


@pytest.fixture
def rotated_ghz(ghz):
    """GHZ after the rotation on Charlie: T0 = identity / 2, T1 = diag(-1, 1) / 2"""
    return apply_local_unitary(ghz, Party.C, GHZ_ROTATION)

"""Benchmarks of the invariant computation, the gate searches and the protocols.

For more information on writing benchmarks:
https://asv.readthedocs.io/en/stable/writing_benchmarks.html."""
import numpy as np

from ghzlocc.core.gate_search.complex_gate_search import find_gate_unitary_complex
from ghzlocc.core.gate_search.real_gate_search import find_gate_unitary_real
from ghzlocc.core.invariants import brute_force_invariants, compute_invariants
from ghzlocc.protocols import TargetComplexSpec, ghz_to_complex
from ghzlocc.state import Ensemble, Party, random_state

REAL_STATE = random_state(1, Ensemble.GHZ_CLASS_REAL)
COMPLEX_STATE = random_state(1, Ensemble.GHZ_CLASS_COMPLEX)


def time_compute_invariants():
    """Time computations are prefixed with 'time'."""
    compute_invariants(COMPLEX_STATE)


def time_brute_force_invariants():
    brute_force_invariants(COMPLEX_STATE)


def time_real_gate_search():
    find_gate_unitary_real(REAL_STATE, Party.A, probe_lambda=2.0)


def time_complex_gate_search():
    find_gate_unitary_complex(COMPLEX_STATE, Party.A)


def time_ghz_to_complex():
    ghz_to_complex(TargetComplexSpec(np.pi / 3, np.pi / 4, np.pi / 5))


def mem_random_states():
    """Memory computations are prefixed with 'mem' or 'peakmem'."""
    return [random_state(seed) for seed in range(100)]

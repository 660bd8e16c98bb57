from .config import DEFAULT_TOLERANCES, RunConfig, Tolerances
from .core.gate_search.find_gate_unitary import find_gate_unitary
from .core.ghz_canonical import classify, decompose_ghz, omega, subclass_of
from .core.invariants import compute_invariants, orbit_fingerprints_equal
from .core.povm.deterministic_povm import build_deterministic_povm
from .loaders import read_state, write_state
from .protocols.ghz_protocols import TargetComplexSpec, TargetRealSpec, ghz_to_complex, ghz_to_real
from .state import Party, PureState3Q, ghz_state, random_state, w_state

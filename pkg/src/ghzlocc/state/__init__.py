from .local_operators import haar_unitary, random_two_outcome_povm
from .pure_state import (
    Party,
    PureState3Q,
    TMatrixPair,
    apply_kraus,
    apply_local_unitary,
    conjugate,
    fidelity_up_to_global_phase,
    ghz_state,
    t_matrices,
    w_state,
)
from .random_state import Ensemble, random_state

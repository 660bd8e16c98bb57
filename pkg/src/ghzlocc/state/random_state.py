from __future__ import annotations

import logging
from enum import Enum
from typing import Union

import numpy as np

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.errors import EnsembleExhausted
from ghzlocc.state.local_operators import haar_unitary
from ghzlocc.state.pure_state import Party, PureState3Q, marginal_purity

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence]


class Ensemble(str, Enum):
    """Distributions random states are drawn from"""

    COMPLEX_HAAR = "complex_haar"
    REAL_ORTHOGONAL = "real_orthogonal"
    GHZ_CLASS_REAL = "ghz_class_real"
    GHZ_CLASS_COMPLEX = "ghz_class_complex"

    @property
    def real(self) -> bool:
        return self in (Ensemble.REAL_ORTHOGONAL, Ensemble.GHZ_CLASS_REAL)

    @property
    def ghz_class_only(self) -> bool:
        return self in (Ensemble.GHZ_CLASS_REAL, Ensemble.GHZ_CLASS_COMPLEX)


DEFAULT_MAX_ATTEMPTS = 1000


def _sample(rng: np.random.Generator, real: bool) -> PureState3Q:
    return PureState3Q.from_amplitudes(haar_unitary(rng, 8, real=real)[:, 0])


def _is_genuinely_tripartite(state: PureState3Q, tolerances: Tolerances) -> bool:
    # imported here, the invariants module depends on this package
    from ghzlocc.core.invariants import hyperdeterminant

    if 2 * abs(hyperdeterminant(state)) < tolerances.tangle:
        return False
    return all(marginal_purity(state, party) < 1 - tolerances.tangle for party in Party)


def random_state(
    seed: SeedLike,
    ensemble: Ensemble | str = Ensemble.COMPLEX_HAAR,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> PureState3Q:
    """Draws a random normalized state

    The state is the first column of a Haar-random unitary (orthogonal for the real ensembles). The
    GHZ-class ensembles resample until the 3-tangle exceeds ``tolerances.tangle`` and every one-qubit
    marginal has rank 2.

    Args:
        seed: an integer or a ``numpy.random.SeedSequence``; equal seeds give bit-identical states
        ensemble: the distribution to draw from
        tolerances: thresholds of the GHZ-class rejection test
        max_attempts: bound on the rejection loop

    Raises:
        EnsembleExhausted: if no sample is accepted within ``max_attempts`` draws
    """
    ensemble = Ensemble(ensemble)
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        state = _sample(rng, ensemble.real)
        if not ensemble.ghz_class_only or _is_genuinely_tripartite(state, tolerances):
            return state
    logger.warning("No %s sample accepted after %d attempts", ensemble.value, max_attempts)
    raise EnsembleExhausted(f"No {ensemble.value} sample accepted after {max_attempts} attempts")

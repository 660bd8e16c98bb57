"""Gate search for states with real amplitudes.

For real T matrices ``Tr[(T T^t)^2] = a^2 - 2 det(T)^2``, so the first gate condition factors as

    r1 = 2 (b det T0 - a det T1) (b det T0 + a det T1).

Zeros of the first factor also satisfy the second condition. That factor changes sign when the
rotation angle advances by a quarter turn, so a root in [-pi/4, pi/4] always exists and is found by
bracketed bisection.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import Optional

import numpy as np
import scipy.optimize

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.gate_search.abstract_gate_search import AbstractGateSearch, GateSearchResult
from ghzlocc.core.gate_search.gate_conditions import batched_gate_residuals, gate_residuals, rotated_pairs
from ghzlocc.core.gate_search.structured_polynomials import PolynomialP8, sample_angles
from ghzlocc.core.ghz_canonical import StateClass, classify
from ghzlocc.core.povm.deterministic_povm import build_deterministic_povm
from ghzlocc.errors import NotGhzClass, RootRefinementFailed, StructureViolation
from ghzlocc.state.local_operators import rotation
from ghzlocc.state.pure_state import Party, PureState3Q, TMatrixPair, t_matrices

logger = logging.getLogger(__name__)

BISECTION_XTOL = 1e-13


def has_real_amplitudes(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return float(np.abs(state.amps.imag).max()) <= tolerances.norm


def build_p1_real(
    state: PureState3Q, party: Party, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> PolynomialP8:
    """Fits the degree-8 polynomial whose roots ``tan(alpha)`` make ``rotation(alpha)`` satisfy cond1

    Raises:
        StructureViolation: if the state has complex amplitudes or the fit does not match the
            structured form
    """
    if not has_real_amplitudes(state, tolerances):
        raise StructureViolation("The real polynomial needs a state with real amplitudes")
    alphas = sample_angles()
    unitaries = np.stack([rotation(alpha) for alpha in alphas])
    r1, _ = batched_gate_residuals(rotated_pairs(t_matrices(state, Party(party)), unitaries))
    return PolynomialP8.fit(alphas, r1, tolerances)


def real_gate_factor(t: TMatrixPair, alpha: float) -> float:
    """``b' det T0' - a' det T1'`` for the pair rotated by ``rotation(alpha)``"""
    rotated = t.mixed(rotation(alpha))
    return float((rotated.b * np.linalg.det(rotated.t0) - rotated.a * np.linalg.det(rotated.t1)).real)


class RealGateSearch(AbstractGateSearch):
    """Bisection for a real rotation making a real-amplitude state a gate state"""

    def search(self, probe_lambda: Optional[float] = None) -> GateSearchResult:
        """Bisects for the rotation angle

        Args:
            probe_lambda (float): if given, the deterministic measurement of this parameter is built
                on the result and attached to it
        """
        if classify(self.state, self.tolerances) is not StateClass.GHZ_CLASS:
            raise NotGhzClass("The gate search needs a GHZ-class state")
        if not has_real_amplitudes(self.state, self.tolerances):
            raise StructureViolation("The real gate search needs a state with real amplitudes")
        alpha = 0.0 if gate_residuals(self.t).satisfied(self.tolerances.gate) else self._bisect()
        result = self._result(rotation(alpha), alpha, 0.0)
        if not result.residuals.satisfied(self.tolerances.gate):
            raise RootRefinementFailed(
                f"Residuals {result.residuals.max_abs:.3e} at alpha = {alpha!r} exceed tolerance"
            )
        logger.debug("Real gate search on party %s: alpha = %r", self.party.value, alpha)
        if probe_lambda is None:
            return result
        povm = build_deterministic_povm(
            self.state, self.party, rotation(alpha), probe_lambda, self.tolerances
        )
        return dataclasses.replace(result, povm=povm)

    def _bisect(self) -> float:
        lower, upper = -np.pi / 4, np.pi / 4
        if real_gate_factor(self.t, upper) == 0:
            return upper
        try:
            alpha, report = scipy.optimize.brentq(
                lambda angle: real_gate_factor(self.t, angle),
                lower,
                upper,
                xtol=BISECTION_XTOL,
                full_output=True,
                disp=False,
            )
        except ValueError as error:
            raise RootRefinementFailed(f"No sign change on [-pi/4, pi/4]: {error}") from error
        if not report.converged:
            raise RootRefinementFailed(f"Bisection stopped after {report.iterations} iterations")
        return float(alpha)


def find_gate_unitary_real(
    state: PureState3Q,
    party: Party,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    probe_lambda: Optional[float] = None,
) -> GateSearchResult:
    """Finds alpha in [-pi/4, pi/4] such that ``rotation(alpha)`` on ``party`` yields a gate state

    Args:
        state: a GHZ-class state with real amplitudes
        party: the party the rotation acts on
        tolerances: ``tolerances.gate`` bounds the residuals of the result
        probe_lambda: if given, the deterministic measurement of this parameter is attached

    Raises:
        NotGhzClass: if the state is not in the GHZ class
        StructureViolation: if the state has complex amplitudes
        RootRefinementFailed: if bisection does not converge to a gate state
    """
    return RealGateSearch(state, party, tolerances).search(probe_lambda=probe_lambda)

"""Gate search for general (complex) states.

The party applies ``phased_rotation(alpha, zeta)``. For fixed ``zeta`` both gate residuals are
structured degree-8 polynomials in ``z = tan(alpha)`` and reduce to cubics ``g1``, ``g2`` in
``w = 1/z - z``. A common real root exists where the resultant of the cubics vanishes, which is a
trigonometric polynomial in ``zeta`` with the frequencies 2, 6, 10, 14 and 18. The search scans the
resultant on a grid, refines its zeros, and keeps the first candidate whose deterministic measurement
has outcomes in the same orbit.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import List, Tuple

import numpy as np
import numpy.typing as npt
import scipy.optimize

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.gate_search.abstract_gate_search import AbstractGateSearch, GateSearchResult
from ghzlocc.core.gate_search.gate_conditions import batched_gate_residuals, gate_residuals, rotated_pairs
from ghzlocc.core.gate_search.real_gate_search import has_real_amplitudes
from ghzlocc.core.gate_search.structured_polynomials import (
    ReducedCubic,
    fit_structured_coefficients,
    sample_angles,
    sylvester_resultant,
    w_to_z,
)
from ghzlocc.core.ghz_canonical import StateClass, classify
from ghzlocc.core.invariants import OrbitRelation
from ghzlocc.core.povm.deterministic_povm import build_deterministic_povm
from ghzlocc.errors import (
    GhzLoccError,
    NoSignChange,
    NonDeterministicPovm,
    NotGhzClass,
    OnlyComplexCommonRoots,
    OnlyConjugateOrbitOutcomes,
)
from ghzlocc.state.local_operators import phased_rotation
from ghzlocc.state.pure_state import Party, PureState3Q, TMatrixPair, t_matrices

logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 512
DEFAULT_PROBE_LAMBDA = 2.0
ZETA_XTOL = 1e-13
# a real root of g1 is a common root when g2 there is this small relative to its terms
COMMON_ROOT_TOLERANCE = 1e-6
# below these the cubics or the resultant are treated as identically zero
COEFFICIENT_FLOOR = 1e-14
RESULTANT_FLOOR = 1e-30


def _phased_rotations(alphas: npt.ArrayLike, zetas: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """``phased_rotation(alpha, zeta)`` for every pair, shape ``(len(zetas), len(alphas), 2, 2)``"""
    c, s = np.cos(alphas), np.sin(alphas)
    plus = np.exp(1j * np.asarray(zetas, dtype=np.float64))[:, None]
    minus = plus.conj()
    unitaries = np.empty(plus.shape[:1] + c.shape + (2, 2), dtype=np.complex128)
    unitaries[..., 0, 0] = c * plus
    unitaries[..., 0, 1] = s * minus
    unitaries[..., 1, 0] = -s * plus
    unitaries[..., 1, 1] = c * minus
    return unitaries


def _cubic_coefficients(structured: np.ndarray) -> np.ndarray:
    """(A, B, C, D) to the descending coefficients of g(w)"""
    a, b, c, d = np.moveaxis(structured, -1, 0)
    return np.stack([a, b, c + 2 * a, d + b], axis=-1)


def _cubic_coefficients_at(
    t: TMatrixPair, zetas: npt.ArrayLike, tolerances: Tolerances
) -> Tuple[np.ndarray, np.ndarray]:
    alphas = sample_angles()
    zetas = np.atleast_1d(np.asarray(zetas, dtype=np.float64))
    r1, r2 = batched_gate_residuals(rotated_pairs(t, _phased_rotations(alphas, zetas)))
    first = fit_structured_coefficients(alphas, r1, tolerances)
    second = fit_structured_coefficients(alphas, r2, tolerances)
    return _cubic_coefficients(first), _cubic_coefficients(second)


def resultant_values(t: TMatrixPair, zetas: npt.ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """Res(g1, g2) at each ``zeta``"""
    g1, g2 = _cubic_coefficients_at(t, zetas, tolerances)
    return sylvester_resultant(g1, g2)


def build_cubics_complex(
    state: PureState3Q, party: Party, zeta: float, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[ReducedCubic, ReducedCubic]:
    """The cubics of the first and second gate condition for the phase ``zeta``

    Raises:
        StructureViolation: if the sampled residuals do not fit the structured form
    """
    g1, g2 = _cubic_coefficients_at(t_matrices(state, Party(party)), [zeta], tolerances)
    return ReducedCubic(*(float(c) for c in g1[0])), ReducedCubic(*(float(c) for c in g2[0]))


def resultant_scan(
    state: PureState3Q,
    party: Party,
    grid_size: int = DEFAULT_GRID_SIZE,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> List[float]:
    """Zeros of the resultant on [0, 2 pi), in increasing order

    Sign changes between grid points are refined with Brent's method; grid points where
    ``|Res| <= tolerances.res * max |Res|`` are kept as they are. States with real amplitudes always
    have the candidate ``zeta = 0``, where the resultant has a double zero.

    Raises:
        NoSignChange: if no candidate is found
    """
    if grid_size < 64:
        raise ValueError("grid_size must be at least 64")
    t = t_matrices(state, Party(party))
    grid = np.linspace(0, 2 * np.pi, grid_size, endpoint=False)
    values = resultant_values(t, grid, tolerances)
    scale = float(np.abs(values).max())
    if scale <= RESULTANT_FLOOR:
        return [0.0]
    candidates = [0.0] if has_real_amplitudes(state, tolerances) else []
    closed_grid = np.append(grid, 2 * np.pi)
    closed_values = np.append(values, values[0])
    for k in range(grid_size):
        if abs(closed_values[k]) <= tolerances.res * scale:
            candidates.append(float(grid[k]))
        elif closed_values[k] * closed_values[k + 1] < 0:
            root = scipy.optimize.brentq(
                lambda zeta: float(resultant_values(t, zeta, tolerances)[0]),
                closed_grid[k],
                closed_grid[k + 1],
                xtol=ZETA_XTOL,
            )
            candidates.append(float(np.mod(root, 2 * np.pi)))
    if not candidates:
        raise NoSignChange(f"The resultant has no zero on a grid of {grid_size} points")
    return _distinct(candidates, 2 * np.pi)


def _distinct(angles: List[float], period: float, spacing: float = 1e-9) -> List[float]:
    result: List[float] = []
    for angle in sorted(float(np.mod(a, period)) for a in angles):
        if not result or angle - result[-1] > spacing:
            result.append(angle)
    if len(result) > 1 and result[0] + period - result[-1] <= spacing:
        result.pop()
    return result


def _common_real_roots(g1: ReducedCubic, g2: ReducedCubic) -> List[float]:
    """Rotation angles of the real common roots of the cubics, best match first"""
    primary, secondary = g1, g2
    if primary.scale <= COEFFICIENT_FLOOR:
        if secondary.scale <= COEFFICIENT_FLOOR:
            return [0.0]
        primary, secondary = g2, g1
    matches = [(secondary.relative_value(w), float(np.arctan(w_to_z(w)))) for w in primary.real_roots()]
    if primary.has_vanishing_leading_coefficient():
        # root at w = infinity, i.e. z = 0
        matches.append((abs(secondary.c3) / max(secondary.scale, np.finfo(float).tiny), 0.0))
    return [alpha for value, alpha in sorted(matches) if value <= COMMON_ROOT_TOLERANCE]


class ComplexGateSearch(AbstractGateSearch):
    """Resultant scan over the phase ``zeta`` followed by the common-root search in ``alpha``"""

    def search(
        self, grid_size: int = DEFAULT_GRID_SIZE, probe_lambda: float = DEFAULT_PROBE_LAMBDA
    ) -> GateSearchResult:
        """Searches the zeros of the resultant in increasing order of zeta

        Args:
            grid_size (int): number of points of the resultant scan over [0, 2 pi)
            probe_lambda (float): the measurement parameter used to confirm that the outcomes of a
                candidate share an orbit
        """
        if classify(self.state, self.tolerances) is not StateClass.GHZ_CLASS:
            raise NotGhzClass("The gate search needs a GHZ-class state")
        # zeta and zeta + pi/2 give gate states related by a phase flip on the party
        zetas = _distinct(resultant_scan(self.state, self.party, grid_size, self.tolerances), np.pi / 2)
        tried = 0
        conjugate_seen = False
        for zeta in zetas:
            g1, g2 = build_cubics_complex(self.state, self.party, zeta, self.tolerances)
            for alpha in _common_real_roots(g1, g2):
                tried += 1
                result = self._try_candidate(alpha, zeta, tried, probe_lambda)
                if isinstance(result, GateSearchResult):
                    return result
                conjugate_seen = conjugate_seen or result is OrbitRelation.CONJUGATE_ORBIT
        logger.debug("Complex gate search on party %s failed after %d candidates", self.party.value, tried)
        if conjugate_seen:
            raise OnlyConjugateOrbitOutcomes(
                f"All {tried} gate states of party {self.party.value} give conjugate-orbit outcomes"
            )
        raise OnlyComplexCommonRoots(f"No real common root among {len(zetas)} resultant zeros")

    def _polish(self, alpha: float, zeta: float) -> Tuple[float, float]:
        def conditions(params):
            residuals = gate_residuals(self.t.mixed(phased_rotation(*params)))
            return [residuals.r1, residuals.r2]

        solution = scipy.optimize.root(conditions, [alpha, zeta], method="hybr", options={"xtol": 1e-14})
        return float(solution.x[0]), float(solution.x[1])

    def _try_candidate(self, alpha: float, zeta: float, tried: int, probe_lambda: float):
        """Returns the result for an accepted candidate, otherwise the reason for rejecting it"""
        alpha, zeta = self._polish(alpha, zeta)
        unitary = phased_rotation(alpha, zeta)
        result = self._result(unitary, alpha, zeta, candidates_tried=tried)
        residuals, tolerance = result.residuals, self.tolerances.gate
        if not residuals.satisfied(tolerance):
            logger.debug("Rejected alpha = %r, zeta = %r: residual %.3e", alpha, zeta, residuals.max_abs)
            return OrbitRelation.DIFFERENT
        try:
            povm = build_deterministic_povm(
                self.state, self.party, unitary, probe_lambda, self.tolerances
            )
        except NonDeterministicPovm as error:
            logger.debug("Rejected alpha = %r, zeta = %r: %s outcomes", alpha, zeta, error.verdict)
            return OrbitRelation(error.verdict)
        except GhzLoccError as error:
            logger.debug("Rejected alpha = %r, zeta = %r: %s", alpha, zeta, error.detail)
            return OrbitRelation.DIFFERENT
        return dataclasses.replace(result, povm=povm)


def find_gate_unitary_complex(
    state: PureState3Q,
    party: Party,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    grid_size: int = DEFAULT_GRID_SIZE,
    probe_lambda: float = DEFAULT_PROBE_LAMBDA,
) -> GateSearchResult:
    """Finds ``phased_rotation(alpha, zeta)`` on ``party`` giving a gate state with same-orbit outcomes

    Args:
        state: a GHZ-class state
        party: the party the unitary acts on
        tolerances: tolerances of the search, the gate check and the orbit verdict
        grid_size: number of points of the resultant scan over [0, 2 pi)
        probe_lambda: the measurement parameter used to confirm that the outcomes share an orbit

    Raises:
        NotGhzClass: if the state is not in the GHZ class
        NoSignChange: if the resultant scan finds no zero
        OnlyConjugateOrbitOutcomes: if every gate state found gives conjugate-orbit outcomes
        OnlyComplexCommonRoots: if no resultant zero gives a real common root
    """
    return ComplexGateSearch(state, party, tolerances).search(grid_size=grid_size, probe_lambda=probe_lambda)

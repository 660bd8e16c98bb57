"""Deterministic two-outcome measurements on gate states.

After the gate unitary, the measuring party applies ``E0 = diag(sqrt x, sqrt y)`` and
``E1 = diag(sqrt(1-x), sqrt(1-y))``. On a gate state both outcomes lie in the same orbit whenever
``a^2 x (1-x) = b^2 y (1-y)``; with ``y = lambda x`` this fixes ``x`` as a function of ``lambda``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import numpy.typing as npt

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.gate_search.gate_conditions import gate_residuals
from ghzlocc.core.invariants import (
    InvariantVector,
    OrbitRelation,
    compute_invariants,
    orbit_fingerprints_equal,
    pencil_coefficients,
    trace_moments,
)
from ghzlocc.errors import GateConditionViolated, NonDeterministicPovm, OutOfRange
from ghzlocc.state.local_operators import PAULI_X, diagonal_kraus_pair
from ghzlocc.state.pure_state import (
    Mat2,
    Party,
    PureState3Q,
    TMatrixPair,
    apply_kraus,
    apply_local_unitary,
    t_matrices,
)

logger = logging.getLogger(__name__)

# positions of (the measuring party, the row party of its T matrices, the column party) in I1-I3
PURITY_ROLES: Dict[Party, Tuple[int, int, int]] = {
    Party.A: (0, 1, 2),
    Party.B: (1, 0, 2),
    Party.C: (2, 0, 1),
}


@dataclass(frozen=True)
class DiagonalPovm:
    """E0 = diag(sqrt x, sqrt y) and E1 = diag(sqrt(1-x), sqrt(1-y)) acting on ``party``"""

    x: float
    y: float
    party: Party

    def __post_init__(self):
        if not (0 < self.x < 1 and 0 < self.y < 1):
            raise OutOfRange(f"POVM weights (x, y) = ({self.x!r}, {self.y!r}) must lie in (0, 1)")

    @property
    def kraus_pair(self) -> Tuple[Mat2, Mat2]:
        return diagonal_kraus_pair(self.x, self.y)


@dataclass(frozen=True, eq=False)
class DeterministicPovm:
    """A gate unitary followed by a diagonal measurement whose outcomes share an orbit

    ``pre_rotation`` includes the bit flip applied when the gate state has ``a > b``.
    """

    pre_rotation: Mat2
    diag: DiagonalPovm
    lam: float
    outcome_fingerprint: Optional[InvariantVector] = None
    bit_flipped: bool = False

    @property
    def party(self) -> Party:
        return self.diag.party

    @property
    def kraus_pair(self) -> Tuple[Mat2, Mat2]:
        """The Kraus operators including the pre-rotation"""
        e0, e1 = self.diag.kraus_pair
        return e0 @ self.pre_rotation, e1 @ self.pre_rotation

    def to_dict(self) -> dict:
        k0, k1 = self.kraus_pair
        return {
            "party": self.party.value,
            "lambda": self.lam,
            "x": self.diag.x,
            "y": self.diag.y,
            "bit_flipped": self.bit_flipped,
            "pre_rotation": self.pre_rotation,
            "kraus": [k0, k1],
        }


@dataclass(frozen=True, eq=False)
class PovmOutcome:
    """Both outcomes of a deterministic measurement with their probabilities and orbit verdict"""

    outcome0: PureState3Q
    outcome1: PureState3Q
    q0: float
    q1: float
    verdict: OrbitRelation
    invariants0: InvariantVector
    invariants1: InvariantVector

    def to_dict(self) -> dict:
        return {
            "q0": self.q0,
            "q1": self.q1,
            "verdict": self.verdict.value,
            "outcome0": self.outcome0,
            "outcome1": self.outcome1,
            "invariants0": self.invariants0.to_dict(),
            "invariants1": self.invariants1.to_dict(),
        }


def solve_condpovm(
    a: float, b: float, lam: float, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[float, float]:
    """Weights (x, y = lam x) of the deterministic measurement for the norms ``a``, ``b``

    Eliminating ``y`` from ``a^2 x (1-x) = b^2 y (1-y)`` gives
    ``x = (a^2 - b^2 lam) / (a^2 - b^2 lam^2)``; for ``a = b`` this is ``1 / (1 + lam)``.

    Raises:
        OutOfRange: if ``lam < 1`` or the weights leave (0, 1)
    """
    if lam < 1:
        raise OutOfRange(f"lambda = {lam!r} must be at least 1")
    if abs(a - b) <= tolerances.norm:
        x = 1 / (1 + lam)
    else:
        x = (a * a - b * b * lam) / (a * a - b * b * lam * lam)
    y = lam * x
    if not (0 < x < 1 and 0 < y < 1):
        raise OutOfRange(f"lambda = {lam!r} gives weights (x, y) = ({x!r}, {y!r}) outside (0, 1)")
    return x, y


def xycond_residuals(a: float, b: float, x: float, y: float) -> Tuple[float, float]:
    """Residuals of the polynomial and the rational form of the equal-outcome condition

    Returns:
        ``a^2 x (1-x) - b^2 y (1-y)`` and ``xy / (ax+by)^2 - (1-x)(1-y) / (a(1-x)+b(1-y))^2``
    """
    polynomial = a * a * x * (1 - x) - b * b * y * (1 - y)
    rational = x * y / (a * x + b * y) ** 2 - (1 - x) * (1 - y) / (a * (1 - x) + b * (1 - y)) ** 2
    return polynomial, rational


def require_gate_state(t: TMatrixPair, tolerances: Tolerances):
    residuals = gate_residuals(t)
    if not residuals.satisfied(tolerances.gate):
        raise GateConditionViolated(
            f"Gate residuals (r1, r2) = ({residuals.r1:.3e}, {residuals.r2:.3e}) on party "
            f"{t.party.value} exceed {tolerances.gate:.1e}"
        )


def apply_deterministic_povm(
    state: PureState3Q, povm: DeterministicPovm, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> PovmOutcome:
    """Applies both outcomes of a measurement to a state and compares their orbits

    Raises:
        GateConditionViolated: if the pre-rotated state is not a gate state for the party
        ZeroProbabilityOutcome: if an outcome has vanishing probability
    """
    rotated = apply_local_unitary(state, povm.party, povm.pre_rotation, tolerances)
    require_gate_state(t_matrices(rotated, povm.party), tolerances)
    e0, e1 = povm.diag.kraus_pair
    outcome0, q0 = apply_kraus(rotated, povm.party, e0, tolerances)
    outcome1, q1 = apply_kraus(rotated, povm.party, e1, tolerances)
    invariants0 = compute_invariants(outcome0, tolerances)
    invariants1 = compute_invariants(outcome1, tolerances)
    verdict = orbit_fingerprints_equal(invariants0, invariants1, tolerances.orbit)
    return PovmOutcome(outcome0, outcome1, q0, q1, verdict, invariants0, invariants1)


def build_deterministic_povm(
    state: PureState3Q,
    party: Party,
    pre_rotation: npt.ArrayLike,
    lam: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DeterministicPovm:
    """Builds the deterministic measurement of parameter ``lam`` on the gate state reached by ``pre_rotation``

    A bit flip is prepended to the measurement when the gate state has ``a > b``.

    Args:
        state: the state before the gate unitary
        party: the measuring party
        pre_rotation: the gate unitary on ``party``
        lam: the ratio ``y / x``, at least 1
        tolerances: ``tolerances.gate`` for the gate check, ``tolerances.orbit`` for the verdict

    Raises:
        GateConditionViolated: if ``pre_rotation`` does not produce a gate state
        OutOfRange: if no admissible weights exist for ``lam``
        NonDeterministicPovm: if the outcomes are not in the same orbit
    """
    party = Party(party)
    pre_rotation = np.asarray(pre_rotation, dtype=np.complex128)
    t = t_matrices(apply_local_unitary(state, party, pre_rotation, tolerances), party)
    require_gate_state(t, tolerances)
    bit_flipped = t.a > t.b + tolerances.norm
    if bit_flipped:
        pre_rotation = PAULI_X @ pre_rotation
        t = t.mixed(PAULI_X)
    x, y = solve_condpovm(t.a, t.b, lam, tolerances)
    povm = DeterministicPovm(pre_rotation, DiagonalPovm(x, y, party), lam, bit_flipped=bit_flipped)
    outcome = apply_deterministic_povm(state, povm, tolerances)
    if outcome.verdict is not OrbitRelation.SAME_ORBIT:
        logger.debug("Measurement on party %s gives %s outcomes", party.value, outcome.verdict.value)
        raise NonDeterministicPovm(
            f"Outcomes of the measurement on party {party.value} are {outcome.verdict.value}",
            outcome.verdict.value,
        )
    return DeterministicPovm(
        pre_rotation, povm.diag, lam, outcome_fingerprint=outcome.invariants0, bit_flipped=bit_flipped
    )


def outcome_invariants_closed_form(t: TMatrixPair, x: float, y: float) -> npt.NDArray[np.float64]:
    """I1..I5 of the outcome ``diag(sqrt x, sqrt y)`` computed from traces of the party's T matrices

    The invariants are returned in the physical order (I1 for A, I2 for B, I3 for C).
    """
    moments = trace_moments(t)
    a, b = moments.a, moments.b
    norm = a * x + b * y
    own = (x * x * a * a + 2 * x * y * moments.cross + y * y * b * b) / norm**2
    rows = (x * x * moments.f0 + 2 * x * y * moments.mixed_rows.real + y * y * moments.f1) / norm**2
    columns = (x * x * moments.f0 + 2 * x * y * moments.mixed_columns.real + y * y * moments.f1) / norm**2
    c0, c1, c2 = pencil_coefficients(t.t0, t.t1)
    i4 = x * y * 2 * abs(c1 * c1 - 4 * c0 * c2) / norm**2
    i5 = (
        x**3 * moments.g00.real
        + 3 * x * x * y * moments.g01.real
        + 3 * x * y * y * moments.g10.real
        + y**3 * moments.g11.real
    ) / norm**3
    purities = np.empty(3)
    purities[list(PURITY_ROLES[t.party])] = own, rows, columns
    return np.array([*purities, i4, i5])

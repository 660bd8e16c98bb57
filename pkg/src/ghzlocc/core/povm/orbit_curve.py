from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import pandas as pd

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.ghz_canonical import subclass_of
from ghzlocc.core.invariants import pencil_coefficients, trace_moments
from ghzlocc.core.povm.deterministic_povm import PURITY_ROLES, require_gate_state, solve_condpovm
from ghzlocc.errors import GhzLoccError
from ghzlocc.state.local_operators import PAULI_X, diagonal_kraus_pair
from ghzlocc.state.pure_state import Party, PureState3Q, apply_kraus, apply_local_unitary, t_matrices

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["lambda", "I1", "I2", "I3", "I4", "I5", "ReOmega"]


@dataclass(frozen=True, eq=False)
class OrbitCurve:
    """Outcome invariants of the deterministic measurements on one gate state as functions of lambda

    ``I_k(lambda) = alpha_k + beta_k lambda / (a + b lambda)^2`` for k = 1..4 and
    ``I5(lambda) = alpha_5 + lambda (beta_5 + gamma_5 lambda) / (a + b lambda)^3``, with ``a <= b``.
    """

    party: Party
    a: float
    b: float
    alpha: npt.NDArray[np.float64]
    beta: npt.NDArray[np.float64]
    gamma5: float
    samples: pd.DataFrame

    def invariants_at(self, lam: npt.ArrayLike) -> np.ndarray:
        """I1..I5 at each ``lam``, shape ``(5,) + np.shape(lam)``"""
        lam = np.asarray(lam, dtype=np.float64)
        denominator = self.a + self.b * lam
        values = [self.alpha[k] + self.beta[k] * lam / denominator**2 for k in range(4)]
        values.append(self.alpha[4] + lam * (self.beta[4] + self.gamma5 * lam) / denominator**3)
        return np.array(values)


def _outcome_re_omega(gate_state: PureState3Q, party: Party, lam: float, tolerances: Tolerances) -> float:
    t = t_matrices(gate_state, party)
    if t.a > t.b + tolerances.norm:
        gate_state = apply_local_unitary(gate_state, party, PAULI_X, tolerances)
        t = t_matrices(gate_state, party)
    try:
        if lam == 1:
            return subclass_of(gate_state, tolerances)
        x, y = solve_condpovm(t.a, t.b, lam, tolerances)
        outcome, _ = apply_kraus(gate_state, party, diagonal_kraus_pair(x, y)[0], tolerances)
        return subclass_of(outcome, tolerances)
    except GhzLoccError as error:
        logger.debug("No Re Omega at lambda = %r: %s", lam, error.detail)
        return np.nan


def orbit_curve(
    gate_state: PureState3Q,
    party: Party,
    lambda_max: float,
    n_samples: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> OrbitCurve:
    """Traces the invariants reachable from a gate state by the measurements of one party

    Samples are spaced logarithmically on ``[1, lambda_max]``. ``ReOmega`` is evaluated on the actual
    outcome states and is NaN where the outcome is no longer in the GHZ class.

    Raises:
        GateConditionViolated: if ``gate_state`` is not a gate state for ``party``
    """
    party = Party(party)
    if lambda_max < 1 or n_samples < 1:
        raise ValueError("lambda_max must be at least 1 and n_samples positive")
    t = t_matrices(gate_state, party)
    require_gate_state(t, tolerances)
    if t.a > t.b + tolerances.norm:
        t = t.mixed(PAULI_X)
    moments = trace_moments(t)
    a, b = moments.a, moments.b
    purity_alpha = [1.0, moments.f0 / a**2, moments.f0 / a**2]
    purity_beta = [
        2 * (moments.cross - a * b),
        2 * (moments.mixed_rows.real - b * moments.f0 / a),
        2 * (moments.mixed_columns.real - b * moments.f0 / a),
    ]
    alpha, beta = np.zeros(5), np.zeros(5)
    alpha[list(PURITY_ROLES[party])] = purity_alpha
    beta[list(PURITY_ROLES[party])] = purity_beta
    c0, c1, c2 = pencil_coefficients(t.t0, t.t1)
    beta[3] = 2 * abs(c1 * c1 - 4 * c0 * c2)
    alpha[4] = moments.g00.real / a**3
    beta[4] = 3 * (moments.g01.real - b * moments.g00.real / a)
    gamma5 = 3 * (moments.g10.real - b * b * moments.g00.real / a**2)

    lambdas = np.geomspace(1, lambda_max, n_samples)
    curve = OrbitCurve(party, a, b, alpha, beta, gamma5, samples=pd.DataFrame(columns=CURVE_COLUMNS))
    samples = pd.DataFrame(curve.invariants_at(lambdas).T, columns=CURVE_COLUMNS[1:6])
    samples.insert(0, "lambda", lambdas)
    samples["ReOmega"] = [_outcome_re_omega(gate_state, party, lam, tolerances) for lam in lambdas]
    return dataclasses.replace(curve, samples=samples)

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from ghzlocc.state.pure_state import TMatrixPair


@dataclass(frozen=True)
class GateConditionsResidual:
    """Residuals of the two gate conditions for one party

    ``r1 = a^2 Tr[(T1 T1^dagger)^2] - b^2 Tr[(T0 T0^dagger)^2]`` and
    ``r2 = a Tr[T1 T0^dagger T1 T1^dagger T0 T1^dagger] - b Tr[T0 T1^dagger T0 T0^dagger T1 T0^dagger]``.
    With ``M = T1 T0^dagger`` the traces in ``r2`` are ``Tr[P1 M^dagger M]`` and ``Tr[P0 M M^dagger]``, with
    ``Pi = Ti Ti^dagger``. Traces of products of two positive semidefinite matrices are real, so ``r2`` is
    real and only its real part is kept.
    """

    r1: float
    r2: float

    @property
    def max_abs(self) -> float:
        return max(abs(self.r1), abs(self.r2))

    def satisfied(self, tolerance: float) -> bool:
        return self.max_abs <= tolerance

    def to_dict(self) -> dict:
        return {"r1": self.r1, "r2": self.r2}


def _dag(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def _trace(m: np.ndarray) -> np.ndarray:
    return np.trace(m, axis1=-2, axis2=-1)


def batched_gate_residuals(
    stacked: npt.NDArray[np.complex128],
) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Gate residuals of many T-matrix pairs at once

    Args:
        stacked: array of shape ``(..., 2, 2, 2)`` whose ``[..., i, :, :]`` slice is ``T_i``

    Returns:
        The real arrays ``r1`` and ``r2``, each of shape ``stacked.shape[:-3]``
    """
    t0, t1 = stacked[..., 0, :, :], stacked[..., 1, :, :]
    t0d, t1d = _dag(t0), _dag(t1)
    p0, p1 = t0 @ t0d, t1 @ t1d
    a, b = _trace(p0).real, _trace(p1).real
    f0, f1 = _trace(p0 @ p0).real, _trace(p1 @ p1).real
    g01 = _trace(t0 @ t1d @ p0 @ t1 @ t0d).real
    g10 = _trace(t1 @ t0d @ p1 @ t0 @ t1d).real
    return a**2 * f1 - b**2 * f0, a * g10 - b * g01


def gate_residuals(t: TMatrixPair) -> GateConditionsResidual:
    """Evaluates both gate conditions on a T-matrix pair"""
    r1, r2 = batched_gate_residuals(t.stacked)
    return GateConditionsResidual(float(r1), float(r2))


def rotated_pairs(t: TMatrixPair, unitaries: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Stacked T matrices after each of a batch of unitaries of shape ``(..., 2, 2)``"""
    return np.einsum("...il,ljk->...ijk", np.asarray(unitaries, dtype=np.complex128), t.stacked)

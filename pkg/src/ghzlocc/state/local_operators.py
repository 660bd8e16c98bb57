"""Single-qubit operators used by the searches and protocols."""

from __future__ import annotations

from typing import Tuple

import numpy as np
import scipy.linalg

from ghzlocc.state.pure_state import Mat2

IDENTITY: Mat2 = np.eye(2, dtype=np.complex128)
PAULI_X: Mat2 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Z: Mat2 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
GHZ_ROTATION: Mat2 = np.array([[1, 1], [-1, 1]], dtype=np.complex128) / np.sqrt(2)


def rotation(alpha: float) -> Mat2:
    """[[cos a, sin a], [-sin a, cos a]]"""
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def phased_rotation(alpha: float, zeta: float) -> Mat2:
    """Rotation by ``alpha`` preceded by the phase ``diag(e^{i zeta}, e^{-i zeta})``"""
    return rotation(alpha) @ np.diag([np.exp(1j * zeta), np.exp(-1j * zeta)])


def reflection(theta: float) -> Mat2:
    """[[cos t, sin t], [sin t, -cos t]], exchanging |0> and cos t|0> + sin t|1>"""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def phi_vector(delta: float) -> np.ndarray:
    """cos d|0> + sin d|1>"""
    return np.array([np.cos(delta), np.sin(delta)], dtype=np.complex128)


def diagonal_kraus_pair(x: float, y: float) -> Tuple[Mat2, Mat2]:
    """E0 = diag(sqrt x, sqrt y), E1 = diag(sqrt(1-x), sqrt(1-y))"""
    e0 = np.diag([np.sqrt(x), np.sqrt(y)]).astype(np.complex128)
    e1 = np.diag([np.sqrt(1 - x), np.sqrt(1 - y)]).astype(np.complex128)
    return e0, e1


def haar_unitary(rng: np.random.Generator, dimension: int = 2, real: bool = False) -> np.ndarray:
    """Haar-random unitary (orthogonal if ``real``) from the QR decomposition of a Gaussian matrix"""
    gaussian = rng.standard_normal((dimension, dimension))
    if not real:
        gaussian = (gaussian + 1j * rng.standard_normal((dimension, dimension))) / np.sqrt(2)
    q, r = scipy.linalg.qr(gaussian)
    diagonal = np.diagonal(r)
    return (q * (diagonal / np.abs(diagonal))).astype(np.complex128)


def random_two_outcome_povm(rng: np.random.Generator, margin: float = 0.05) -> Tuple[Mat2, Mat2]:
    """A random full-rank two-outcome measurement ``K_i = V_i sqrt(D_i) W``

    The diagonal weights are drawn from ``[margin, 1 - margin]`` so both Kraus operators are invertible.
    """
    x, y = rng.uniform(margin, 1 - margin, size=2)
    e0, e1 = diagonal_kraus_pair(x, y)
    w = haar_unitary(rng)
    return haar_unitary(rng) @ e0 @ w, haar_unitary(rng) @ e1 @ w

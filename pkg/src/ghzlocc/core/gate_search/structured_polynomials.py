"""Structured degree-8 polynomials of the gate conditions and their reduction to cubics.

Rotating a party by ``rotation(alpha)`` (after an optional phase) turns each gate residual into a
homogeneous form of degree 8 in ``(cos alpha, sin alpha)`` that changes sign when ``alpha`` advances by
a quarter turn. Divided by ``cos^8 alpha`` it becomes

    p(z) = A (1 - z^8) + B (z + z^7) + C (z^2 - z^6) + D (z^3 + z^5),   z = tan alpha,

and ``p(z) = z^3 (1 + z^2) g(w)`` with ``w = 1/z - z`` and the cubic
``g(w) = A w^3 + B w^2 + (C + 2A) w + (D + B)``. The coefficients are obtained by a least-squares fit to
sampled residuals; the fit residual validates the structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np
import numpy.typing as npt

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.errors import StructureViolation

SAMPLE_COUNT = 16


def sample_angles(count: int = SAMPLE_COUNT) -> npt.NDArray[np.float64]:
    """Equally spaced rotation angles on [0, pi), enough to resolve every degree-8 form"""
    return np.linspace(0, np.pi, count, endpoint=False)


def structured_basis(alphas: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """The four structured forms evaluated at ``alphas``, shape ``(len(alphas), 4)``"""
    c, s = np.cos(alphas), np.sin(alphas)
    return np.stack(
        [
            c**8 - s**8,
            c**7 * s + c * s**7,
            c**6 * s**2 - c**2 * s**6,
            c**5 * s**3 + c**3 * s**5,
        ],
        axis=-1,
    )


def fit_structured_coefficients(
    alphas: npt.ArrayLike, values: npt.ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> npt.NDArray[np.float64]:
    """Least-squares coefficients (A, B, C, D) of sampled residuals

    Args:
        alphas: the sample angles
        values: real residuals of shape ``(..., len(alphas))``
        tolerances: ``tolerances.fit`` bounds the fit residual relative to ``max(1, max |values|)``

    Returns:
        Array of shape ``(..., 4)``

    Raises:
        StructureViolation: if the samples are not described by the structured form
    """
    basis = structured_basis(alphas)
    values = np.asarray(values, dtype=np.float64)
    coefficients = values @ np.linalg.pinv(basis).T
    misfit = np.abs(coefficients @ basis.T - values).max()
    scale = max(1.0, float(np.abs(values).max()))
    if misfit > tolerances.fit * scale:
        raise StructureViolation(f"Structured fit residual {misfit:.3e} exceeds {tolerances.fit:.1e}")
    return coefficients


@dataclass(frozen=True)
class PolynomialP8:
    """p(z) = A(1 - z^8) + B(z + z^7) + C(z^2 - z^6) + D(z^3 + z^5)"""

    coeff_a: float
    coeff_b: float
    coeff_c: float
    coeff_d: float

    @classmethod
    def fit(
        cls, alphas: npt.ArrayLike, values: npt.ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES
    ) -> PolynomialP8:
        return cls(*(float(v) for v in fit_structured_coefficients(alphas, values, tolerances)))

    @property
    def coefficients(self) -> npt.NDArray[np.float64]:
        """Coefficients of z^0, ..., z^8"""
        a, b, c, d = self.coeff_a, self.coeff_b, self.coeff_c, self.coeff_d
        return np.array([a, b, c, d, 0.0, d, -c, b, -a])

    def __call__(self, z: npt.ArrayLike) -> np.ndarray:
        return np.polynomial.polynomial.polyval(z, self.coefficients)

    def at_angle(self, alpha: npt.ArrayLike) -> np.ndarray:
        """The homogeneous form at ``alpha``, i.e. ``cos^8(alpha) p(tan alpha)``"""
        return structured_basis(alpha) @ np.array([self.coeff_a, self.coeff_b, self.coeff_c, self.coeff_d])

    def roots(self) -> npt.NDArray[np.complex128]:
        return np.roots(self.coefficients[::-1])

    def reduced(self) -> ReducedCubic:
        return ReducedCubic.from_coefficients(self.coeff_a, self.coeff_b, self.coeff_c, self.coeff_d)


@dataclass(frozen=True)
class ReducedCubic:
    """g(w) = c3 w^3 + c2 w^2 + c1 w + c0"""

    c3: float
    c2: float
    c1: float
    c0: float

    @classmethod
    def from_coefficients(cls, a: float, b: float, c: float, d: float) -> ReducedCubic:
        return cls(a, b, c + 2 * a, d + b)

    @property
    def coefficients(self) -> npt.NDArray[np.float64]:
        """Coefficients in descending powers, as ``numpy.roots`` takes them"""
        return np.array([self.c3, self.c2, self.c1, self.c0])

    @property
    def scale(self) -> float:
        return float(np.abs(self.coefficients).max())

    def __call__(self, w: npt.ArrayLike) -> np.ndarray:
        return np.polyval(self.coefficients, w)

    def relative_value(self, w: float) -> float:
        """|g(w)| relative to the size of its terms at ``w``"""
        terms = np.abs(self.coefficients) * np.abs(w) ** np.arange(3, -1, -1)
        return float(abs(self(w)) / max(terms.sum(), np.finfo(float).tiny))

    def real_roots(self, imaginary_tolerance: float = 1e-8) -> List[float]:
        """Real roots found from the companion-matrix eigenvalues, leading zeros deflated"""
        coefficients = self.coefficients
        scale = self.scale
        if scale == 0:
            return []
        while coefficients.size > 1 and abs(coefficients[0]) <= np.finfo(float).eps * scale:
            coefficients = coefficients[1:]
        roots = np.roots(coefficients)
        real = [float(r.real) for r in roots if abs(r.imag) <= imaginary_tolerance * (1 + abs(r))]
        return sorted(real)

    def has_vanishing_leading_coefficient(self, tolerance: float = 1e-10) -> bool:
        """True if the degree drops, putting a root at w = infinity (z = 0)"""
        return abs(self.c3) <= tolerance * max(self.scale, np.finfo(float).tiny)


def w_to_z(w: npt.ArrayLike) -> np.ndarray:
    """The positive root of z^2 + w z - 1 = 0, computed without cancellation"""
    w = np.asarray(w, dtype=np.float64)
    root = np.sqrt(w * w + 4)
    return np.where(w > 0, 2 / (w + root), (root - w) / 2)


def z_to_w(z: npt.ArrayLike) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    return 1 / z - z


def sylvester_resultant(f: npt.ArrayLike, g: npt.ArrayLike) -> np.ndarray:
    """Resultant of two cubics given by descending coefficients of shape ``(..., 4)``

    Evaluated as the determinant of the 6x6 Sylvester matrix; it vanishes iff the cubics share a root
    (or both leading coefficients vanish).
    """
    f = np.asarray(f, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    shape = np.broadcast_shapes(f.shape[:-1], g.shape[:-1])
    matrix = np.zeros(shape + (6, 6))
    for shift in range(3):
        matrix[..., shift, shift : shift + 4] = f
        matrix[..., 3 + shift, shift : shift + 4] = g
    return np.linalg.det(matrix)

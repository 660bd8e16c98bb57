"""Local-unitary invariants of three-qubit pure states.

The fingerprint of an orbit is (I1, ..., I5, sign Im I6). :func:`compute_invariants` evaluates it with
matrix reductions; :func:`brute_force_invariants` evaluates every index sum literally and serves as the
oracle the reductions are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.state.pure_state import Mat2, Party, PureState3Q, TMatrixPair, marginal_purity, t_matrices

EPSILON = np.array([[0.0, 1.0], [-1.0, 0.0]])

PURITY_SUBSCRIPTS = {
    Party.A: "ijk,ljk,lmn,imn->",
    Party.B: "ijk,imk,lmn,ljn->",
    Party.C: "ijk,ijn,lmn,lmk->",
}
I4_SUBSCRIPTS = "ijk,lmn,opq,rst,il,or,jm,ps,kq,nt->"
I5_SUBSCRIPTS = "ijk,ilm,nlo,pjo,pqm,nqk->"
# amplitudes t_{a g m} ... t_{f l r} followed by the six conjugated factors
I6_SUBSCRIPTS = "agm,bhn,cio,djp,ekq,flr,ago,bhp,cjq,dim,eln,fkr->"


class Im6Sign(str, Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    ZERO = "0"

    def flipped(self) -> Im6Sign:
        return {Im6Sign.POSITIVE: Im6Sign.NEGATIVE, Im6Sign.NEGATIVE: Im6Sign.POSITIVE}.get(self, self)


class OrbitRelation(str, Enum):
    SAME_ORBIT = "same_orbit"
    CONJUGATE_ORBIT = "conjugate_orbit"
    DIFFERENT = "different"


@dataclass(frozen=True)
class InvariantVector:
    """The orbit fingerprint of a state"""

    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i6: complex
    im6_sign: Im6Sign

    @property
    def real_part(self) -> np.ndarray:
        """(I1, ..., I5) as an array"""
        return np.array([self.i1, self.i2, self.i3, self.i4, self.i5])

    def to_dict(self) -> dict:
        return {
            "I1": self.i1,
            "I2": self.i2,
            "I3": self.i3,
            "I4": self.i4,
            "I5": self.i5,
            "I6": [self.i6.real, self.i6.imag],
            "im6_sign": self.im6_sign.value,
        }


@dataclass(frozen=True)
class TraceMoments:
    """Traces of products of T0, T1 that the outcome invariants are rational functions of"""

    f0: float
    f1: float
    g00: complex
    g01: complex
    g10: complex
    g11: complex
    tr01: complex
    tr10: complex
    mixed_rows: complex
    mixed_columns: complex
    h0: float
    h1: float
    a: float
    b: float

    @property
    def cross(self) -> float:
        """|Tr T0 T1^dagger|^2"""
        return float((self.tr01 * self.tr10).real)


def _im6_sign(i6: complex, tolerances: Tolerances) -> Im6Sign:
    if abs(i6.imag) <= tolerances.im6:
        return Im6Sign.ZERO
    return Im6Sign.POSITIVE if i6.imag > 0 else Im6Sign.NEGATIVE


def pencil_coefficients(t0: Mat2, t1: Mat2) -> Tuple[complex, complex, complex]:
    """Coefficients (c0, c1, c2) of det(x T0 + y T1) = c0 x^2 + c1 xy + c2 y^2"""
    c0 = np.linalg.det(t0)
    c2 = np.linalg.det(t1)
    return complex(c0), complex(np.linalg.det(t0 + t1) - c0 - c2), complex(c2)


def hyperdeterminant(state: PureState3Q) -> complex:
    """Cayley hyperdeterminant, the discriminant of the pencil det(x T0 + y T1)"""
    t = t_matrices(state, Party.A)
    c0, c1, c2 = pencil_coefficients(t.t0, t.t1)
    return c1 * c1 - 4 * c0 * c2


def _dag(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def compute_invariants(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> InvariantVector:
    """Computes the invariant fingerprint of a state

    I1-I3 are the purities of the three one-qubit marginals, I4 is twice the modulus of the
    hyperdeterminant, I5 is a sum of traces of six T matrices, and I6 is contracted pairwise.
    """
    i1, i2, i3 = (marginal_purity(state, party) for party in Party)
    i4 = 2 * abs(hyperdeterminant(state))
    t = t_matrices(state, Party.A).stacked
    i5 = sum(
        np.trace(t[i] @ _dag(t[n]) @ t[p] @ _dag(t[i]) @ t[n] @ _dag(t[p]))
        for i in range(2)
        for n in range(2)
        for p in range(2)
    )
    tensor = state.tensor
    conjugated = tensor.conj()
    i6 = complex(np.einsum(I6_SUBSCRIPTS, *([tensor] * 6 + [conjugated] * 6), optimize="greedy"))
    return InvariantVector(i1, i2, i3, float(i4), float(i5.real), i6, _im6_sign(i6, tolerances))


def brute_force_invariants(
    state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> InvariantVector:
    """Evaluates every index sum term by term (no contraction ordering)"""
    t = state.tensor
    tc = t.conj()
    i1, i2, i3 = (
        float(np.einsum(PURITY_SUBSCRIPTS[party], t, tc, t, tc, optimize=False).real) for party in Party
    )
    i4 = abs(np.einsum(I4_SUBSCRIPTS, t, t, t, t, *([EPSILON] * 6), optimize=False))
    i5 = np.einsum(I5_SUBSCRIPTS, t, tc, t, tc, t, tc, optimize=False).real
    i6 = complex(np.einsum(I6_SUBSCRIPTS, *([t] * 6 + [tc] * 6), optimize=False))
    return InvariantVector(i1, i2, i3, float(i4), float(i5), i6, _im6_sign(i6, tolerances))


def orbit_fingerprints_equal(v1: InvariantVector, v2: InvariantVector, tol: float) -> OrbitRelation:
    """Compares two fingerprints

    Returns:
        ``same_orbit`` if I1-I5 agree within ``tol`` and the signs of Im I6 agree,
        ``conjugate_orbit`` if I1-I5 agree and the signs are opposite and nonzero,
        ``different`` otherwise.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if np.abs(v1.real_part - v2.real_part).max() > tol:
        return OrbitRelation.DIFFERENT
    if v1.im6_sign == v2.im6_sign:
        return OrbitRelation.SAME_ORBIT
    if Im6Sign.ZERO not in (v1.im6_sign, v2.im6_sign):
        return OrbitRelation.CONJUGATE_ORBIT
    return OrbitRelation.DIFFERENT


def trace_moments(t: TMatrixPair) -> TraceMoments:
    t0, t1 = t.t0, t.t1
    t0d, t1d = _dag(t0), _dag(t1)
    p0, p1 = t0 @ t0d, t1 @ t1d

    def g(ti, tj):
        return complex(np.trace(ti @ _dag(tj) @ ti @ _dag(ti) @ tj @ _dag(ti)))

    return TraceMoments(
        f0=float(np.trace(p0 @ p0).real),
        f1=float(np.trace(p1 @ p1).real),
        g00=g(t0, t0),
        g01=g(t0, t1),
        g10=g(t1, t0),
        g11=g(t1, t1),
        tr01=complex(np.trace(t0 @ t1d)),
        tr10=complex(np.trace(t1 @ t0d)),
        mixed_rows=complex(np.trace(p0 @ p1)),
        mixed_columns=complex(np.trace(t0 @ t1d @ t1 @ t0d)),
        h0=float(np.trace(p0 @ p0 @ p0).real),
        h1=float(np.trace(p1 @ p1 @ p1).real),
        a=t.a,
        b=t.b,
    )

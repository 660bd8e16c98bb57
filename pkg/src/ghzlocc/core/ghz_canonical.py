"""Two-product-term decomposition of GHZ-class states and the Omega invariant.

Every GHZ-class state is a sum ``|mu> + |nu>`` of two product vectors, unique up to their order. The
inner product ``Omega = <mu|nu>`` (with ``||mu|| >= ||nu||``) is a local-unitary invariant, and its
real part is conserved on average by any local two-outcome measurement, so it labels the classes of
states that deterministic local protocols can connect.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.invariants import hyperdeterminant, pencil_coefficients
from ghzlocc.errors import (
    DegeneratePencil,
    InvalidKrausOperator,
    NotGhzClass,
    OutcomeLeftGhzClass,
    ZeroProbabilityOutcome,
)
from ghzlocc.state.local_operators import phi_vector
from ghzlocc.state.pure_state import Mat2, Party, PureState3Q, apply_kraus, marginal_purity, t_matrices

# a product-term factor whose overlap is below this is treated as orthogonal
ORTHOGONAL_OVERLAP = 1e-12


class StateClass(str, Enum):
    GHZ_CLASS = "GhzClass"
    W_CLASS = "WClass"
    BISEPARABLE = "Biseparable"
    FULLY_PRODUCT = "FullyProduct"


@dataclass(frozen=True, eq=False)
class GhzCanonicalForm:
    """The canonical form mu|000> + nu e^{i gamma}|phi_A phi_B phi_C> of a GHZ-class state

    ``phi_X = cos(delta_X)|0> + sin(delta_X)|1>``. ``frame`` holds the local unitaries (A, B, C) taking
    the source state to the canonical form.
    """

    mu: float
    nu: float
    gamma: float
    delta_a: float
    delta_b: float
    delta_c: float
    term_mu: npt.NDArray[np.complex128]
    term_nu: npt.NDArray[np.complex128]
    omega: complex
    frame: Tuple[Mat2, Mat2, Mat2]
    im_sign_ambiguous: bool

    @property
    def deltas(self) -> Tuple[float, float, float]:
        return self.delta_a, self.delta_b, self.delta_c

    def to_dict(self) -> dict:
        return {
            "class": StateClass.GHZ_CLASS.value,
            "mu": self.mu,
            "nu": self.nu,
            "gamma": self.gamma,
            "deltas": list(self.deltas),
            "omega": [self.omega.real, self.omega.imag],
            "re_omega_subclass": self.omega.real,
            "im_sign_ambiguous": self.im_sign_ambiguous,
        }


@dataclass(frozen=True)
class ConservationReport:
    """Re Omega before a local measurement against its probability-weighted average after it"""

    re_omega_input: float
    weighted_re_omega: float
    probabilities: Tuple[float, float]
    outcome_re_omegas: Tuple[float, float]

    @property
    def difference(self) -> float:
        return abs(self.re_omega_input - self.weighted_re_omega)

    def to_dict(self) -> dict:
        return {
            "re_omega_input": self.re_omega_input,
            "weighted_re_omega": self.weighted_re_omega,
            "difference": self.difference,
            "probabilities": list(self.probabilities),
            "outcome_re_omegas": list(self.outcome_re_omegas),
        }


def classify(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> StateClass:
    """Sorts a state into the product, biseparable, W and GHZ classes

    A marginal counts as pure when its purity is within ``tolerances.tangle`` of 1.
    """
    pure_marginals = sum(marginal_purity(state, party) >= 1 - tolerances.tangle for party in Party)
    if pure_marginals == 3:
        return StateClass.FULLY_PRODUCT
    if pure_marginals > 0:
        return StateClass.BISEPARABLE
    if 2 * abs(hyperdeterminant(state)) > tolerances.tangle:
        return StateClass.GHZ_CLASS
    return StateClass.W_CLASS


def _pencil_roots(t0: Mat2, t1: Mat2) -> np.ndarray:
    """Unit vectors (x, y) with det(x T0 + y T1) = 0, one per row"""
    c0, c1, c2 = pencil_coefficients(t0, t1)
    discriminant = c1 * c1 - 4 * c0 * c2
    scale = abs(c1) ** 2 + abs(c0 * c2)
    if scale == 0 or abs(discriminant) < ORTHOGONAL_OVERLAP * scale:
        raise DegeneratePencil(f"Pencil discriminant {abs(discriminant):.3e} is numerically zero")
    root = np.sqrt(discriminant)
    # pick the sign that avoids cancellation in c1 + sqrt(D)
    if (c1.conjugate() * root).real < 0:
        root = -root
    q = -(c1 + root) / 2
    if max(abs(c0), abs(c2)) <= ORTHOGONAL_OVERLAP * abs(c1):
        roots = np.array([[1, 0], [0, 1]], dtype=np.complex128)
    elif abs(c0) >= abs(c2):
        # roots of c0 s^2 + c1 s + c2 in s = x / y
        roots = np.array([[q / c0, 1], [c2 / q, 1]], dtype=np.complex128)
    else:
        # roots of c2 s^2 + c1 s + c0 in s = y / x
        roots = np.array([[1, q / c2], [1, c0 / q]], dtype=np.complex128)
    return roots / np.linalg.norm(roots, axis=1, keepdims=True)


def _factorize(alice: np.ndarray, rank_one: Mat2) -> Tuple[float, List[np.ndarray]]:
    """Writes kron(alice, vec(rank_one)) as kappa * a (x) b (x) c with unit vectors"""
    u, singular_values, vh = np.linalg.svd(rank_one)
    if singular_values[1] > 1e-6 * singular_values[0]:
        raise DegeneratePencil("Pencil root does not give a rank-one combination")
    alice_norm = np.linalg.norm(alice)
    return float(alice_norm * singular_values[0]), [alice / alice_norm, u[:, 0], vh[0, :]]


def _frame_unitary(m: np.ndarray, n: np.ndarray) -> Tuple[Mat2, float, float]:
    """Unitary with U m = |0> and U n = e^{i theta}(cos d|0> + sin d|1>); returns (U, d, theta)"""
    overlap = np.vdot(m, n)
    perpendicular = n - overlap * m
    sin_delta = np.linalg.norm(perpendicular)
    if sin_delta < ORTHOGONAL_OVERLAP:
        raise DegeneratePencil("Product terms share a factor")
    theta = float(np.angle(overlap)) if abs(overlap) > ORTHOGONAL_OVERLAP else 0.0
    e = perpendicular / sin_delta
    u = np.array([m.conj(), np.exp(1j * theta) * e.conj()])
    return u, float(np.arctan2(sin_delta, abs(overlap))), theta


def decompose_ghz(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> GhzCanonicalForm:
    """Splits a GHZ-class state into its two product terms and extracts the canonical parameters

    The rank-one members ``M_r = x_r T0 + y_r T1`` of Alice's pencil give the Bob-Charlie factors; the
    inverse of the root matrix gives the Alice factors.

    Raises:
        NotGhzClass: if the state is not in the GHZ class
        DegeneratePencil: if the pencil has a numerically double root
    """
    if classify(state, tolerances) is not StateClass.GHZ_CLASS:
        raise NotGhzClass("State is not in the GHZ class")
    t = t_matrices(state, Party.A)
    roots = _pencil_roots(t.t0, t.t1)
    alice_vectors = np.linalg.inv(roots)
    terms = [
        _factorize(alice_vectors[:, r], roots[r, 0] * t.t0 + roots[r, 1] * t.t1) for r in range(2)
    ]
    terms.sort(key=lambda term: term[0], reverse=True)
    (mu, mu_factors), (nu, nu_factors) = terms
    term_mu = mu * np.kron(np.kron(*mu_factors[:2]), mu_factors[2])
    term_nu = nu * np.kron(np.kron(*nu_factors[:2]), nu_factors[2])

    frame, deltas, thetas = [], [], []
    for m, n in zip(mu_factors, nu_factors):
        u, delta, theta = _frame_unitary(m, n)
        frame.append(u)
        deltas.append(delta)
        thetas.append(theta)
    gamma = sum(thetas)
    orthogonal = [np.cos(delta) < ORTHOGONAL_OVERLAP for delta in deltas]
    if any(orthogonal):
        # phi_X = |1> for that party, so its phase can absorb gamma
        absorbing = orthogonal.index(True)
        frame[absorbing] = np.diag([1, np.exp(-1j * gamma)]) @ frame[absorbing]
        gamma = 0.0
    return GhzCanonicalForm(
        mu=mu,
        nu=nu,
        gamma=float(np.mod(gamma, 2 * np.pi)),
        delta_a=deltas[0],
        delta_b=deltas[1],
        delta_c=deltas[2],
        term_mu=term_mu,
        term_nu=term_nu,
        omega=complex(np.vdot(term_mu, term_nu)),
        frame=(frame[0], frame[1], frame[2]),
        im_sign_ambiguous=bool(mu - nu <= tolerances.degenerate * mu),
    )


def ghz_canonical_state(mu: float, nu: float, gamma: float, deltas: Sequence[float]) -> PureState3Q:
    """Normalizes mu|000> + nu e^{i gamma}|phi_A phi_B phi_C>"""
    delta_a, delta_b, delta_c = deltas
    product = np.kron(np.kron(phi_vector(delta_a), phi_vector(delta_b)), phi_vector(delta_c))
    vector = nu * np.exp(1j * gamma) * product
    vector[0] += mu
    return PureState3Q.from_amplitudes(vector, renormalize=True)


def omega(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """<mu|nu> for the product terms of the state, ordered so that ||mu|| >= ||nu||

    The sign of the imaginary part is only meaningful when the two norms differ; see
    :attr:`GhzCanonicalForm.im_sign_ambiguous`.
    """
    return decompose_ghz(state, tolerances).omega


def subclass_of(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Re Omega, the label of the classes deterministic local protocols cannot leave"""
    return omega(state, tolerances).real


def is_real_state(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True if the state is local-unitary equivalent to a state with real amplitudes"""
    if classify(state, tolerances) is not StateClass.GHZ_CLASS:
        return True
    form = decompose_ghz(state, tolerances)
    return abs(form.omega.imag) <= tolerances.im6 or form.im_sign_ambiguous


def verify_omega_conservation(
    state: PureState3Q,
    party: Party,
    kraus_pair: Tuple[Mat2, Mat2],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ConservationReport:
    """Checks that Re Omega equals its probability-weighted average over the measurement outcomes

    Raises:
        InvalidKrausOperator: if the pair does not complete to the identity
        NotGhzClass: if the input is not in the GHZ class
        OutcomeLeftGhzClass: if an outcome is undefined or leaves the GHZ class
    """
    k0, k1 = (np.asarray(k, dtype=np.complex128) for k in kraus_pair)
    completeness = np.linalg.norm(k0.conj().T @ k0 + k1.conj().T @ k1 - np.eye(2))
    if completeness > tolerances.unit:
        raise InvalidKrausOperator(f"Kraus pair misses completeness by {completeness:.3e}")
    re_omega_input = omega(state, tolerances).real
    probabilities, outcome_re_omegas = [], []
    for index, k in enumerate((k0, k1)):
        try:
            outcome, probability = apply_kraus(state, party, k, tolerances)
        except ZeroProbabilityOutcome as error:
            raise OutcomeLeftGhzClass(f"Outcome {index} is undefined: {error.detail}") from error
        if classify(outcome, tolerances) is not StateClass.GHZ_CLASS:
            raise OutcomeLeftGhzClass(f"Outcome {index} is not in the GHZ class")
        probabilities.append(probability)
        outcome_re_omegas.append(omega(outcome, tolerances).real)
    weighted = float(np.dot(probabilities, outcome_re_omegas))
    return ConservationReport(
        re_omega_input=re_omega_input,
        weighted_re_omega=weighted,
        probabilities=(probabilities[0], probabilities[1]),
        outcome_re_omegas=(outcome_re_omegas[0], outcome_re_omegas[1]),
    )


def deterministically_reachable(
    source: PureState3Q, target: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Whether the subclass labels agree, a necessary condition for a deterministic local protocol

    Both states must be in the GHZ class.
    """
    return abs(subclass_of(source, tolerances) - subclass_of(target, tolerances)) <= tolerances.orbit

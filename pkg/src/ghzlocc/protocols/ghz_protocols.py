"""Deterministic three-step protocols starting from the GHZ state.

Steps 1 and 2 split the GHZ correlations on Charlie and then on Bob with measurements whose outcomes
are mapped back onto each other by local unitaries, producing
``(|000> + |1 phi(delta) phi(delta')>)/sqrt(2)``.
Step 3 is Alice's measurement that either unbalances the two terms (real targets) or attaches the
phase ``i`` to the second term (complex targets). Every branch of the measurement tree is simulated
and corrected; a protocol succeeds only if every leaf equals the target up to a global phase.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.ghz_canonical import subclass_of
from ghzlocc.core.invariants import OrbitRelation, compute_invariants, orbit_fingerprints_equal
from ghzlocc.errors import (
    BranchCorrectionFailed,
    DegeneratePencil,
    InvalidKrausOperator,
    NotGhzClass,
    OutOfRange,
)
from ghzlocc.state.local_operators import (
    GHZ_ROTATION,
    PAULI_X,
    PAULI_Z,
    diagonal_kraus_pair,
    phi_vector,
    reflection,
)
from ghzlocc.state.pure_state import (
    Mat2,
    Party,
    PureState3Q,
    apply_kraus,
    apply_local_unitaries,
    fidelity_up_to_global_phase,
    ghz_state,
)

logger = logging.getLogger(__name__)

RoleOrder = Union[str, Sequence[Union[str, Party]]]

# slack on the closed ends of the parameter ranges
RANGE_SLACK = 1e-12


@dataclass(frozen=True)
class TargetRealSpec:
    """The real target ``mu|000> + nu|1>|phi(delta)>|phi(delta')>`` with ``nu = sqrt(1 - mu^2)``"""

    mu: float
    delta: float
    delta_prime: float

    def __post_init__(self):
        if not 1 / np.sqrt(2) - RANGE_SLACK <= self.mu < 1:
            raise OutOfRange(f"mu must lie in [1/sqrt(2), 1), got {self.mu!r}")
        for name in ("delta", "delta_prime"):
            value = getattr(self, name)
            if not 0 < value <= np.pi / 2 + RANGE_SLACK:
                raise OutOfRange(f"{name} must lie in (0, pi/2], got {value!r}")

    @property
    def nu(self) -> float:
        return float(np.sqrt(max(1 - self.mu**2, 0.0)))

    def target(self) -> PureState3Q:
        second = np.einsum("i,j,k->ijk", [0, 1], phi_vector(self.delta), phi_vector(self.delta_prime))
        tensor = self.nu * second
        tensor[0, 0, 0] += self.mu
        return PureState3Q.from_amplitudes(tensor.reshape(8), renormalize=True)

    def to_dict(self) -> dict:
        return {"mu": self.mu, "delta": self.delta, "delta_prime": self.delta_prime}


def real_target_grid(points: int = 5) -> List[TargetRealSpec]:
    """Evenly spaced real targets, ``mu`` in [1/sqrt(2), 0.99] and both angles in [0.1, pi/2]

    Targets are ordered with ``delta_prime`` varying fastest.
    """
    if points < 2:
        raise ValueError(f"A grid needs at least 2 points per axis, got {points}")
    mus = np.linspace(1 / np.sqrt(2), 0.99, points)
    angles = np.linspace(0.1, np.pi / 2, points)
    return [
        TargetRealSpec(float(mu), float(delta), float(delta_prime))
        for mu, delta, delta_prime in itertools.product(mus, angles, angles)
    ]


@dataclass(frozen=True)
class TargetComplexSpec:
    """The target ``(|000> + i|phi(delta'')>|phi(delta)>|phi(delta')>)/sqrt(2)``

    At an angle of 0 or pi/2 the state is LU-equivalent to a real one, so the angles are restricted
    to the open interval.
    """

    delta: float
    delta_prime: float
    delta_double_prime: float

    def __post_init__(self):
        for name in ("delta", "delta_prime", "delta_double_prime"):
            value = getattr(self, name)
            if not 0 < value < np.pi / 2:
                raise OutOfRange(f"{name} must lie in (0, pi/2), got {value!r}")

    def target(self) -> PureState3Q:
        second = np.einsum(
            "i,j,k->ijk",
            phi_vector(self.delta_double_prime),
            phi_vector(self.delta),
            phi_vector(self.delta_prime),
        )
        tensor = 1j * second
        tensor[0, 0, 0] += 1
        return PureState3Q.from_amplitudes(tensor.reshape(8) / np.sqrt(2), renormalize=True)

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "delta_prime": self.delta_prime,
            "delta_double_prime": self.delta_double_prime,
        }


@dataclass(frozen=True, eq=False)
class ProtocolStep:
    """One local two-outcome measurement, with the corrections applied after each outcome.

    Parties are given by their role in the protocol; :func:`run_protocol` maps roles to physical
    parties.
    """

    role: Party
    kraus: Tuple[Mat2, Mat2]
    corrections: Tuple[Dict[Party, Mat2], Dict[Party, Mat2]]
    x: float
    label: str = ""

    def __post_init__(self):
        k0, k1 = (np.asarray(k, dtype=np.complex128) for k in self.kraus)
        defect = float(np.linalg.norm(k0.conj().T @ k0 + k1.conj().T @ k1 - np.eye(2)))
        if defect > DEFAULT_TOLERANCES.unit:
            raise InvalidKrausOperator(
                f"Kraus operators of step {self.label!r} miss completeness by {defect:.3e}"
            )


@dataclass(frozen=True, eq=False)
class BranchRecord:
    """What happened to one branch during one step"""

    path: str
    party: Party
    probabilities: Tuple[float, float]
    measured: Tuple[PureState3Q, PureState3Q]
    corrected: Tuple[PureState3Q, PureState3Q]
    verdict: OrbitRelation
    corrected_verdict: OrbitRelation
    re_omegas: Tuple[float, float]
    """Re Omega of the corrected states, NaN for a state outside the GHZ class"""

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "probabilities": list(self.probabilities),
            "verdict": self.verdict.value,
            "corrected_verdict": self.corrected_verdict.value,
            "re_omegas": list(self.re_omegas),
        }


@dataclass(frozen=True, eq=False)
class StepRecord:
    """One step of a run; ``party`` and the keys of ``corrections`` are physical parties"""

    index: int
    label: str
    role: Party
    party: Party
    x: float
    kraus: Tuple[Mat2, Mat2]
    corrections: Tuple[Dict[Party, Mat2], Dict[Party, Mat2]]
    branches: List[BranchRecord]

    def to_dict(self) -> dict:
        return {
            "step": self.index,
            "label": self.label,
            "role": self.role.value,
            "party": self.party.value,
            "x": self.x,
            "kraus": list(self.kraus),
            "corrections": [
                {party.value: u for party, u in corrections.items()} for corrections in self.corrections
            ],
            "branches": [branch.to_dict() for branch in self.branches],
        }


@dataclass(frozen=True, eq=False)
class ProtocolLeaf:
    path: str
    probability: float
    state: PureState3Q
    fidelity: float

    def to_dict(self) -> dict:
        return {"path": self.path, "probability": self.probability, "fidelity": self.fidelity}


@dataclass(frozen=True, eq=False)
class ProtocolTrace:
    """Every step and every final branch of a protocol run"""

    target: PureState3Q
    roles: Tuple[Party, Party, Party]
    steps: List[StepRecord] = field(default_factory=list)
    leaves: List[ProtocolLeaf] = field(default_factory=list)

    @property
    def fidelities(self) -> np.ndarray:
        return np.array([leaf.fidelity for leaf in self.leaves])

    @property
    def min_fidelity(self) -> float:
        return float(self.fidelities.min())

    @property
    def total_probability(self) -> float:
        return float(sum(leaf.probability for leaf in self.leaves))

    @property
    def max_abs_re_omega(self) -> float:
        """Largest |Re Omega| over the GHZ-class intermediate states of all branches"""
        values = [value for record in self.steps for branch in record.branches for value in branch.re_omegas]
        return max((abs(value) for value in values if not np.isnan(value)), default=0.0)

    def to_dict(self) -> dict:
        return {
            "target": self.target.amps,
            "roles": "".join(party.value for party in self.roles),
            "steps": [record.to_dict() for record in self.steps],
            "leaves": [leaf.to_dict() for leaf in self.leaves],
            "min_fidelity": self.min_fidelity,
            "total_probability": self.total_probability,
            "max_abs_re_omega": self.max_abs_re_omega,
        }


def normalize_roles(roles: RoleOrder) -> Tuple[Party, Party, Party]:
    """Parses a role order such as ``"BAC"``: the physical parties playing roles A, B and C"""
    parsed = tuple(Party(role) for role in roles)
    if sorted(party.value for party in parsed) != ["A", "B", "C"]:
        raise ValueError(f"Roles must be a permutation of A, B, C, got {roles!r}")
    return parsed


def permute_roles(state: PureState3Q, roles: RoleOrder) -> PureState3Q:
    """Moves the qubit of role ``r`` to the physical party playing it"""
    roles = normalize_roles(roles)
    axes = [roles.index(party) for party in Party]
    return PureState3Q.from_tensor(np.transpose(state.tensor, axes))


def ghz_splitting_step(role: Party, x: float, label: str = "") -> ProtocolStep:
    """Rotates ``role`` by the GHZ rotation and measures ``diag(sqrt x, sqrt(1-x))``

    Both outcomes become ``(|00>|0> + |11>|phi>)/sqrt(2)`` with ``cos(phi) = 2x - 1`` on ``role``
    after the corrections; outcome 1 needs a sign flip on Alice as well.
    """
    role = Party(role)
    e0, e1 = diagonal_kraus_pair(x, 1 - x)
    s, c = np.sqrt(1 - x), np.sqrt(x)
    v0 = np.array([[c, -s], [s, c]], dtype=np.complex128)
    v1 = np.array([[s, -c], [c, s]], dtype=np.complex128)
    corrections = ({role: v0}, {role: PAULI_Z @ v1, Party.A: PAULI_Z})
    return ProtocolStep(role, (e0 @ GHZ_ROTATION, e1 @ GHZ_ROTATION), corrections, x, label)


def real_final_step(spec: TargetRealSpec) -> ProtocolStep:
    x = spec.mu**2
    e0, e1 = diagonal_kraus_pair(x, 1 - x)
    swap = {Party.A: PAULI_X, Party.B: reflection(spec.delta), Party.C: reflection(spec.delta_prime)}
    return ProtocolStep(Party.A, (e0, e1), ({}, swap), x, "unbalance")


def complex_final_step(spec: TargetComplexSpec) -> ProtocolStep:
    c, s = np.cos(spec.delta_double_prime), np.sin(spec.delta_double_prime)
    a0 = np.array([[1, 1j * c], [0, 1j * s]], dtype=np.complex128) / np.sqrt(2)
    a1 = np.array([[1, -1j * c], [0, -1j * s]], dtype=np.complex128) / np.sqrt(2)
    swap = {
        Party.A: reflection(spec.delta_double_prime),
        Party.B: reflection(spec.delta),
        Party.C: reflection(spec.delta_prime),
    }
    return ProtocolStep(Party.A, (a0, a1), ({}, swap), 0.5, "phase")


def run_protocol(
    initial: PureState3Q,
    steps: Sequence[ProtocolStep],
    target: PureState3Q,
    roles: RoleOrder = "ABC",
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ProtocolTrace:
    """Simulates every branch of a sequence of corrected local measurements

    Args:
        initial: the starting state
        steps: the measurements, with parties given by role
        target: the state every leaf must reach, in physical party order
        roles: the physical parties playing roles A, B and C
        tolerances: ``tolerances.proto`` bounds the infidelity of each leaf

    Returns:
        The trace of all steps and all leaves

    Raises:
        BranchCorrectionFailed: if a leaf differs from the target
    """
    roles = normalize_roles(roles)
    role_map = dict(zip(Party, roles))
    branches: List[Tuple[str, float, PureState3Q]] = [("", 1.0, initial)]
    records: List[StepRecord] = []
    for index, step in enumerate(steps, start=1):
        party = role_map[step.role]
        corrections = tuple(
            {role_map[role]: u for role, u in outcome_corrections.items()}
            for outcome_corrections in step.corrections
        )
        children: List[Tuple[str, float, PureState3Q]] = []
        branch_records: List[BranchRecord] = []
        for path, probability, state in branches:
            measured, corrected, probabilities = [], [], []
            for outcome, kraus in enumerate(step.kraus):
                outcome_state, q = apply_kraus(state, party, kraus, tolerances)
                measured.append(outcome_state)
                corrected.append(apply_local_unitaries(outcome_state, corrections[outcome], tolerances))
                probabilities.append(q)
                children.append((path + str(outcome), probability * q, corrected[-1]))
            branch_records.append(
                BranchRecord(
                    path=path,
                    party=party,
                    probabilities=(probabilities[0], probabilities[1]),
                    measured=(measured[0], measured[1]),
                    corrected=(corrected[0], corrected[1]),
                    verdict=_verdict(measured, tolerances),
                    corrected_verdict=_verdict(corrected, tolerances),
                    re_omegas=(_re_omega(corrected[0], tolerances), _re_omega(corrected[1], tolerances)),
                )
            )
        logger.debug("Step %d (%s) on party %s: %d branches", index, step.label, party.value, len(children))
        records.append(
            StepRecord(index, step.label, step.role, party, step.x, step.kraus, corrections, branch_records)
        )
        branches = children

    leaves = [
        ProtocolLeaf(path, probability, state, fidelity_up_to_global_phase(state, target))
        for path, probability, state in branches
    ]
    trace = ProtocolTrace(target=target, roles=roles, steps=records, leaves=leaves)
    failing = [leaf for leaf in leaves if leaf.fidelity < 1 - tolerances.proto]
    if failing:
        worst = min(failing, key=lambda leaf: leaf.fidelity)
        raise BranchCorrectionFailed(
            f"{len(failing)} of {len(leaves)} leaves missed the target; leaf {worst.path} has "
            f"fidelity {worst.fidelity!r}"
        )
    return trace


def _re_omega(state: PureState3Q, tolerances: Tolerances) -> float:
    try:
        return subclass_of(state, tolerances)
    except (NotGhzClass, DegeneratePencil):
        # close to biseparable, no canonical form
        return float("nan")


def _verdict(states: Sequence[PureState3Q], tolerances: Tolerances) -> OrbitRelation:
    first, second = (compute_invariants(state, tolerances) for state in states)
    return orbit_fingerprints_equal(first, second, tolerances.orbit)


def ghz_to_real(
    spec: TargetRealSpec,
    roles: RoleOrder = "ABC",
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    initial: Optional[PureState3Q] = None,
) -> ProtocolTrace:
    """Transforms the GHZ state deterministically into a real state of the Re Omega = 0 subclass

    Charlie's measurement uses ``x = (1 + cos delta')/2``, Bob's ``x = (1 + cos delta)/2`` and Alice's
    ``x = mu^2``.

    Args:
        spec: the target parameters
        roles: the physical parties playing Alice, Bob and Charlie; ``"BAC"`` lets Bob hold the
            unbalanced qubit
        tolerances: tolerances of the leaf check
        initial: the starting state, the GHZ state by default

    Raises:
        BranchCorrectionFailed: if a leaf differs from the target
    """
    steps = [
        ghz_splitting_step(Party.C, (1 + np.cos(spec.delta_prime)) / 2, "split C"),
        ghz_splitting_step(Party.B, (1 + np.cos(spec.delta)) / 2, "split B"),
        real_final_step(spec),
    ]
    target = permute_roles(spec.target(), roles)
    return run_protocol(ghz_state() if initial is None else initial, steps, target, roles, tolerances)


def ghz_to_complex(
    spec: TargetComplexSpec,
    roles: RoleOrder = "ABC",
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    initial: Optional[PureState3Q] = None,
) -> ProtocolTrace:
    """Transforms the GHZ state deterministically into ``(|000> + i|phi'' phi phi'>)/sqrt(2)``

    Steps 1 and 2 are those of :func:`ghz_to_real`. Alice's two outcomes are complex conjugates of
    each other, each with probability 1/2, and outcome 1 is corrected by reflections on all parties.
    """
    steps = [
        ghz_splitting_step(Party.C, (1 + np.cos(spec.delta_prime)) / 2, "split C"),
        ghz_splitting_step(Party.B, (1 + np.cos(spec.delta)) / 2, "split B"),
        complex_final_step(spec),
    ]
    target = permute_roles(spec.target(), roles)
    return run_protocol(ghz_state() if initial is None else initial, steps, target, roles, tolerances)

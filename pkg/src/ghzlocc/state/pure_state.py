from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt
from typing_extensions import TypeAlias

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.errors import InvalidKrausOperator, NonUnitaryOperator, NotNormalized, ZeroProbabilityOutcome

Mat2: TypeAlias = npt.NDArray[np.complex128]
AmplitudeLike: TypeAlias = Union[Sequence[complex], npt.ArrayLike]


class Party(str, Enum):
    """The holders of the three qubits, in tensor-factor order"""

    A = "A"
    B = "B"
    C = "C"

    @property
    def axis(self) -> int:
        """Position of the party's index in the amplitude tensor t[i, j, k]"""
        return "ABC".index(self.value)


@dataclass(frozen=True, eq=False)
class PureState3Q:
    """A normalized three-qubit pure state.

    The amplitude of the basis state ``|ijk>`` (Alice ``i``, Bob ``j``, Charlie ``k``) is stored at the
    flat index ``4i + 2j + k``. Instances are immutable; the amplitude array is read-only.
    """

    amps: npt.NDArray[np.complex128]

    NORM_TOLERANCE = DEFAULT_TOLERANCES.norm

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.shape != (8,):
            raise ValueError(f"A three-qubit state needs 8 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("Amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1) > self.NORM_TOLERANCE:
            raise NotNormalized(norm)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(
        cls, amps: AmplitudeLike, tolerances: Tolerances = DEFAULT_TOLERANCES, renormalize: bool = False
    ) -> PureState3Q:
        """Creates a state from 8 amplitudes in flat-index order

        Args:
            amps: the amplitudes t_ijk at flat index 4i+2j+k
            tolerances: ``tolerances.norm`` bounds the accepted deviation of the norm from 1
            renormalize: if True, any nonzero vector is accepted and scaled to unit norm

        Returns:
            The state, scaled to unit norm to full precision

        Raises:
            NotNormalized: if the norm deviates from 1 by more than the tolerance
        """
        vector = np.asarray(amps, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(vector))
        if norm == 0 or not np.isfinite(norm) or (not renormalize and abs(norm - 1) > tolerances.norm):
            raise NotNormalized(norm)
        return cls(vector / norm)

    @classmethod
    def from_tensor(cls, tensor: npt.ArrayLike) -> PureState3Q:
        return cls(np.asarray(tensor, dtype=np.complex128).reshape(8))

    @classmethod
    def basis(cls, label: str) -> PureState3Q:
        """The computational basis state named by a bit string such as ``"010"``"""
        if len(label) != 3 or set(label) - {"0", "1"}:
            raise ValueError(f"Invalid basis label {label!r}")
        amps = np.zeros(8, dtype=np.complex128)
        amps[int(label, 2)] = 1
        return cls(amps)

    @property
    def tensor(self) -> npt.NDArray[np.complex128]:
        """The amplitudes as a read-only (2, 2, 2) array t[i, j, k]"""
        return self.amps.reshape(2, 2, 2)

    def is_real(self) -> bool:
        """True if every amplitude has zero imaginary part"""
        return bool(np.all(self.amps.imag == 0))

    def __repr__(self) -> str:
        return f"PureState3Q({np.array2string(self.amps, precision=6, separator=', ')})"


def ghz_state() -> PureState3Q:
    """(|000> + |111>)/sqrt(2)"""
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = amps[7] = 1 / np.sqrt(2)
    return PureState3Q(amps)


def w_state() -> PureState3Q:
    """(|001> + |010> + |100>)/sqrt(3)"""
    amps = np.zeros(8, dtype=np.complex128)
    amps[[1, 2, 4]] = 1 / np.sqrt(3)
    return PureState3Q(amps)


@dataclass(frozen=True, eq=False)
class TMatrixPair:
    """The two 2x2 slices of a state relative to one party.

    For party A, ``(T_i)_jk = t_ijk``. For party B, ``(T_i)_jk = t_jik`` (rows Alice, columns Charlie)
    and for party C, ``(T_i)_jk = t_jki`` (rows Alice, columns Bob). With these conventions a unitary
    on the party mixes ``T0`` and ``T1`` the same way for all three parties.
    """

    t0: Mat2
    t1: Mat2
    party: Party

    @property
    def a(self) -> float:
        return float(np.vdot(self.t0, self.t0).real)

    @property
    def b(self) -> float:
        return float(np.vdot(self.t1, self.t1).real)

    @property
    def stacked(self) -> npt.NDArray[np.complex128]:
        return np.stack([self.t0, self.t1])

    def mixed(self, u: npt.ArrayLike) -> TMatrixPair:
        """The pair after the party applies ``u``: ``T'_i = sum_l u_il T_l``"""
        u = np.asarray(u, dtype=np.complex128)
        mixed = np.tensordot(u, self.stacked, axes=(1, 0))
        return TMatrixPair(mixed[0], mixed[1], self.party)

    def to_state(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> PureState3Q:
        """Reassembles the state the pair was taken from"""
        tensor = np.moveaxis(self.stacked, 0, self.party.axis)
        return PureState3Q.from_amplitudes(tensor.reshape(8), tolerances)


def t_matrices(state: PureState3Q, party: Party) -> TMatrixPair:
    """Slices a state into the party-relative matrices T0 and T1"""
    view = np.moveaxis(state.tensor, party.axis, 0)
    return TMatrixPair(view[0].copy(), view[1].copy(), party)


def _act_on_party(state: PureState3Q, party: Party, operator: Mat2) -> npt.NDArray[np.complex128]:
    moved = np.moveaxis(state.tensor, party.axis, 0)
    acted = np.tensordot(operator, moved, axes=(1, 0))
    return np.moveaxis(acted, 0, party.axis).reshape(8)


def unitarity_defect(u: npt.ArrayLike) -> float:
    """Frobenius norm of ``u^dagger u - 1``"""
    u = np.asarray(u, dtype=np.complex128)
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


def apply_local_unitary(
    state: PureState3Q, party: Party, u: npt.ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> PureState3Q:
    """Applies a single-qubit unitary to one party

    Raises:
        NonUnitaryOperator: if ``||u^dagger u - 1|| > tolerances.unit``
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValueError("A local operator must be a 2x2 matrix")
    defect = unitarity_defect(u)
    if defect > tolerances.unit:
        raise NonUnitaryOperator(f"||u^dagger u - 1|| = {defect:.3e} exceeds {tolerances.unit:.1e}")
    return PureState3Q.from_amplitudes(_act_on_party(state, party, u), tolerances)


def apply_local_unitaries(
    state: PureState3Q, unitaries: dict, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> PureState3Q:
    """Applies a product of local unitaries given as a mapping from party to matrix"""
    for party, u in unitaries.items():
        state = apply_local_unitary(state, Party(party), u, tolerances)
    return state


def apply_kraus(
    state: PureState3Q, party: Party, k: npt.ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[PureState3Q, float]:
    """Applies one Kraus operator of a local measurement

    Args:
        state: the measured state
        party: the measuring party
        k: the 2x2 Kraus operator, operator norm at most 1

    Returns:
        The normalized outcome state and its probability ``<psi| K^dagger K |psi>``

    Raises:
        InvalidKrausOperator: if the operator norm of ``k`` exceeds ``1 + tolerances.unit``
        ZeroProbabilityOutcome: if the probability is below ``tolerances.prob``
    """
    k = np.asarray(k, dtype=np.complex128)
    if k.shape != (2, 2):
        raise ValueError("A Kraus operator must be a 2x2 matrix")
    operator_norm = float(np.linalg.norm(k, 2))
    if operator_norm > 1 + tolerances.unit:
        raise InvalidKrausOperator(f"Operator norm {operator_norm!r} exceeds 1")
    unnormalized = _act_on_party(state, party, k)
    probability = float(np.vdot(unnormalized, unnormalized).real)
    if probability < tolerances.prob:
        raise ZeroProbabilityOutcome(f"Outcome probability {probability!r} is below {tolerances.prob:.1e}")
    return PureState3Q(unnormalized / np.sqrt(probability)), probability


def conjugate(state: PureState3Q) -> PureState3Q:
    return PureState3Q(state.amps.conj())


def fidelity_up_to_global_phase(s1: PureState3Q, s2: PureState3Q) -> float:
    """|<s1|s2>|"""
    return float(abs(np.vdot(s1.amps, s2.amps)))


def marginal(state: PureState3Q, party: Party) -> npt.NDArray[np.complex128]:
    """Reduced density matrix of one qubit"""
    rows = np.moveaxis(state.tensor, party.axis, 0).reshape(2, 4)
    return rows @ rows.conj().T


def marginal_purity(state: PureState3Q, party: Party) -> float:
    """Tr rho^2 of the party's reduced density matrix"""
    rho = marginal(state, party)
    return float(np.vdot(rho, rho).real)

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.gate_search.gate_conditions import GateConditionsResidual, gate_residuals
from ghzlocc.state.pure_state import Mat2, Party, PureState3Q, apply_local_unitary, t_matrices

if TYPE_CHECKING:
    from ghzlocc.core.povm.deterministic_povm import DeterministicPovm


@dataclass(frozen=True, eq=False)
class GateSearchResult:
    """A local unitary on ``party`` turning the searched state into a gate state"""

    party: Party
    alpha: float
    zeta: float
    unitary: Mat2
    residuals: GateConditionsResidual
    transformed: PureState3Q
    candidates_tried: int = 1
    povm: Optional[DeterministicPovm] = None

    def to_dict(self) -> dict:
        return {
            "party": self.party.value,
            "alpha": self.alpha,
            "zeta": self.zeta,
            "unitary": self.unitary,
            "residuals": self.residuals.to_dict(),
            "candidates_tried": self.candidates_tried,
        }


class AbstractGateSearch(ABC):
    """Abstract class used to write a gate-state search"""

    def __init__(self, state: PureState3Q, party: Party, tolerances: Tolerances = DEFAULT_TOLERANCES):
        """Initializes a gate search

        Args:
            state (PureState3Q): the state to transform into a gate state
            party (Party): the party whose local unitary is searched for
            tolerances (Tolerances): numerical tolerances of the search and of its postcondition
        """
        self.state = state
        self.party = Party(party)
        self.tolerances = tolerances
        self.t = t_matrices(state, self.party)

    @abstractmethod
    def search(self, **kwargs) -> GateSearchResult:
        """Perform the search"""

    def _result(self, unitary: Mat2, alpha: float, zeta: float, **kwargs) -> GateSearchResult:
        transformed = apply_local_unitary(self.state, self.party, unitary, self.tolerances)
        return GateSearchResult(
            party=self.party,
            alpha=float(alpha),
            zeta=float(zeta),
            unitary=np.asarray(unitary, dtype=np.complex128),
            residuals=gate_residuals(t_matrices(transformed, self.party)),
            transformed=transformed,
            **kwargs,
        )

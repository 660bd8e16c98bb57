from __future__ import annotations

import logging
from typing import Iterable, List, Tuple

import numpy as np
import pandas as pd

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.gate_search.find_gate_unitary import find_gate_unitary
from ghzlocc.core.ghz_canonical import subclass_of
from ghzlocc.core.invariants import compute_invariants
from ghzlocc.core.povm.deterministic_povm import apply_deterministic_povm, build_deterministic_povm
from ghzlocc.errors import ChainStepFailed, GhzLoccError, ReOmegaDrift
from ghzlocc.state.pure_state import Party, PureState3Q

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = [
    "step",
    "party",
    "lambda",
    "alpha",
    "zeta",
    "x",
    "y",
    "q0",
    "I1",
    "I2",
    "I3",
    "I4",
    "I5",
    "ReOmega",
]


def _trajectory_row(step: int, state: PureState3Q, tolerances: Tolerances, **fields) -> dict:
    invariants = compute_invariants(state, tolerances)
    row = {column: np.nan for column in TRAJECTORY_COLUMNS}
    row.update(step=step, party="")
    row.update(fields)
    row.update(zip(["I1", "I2", "I3", "I4", "I5"], invariants.real_part))
    row["ReOmega"] = subclass_of(state, tolerances)
    return row


def chain_deterministic(
    state: PureState3Q,
    steps: Iterable[Tuple[Party, float]],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[PureState3Q, pd.DataFrame]:
    """Runs several rounds of deterministic measurements, following outcome 0 of each round

    Every round searches a gate unitary for its party, builds the deterministic measurement of the
    given ``lambda`` and checks that both outcomes share an orbit. Both outcomes carry the same
    invariants, so following outcome 0 loses nothing.

    Args:
        state: a GHZ-class state
        steps: the ``(party, lambda)`` of each round
        tolerances: tolerances of the searches and orbit checks

    Returns:
        The final state and its trajectory, one row per round plus the initial state, with the
        invariants and Re Omega after each round.

    Raises:
        ChainStepFailed: wrapping the error of the first failing round, or a ``ReOmegaDrift`` when Re Omega
            moves by more than ``tolerances.orbit``
    """
    rows: List[dict] = [_trajectory_row(0, state, tolerances)]
    initial_re_omega = rows[0]["ReOmega"]
    for index, (party, lam) in enumerate(steps, start=1):
        party = Party(party)
        try:
            gate = find_gate_unitary(state, party, tolerances=tolerances)
            povm = build_deterministic_povm(state, party, gate.unitary, lam, tolerances)
            outcome = apply_deterministic_povm(state, povm, tolerances)
            state = outcome.outcome0
            row = _trajectory_row(
                index,
                state,
                tolerances,
                party=party.value,
                alpha=gate.alpha,
                zeta=gate.zeta,
                x=povm.diag.x,
                y=povm.diag.y,
                q0=outcome.q0,
            )
        except GhzLoccError as error:
            raise ChainStepFailed(index, error) from error
        row["lambda"] = lam
        drift = abs(row["ReOmega"] - initial_re_omega)
        if drift > tolerances.orbit:
            logger.warning("Re Omega drifted by %.3e after step %d", drift, index)
            raise ChainStepFailed(
                index, ReOmegaDrift(f"Re Omega drifted by {drift:.3e}, more than {tolerances.orbit:.1e}")
            )
        rows.append(row)
    return state, pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS)

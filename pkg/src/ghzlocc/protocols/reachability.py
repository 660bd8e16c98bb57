"""Which real states the GHZ state reaches deterministically.

Deterministic local protocols preserve Re Omega, and Re Omega of the GHZ state is zero. The real
states with Re Omega = 0 are the three role permutations of ``mu|000> + nu|1 phi phi'>`` together
with the balanced family ``(|000> + i|phi'' phi phi'>)/sqrt(2)``, and the protocols of
:mod:`ghzlocc.protocols.ghz_protocols` reach each of them. Real states with Re Omega != 0 lie in
another class and are out of reach.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.ghz_canonical import decompose_ghz, ghz_canonical_state, subclass_of
from ghzlocc.core.invariants import OrbitRelation, compute_invariants, orbit_fingerprints_equal
from ghzlocc.errors import BranchCorrectionFailed, NotGhzOrbit
from ghzlocc.protocols.ghz_protocols import (
    ProtocolTrace,
    TargetComplexSpec,
    TargetRealSpec,
    ghz_to_complex,
    ghz_to_real,
)
from ghzlocc.state.pure_state import Party, PureState3Q, apply_local_unitaries, ghz_state

logger = logging.getLogger(__name__)

MEMBER_COLUMNS = ["family", "roles", "parameters", "reachable", "min_fidelity", "re_omega"]
REJECTED_COLUMNS = ["mu", "nu", "delta_a", "delta_b", "delta_c", "re_omega", "reachable"]

# keeps sampled angles away from the ends where the families degenerate
ANGLE_MARGIN = 0.05


@dataclass(frozen=True)
class TargetFamily:
    name: str
    roles: str
    form: str
    parameters: Dict[str, str]

    def to_dict(self) -> dict:
        return {"name": self.name, "roles": self.roles, "form": self.form, "parameters": self.parameters}


_REAL_PARAMETERS = {"mu": "[1/sqrt(2), 1)", "delta": "(0, pi/2]", "delta_prime": "(0, pi/2]"}

REACHABLE_FAMILIES: Tuple[TargetFamily, ...] = (
    TargetFamily("real", "ABC", "mu|000> + nu|1 phi(delta) phi(delta')>", _REAL_PARAMETERS),
    TargetFamily("real", "BAC", "mu|000> + nu|phi(delta) 1 phi(delta')>", _REAL_PARAMETERS),
    TargetFamily("real", "CAB", "mu|000> + nu|phi(delta) phi(delta') 1>", _REAL_PARAMETERS),
    TargetFamily(
        "balanced_complex",
        "ABC",
        "(|000> + i|phi(delta'') phi(delta) phi(delta')>)/sqrt(2)",
        {"delta": "(0, pi/2)", "delta_prime": "(0, pi/2)", "delta_double_prime": "(0, pi/2)"},
    ),
)


@dataclass(frozen=True)
class ReachabilityCertificate:
    """The subclass labels of a source and a target; different labels rule out a deterministic protocol"""

    source_re_omega: float
    target_re_omega: float
    reachable: bool

    def to_dict(self) -> dict:
        return {
            "source_re_omega": self.source_re_omega,
            "target_re_omega": self.target_re_omega,
            "reachable": self.reachable,
        }


@dataclass(frozen=True, eq=False)
class ReachabilityReport:
    source_re_omega: float
    families: Tuple[TargetFamily, ...]
    members: pd.DataFrame
    rejected: pd.DataFrame
    traces: List[ProtocolTrace] = field(default_factory=list)

    @property
    def all_members_reachable(self) -> bool:
        return bool(self.members["reachable"].all())

    @property
    def all_rejected_unreachable(self) -> bool:
        return not bool(self.rejected["reachable"].any())

    def to_dict(self) -> dict:
        return {
            "source_re_omega": self.source_re_omega,
            "families": [family.to_dict() for family in self.families],
            "members": self.members.to_dict(orient="records"),
            "rejected": self.rejected.to_dict(orient="records"),
        }


def reachability_certificate(
    target: PureState3Q,
    source: Optional[PureState3Q] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ReachabilityCertificate:
    """Compares the subclass labels of ``source`` (the GHZ state by default) and ``target``"""
    source = ghz_state() if source is None else source
    source_re_omega = subclass_of(source, tolerances)
    target_re_omega = subclass_of(target, tolerances)
    return ReachabilityCertificate(
        source_re_omega=source_re_omega,
        target_re_omega=target_re_omega,
        reachable=abs(source_re_omega - target_re_omega) <= tolerances.orbit,
    )


def to_ghz(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> PureState3Q:
    """Applies the canonical frame of a state in the GHZ orbit, which yields the GHZ state itself

    Raises:
        NotGhzOrbit: if the state is not local-unitary equivalent to the GHZ state
    """
    relation = orbit_fingerprints_equal(
        compute_invariants(state, tolerances), compute_invariants(ghz_state(), tolerances), tolerances.orbit
    )
    if relation is not OrbitRelation.SAME_ORBIT:
        raise NotGhzOrbit(f"State is not in the orbit of the GHZ state ({relation.value})")
    frame = decompose_ghz(state, tolerances).frame
    return apply_local_unitaries(state, dict(zip(Party, frame)), tolerances)


def _member_row(
    family: TargetFamily, parameters: dict, trace: Optional[ProtocolTrace], tolerances: Tolerances
) -> dict:
    return {
        "family": family.name,
        "roles": family.roles,
        "parameters": json.dumps(parameters, sort_keys=True),
        "reachable": trace is not None,
        "min_fidelity": np.nan if trace is None else trace.min_fidelity,
        "re_omega": np.nan if trace is None else subclass_of(trace.target, tolerances),
    }


def _run_member(
    family: TargetFamily, rng: np.random.Generator, initial: PureState3Q, tolerances: Tolerances
) -> Tuple[dict, Optional[ProtocolTrace]]:
    if family.name == "real":
        spec = TargetRealSpec(
            mu=rng.uniform(1 / np.sqrt(2), 1 - ANGLE_MARGIN),
            delta=rng.uniform(ANGLE_MARGIN, np.pi / 2),
            delta_prime=rng.uniform(ANGLE_MARGIN, np.pi / 2),
        )
        run = ghz_to_real
    else:
        spec = TargetComplexSpec(*rng.uniform(ANGLE_MARGIN, np.pi / 2 - ANGLE_MARGIN, size=3))
        run = ghz_to_complex
    try:
        trace = run(spec, roles=family.roles, tolerances=tolerances, initial=initial)
    except BranchCorrectionFailed as error:
        logger.warning("Sampled %s target %s was not reached: %s", family.name, spec, error.detail)
        trace = None
    return spec.to_dict(), trace


def enumerate_reachable_real_targets(
    state: Optional[PureState3Q] = None,
    samples: int = 4,
    seed: int = 0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ReachabilityReport:
    """Describes the real targets reachable from a state of the GHZ orbit and checks sampled members

    For every family, ``samples`` random members are reached by running the protocol on the input
    state brought to the GHZ state by its canonical frame. ``samples`` random real states with
    Re Omega != 0 are checked to be unreachable.

    Args:
        state: a state local-unitary equivalent to the GHZ state, the GHZ state by default
        samples: members sampled per family and real states sampled outside the subclass
        seed: seed of the sampled parameters
        tolerances: tolerances of the orbit check and of the protocols

    Raises:
        NotGhzOrbit: if the state is not in the GHZ orbit
    """
    state = ghz_state() if state is None else state
    initial = to_ghz(state, tolerances)
    rng = np.random.default_rng(seed)

    rows, traces = [], []
    for family in REACHABLE_FAMILIES:
        for _ in range(samples):
            parameters, trace = _run_member(family, rng, initial, tolerances)
            rows.append(_member_row(family, parameters, trace, tolerances))
            if trace is not None:
                traces.append(trace)

    rejected = []
    for _ in range(samples):
        mu, nu = np.sort(rng.uniform(0.2, 1.0, size=2))[::-1]
        deltas = rng.uniform(ANGLE_MARGIN, np.pi / 2 - ANGLE_MARGIN, size=3)
        candidate = ghz_canonical_state(mu, nu, 0.0, deltas)
        certificate = reachability_certificate(candidate, state, tolerances)
        rejected.append(
            dict(
                zip(REJECTED_COLUMNS, [mu, nu, *deltas, certificate.target_re_omega, certificate.reachable])
            )
        )

    return ReachabilityReport(
        source_re_omega=subclass_of(state, tolerances),
        families=REACHABLE_FAMILIES,
        members=pd.DataFrame(rows, columns=MEMBER_COLUMNS),
        rejected=pd.DataFrame(rejected, columns=REJECTED_COLUMNS),
        traces=traces,
    )

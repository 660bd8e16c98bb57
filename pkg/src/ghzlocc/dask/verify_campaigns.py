"""Seeded Monte Carlo campaigns checking the library's guarantees on random states.

Every trial is a ``dask.delayed`` task drawing its randomness from ``SeedSequence([seed, trial])``, so
the report of a campaign depends only on the configuration and the seed, not on the scheduler.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List

import dask
import numpy as np
import pandas as pd

from ghzlocc.config import RunConfig
from ghzlocc.core.gate_search.complex_gate_search import find_gate_unitary_complex, resultant_values
from ghzlocc.core.gate_search.real_gate_search import find_gate_unitary_real
from ghzlocc.core.ghz_canonical import verify_omega_conservation
from ghzlocc.core.invariants import (
    OrbitRelation,
    brute_force_invariants,
    compute_invariants,
    orbit_fingerprints_equal,
)
from ghzlocc.core.povm.appendix_checks import appendix_checks
from ghzlocc.core.povm.deterministic_povm import outcome_invariants_closed_form, solve_condpovm
from ghzlocc.errors import GhzLoccError
from ghzlocc.protocols.ghz_protocols import TargetComplexSpec, ghz_to_complex, ghz_to_real, real_target_grid
from ghzlocc.state.local_operators import PAULI_X, diagonal_kraus_pair, haar_unitary, random_two_outcome_povm
from ghzlocc.state.pure_state import (
    Party,
    apply_kraus,
    apply_local_unitaries,
    apply_local_unitary,
    conjugate,
    t_matrices,
)
from ghzlocc.state.random_state import Ensemble, random_state

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = ["trial", "passed", "residual", "detail"]

# frequency bins carrying the resultant's energy on a 512-point grid
RESULTANT_BINS = (2, 6, 10, 14, 18)
RESULTANT_GRID_SIZE = 512
RESULTANT_ENERGY_SHARE = 1 - 1e-6
ORACLE_TOLERANCE = 1e-9
CLOSED_FORM_TOLERANCE = 1e-10
LAMBDA_RANGE = (1.05, 5.0)
PROBABILITY_DEFECT = 1e-10
# keeps random protocol targets away from degenerate angles
ANGLE_MARGIN = 0.01
REAL_TARGETS = real_target_grid()


class Campaign(str, Enum):
    THEOREM1 = "theorem1"
    REAL_GATE = "real_gate"
    COMPLEX_GATE = "complex_gate"
    APPENDIX = "appendix"
    INVARIANT_ORACLE = "invariant_oracle"
    PROTOCOL = "protocol"
    CLOSED_FORM = "closed_form"
    RESULTANT_STRUCTURE = "resultant_structure"
    FINGERPRINT = "fingerprint"


@dataclass(frozen=True, eq=False)
class CampaignReport:
    """Outcome of every trial of a campaign"""

    campaign: Campaign
    seed: int
    trials: pd.DataFrame

    @property
    def passed(self) -> int:
        return int(self.trials["passed"].sum())

    @property
    def failed(self) -> int:
        return len(self.trials) - self.passed

    @property
    def success_rate(self) -> float:
        return self.passed / len(self.trials)

    @property
    def max_residual(self) -> float:
        return float(self.trials["residual"].max())

    @property
    def failing_seeds(self) -> List[List[int]]:
        """``[seed, trial]`` of each failed trial, the entropy that reproduces it"""
        return [[self.seed, int(trial)] for trial in self.trials.loc[~self.trials["passed"], "trial"]]

    def to_dict(self) -> dict:
        return {
            "campaign": self.campaign.value,
            "seed": self.seed,
            "trial_count": len(self.trials),
            "passed": self.passed,
            "failed": self.failed,
            "success_rate": self.success_rate,
            "max_residual": self.max_residual,
            "failing_seeds": self.failing_seeds,
            "trials": self.trials.to_dict(orient="records"),
        }


def _trial(passed: bool, residual: float, detail: str = "") -> dict:
    return {"passed": bool(passed), "residual": float(residual), "detail": detail}


def _random_party(rng: np.random.Generator) -> Party:
    return list(Party)[rng.integers(3)]


def _real_gate_state(state_seed, rng: np.random.Generator, config: RunConfig):
    state = random_state(state_seed, Ensemble.GHZ_CLASS_REAL, config.tolerances)
    party = _random_party(rng)
    return find_gate_unitary_real(state, party, config.tolerances).transformed, party


def theorem1_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    """Re Omega against its average over a random full-rank measurement"""
    state_seed, rng_seed = seed.spawn(2)
    state = random_state(state_seed, Ensemble.GHZ_CLASS_COMPLEX, config.tolerances)
    rng = np.random.default_rng(rng_seed)
    kraus_pair = random_two_outcome_povm(rng)
    report = verify_omega_conservation(state, _random_party(rng), kraus_pair, config.tolerances)
    return _trial(report.difference <= config.tolerances.orbit, report.difference)


def real_gate_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    """Real gate search for all three parties, each confirmed by a deterministic measurement"""
    state = random_state(seed, Ensemble.GHZ_CLASS_REAL, config.tolerances)
    results = [
        find_gate_unitary_real(state, party, config.tolerances, probe_lambda=config.probe_lambda)
        for party in Party
    ]
    residual = max(result.residuals.max_abs for result in results)
    return _trial(True, residual)


def complex_gate_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    state_seed, rng_seed = seed.spawn(2)
    state = random_state(state_seed, Ensemble.GHZ_CLASS_COMPLEX, config.tolerances)
    party = _random_party(np.random.default_rng(rng_seed))
    result = find_gate_unitary_complex(
        state, party, config.tolerances, grid_size=config.grid_size, probe_lambda=config.probe_lambda
    )
    detail = f"party {party.value}, {result.candidates_tried} candidates"
    return _trial(True, result.residuals.max_abs, detail)


def appendix_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    state_seed, rng_seed = seed.spawn(2)
    rng = np.random.default_rng(rng_seed)
    gate_state, party = _real_gate_state(state_seed, rng, config)
    report = appendix_checks(gate_state, party, rng.uniform(*LAMBDA_RANGE), config.tolerances)
    return _trial(report.passed, max(report.cubic_residuals))


def invariant_oracle_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    """Contracted invariants against the term-by-term sums, over all ensembles"""
    state_seed, rng_seed = seed.spawn(2)
    ensemble = list(Ensemble)[np.random.default_rng(rng_seed).integers(len(Ensemble))]
    state = random_state(state_seed, ensemble, config.tolerances)
    fast = compute_invariants(state, config.tolerances)
    slow = brute_force_invariants(state, config.tolerances)
    residual = max(float(np.abs(fast.real_part - slow.real_part).max()), abs(fast.i6 - slow.i6))
    return _trial(residual <= ORACLE_TOLERANCE, residual, ensemble.value)


def protocol_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    """One real target of the grid and one random complex target, each reached on every branch

    Trial ``i`` takes grid point ``i`` modulo the grid size, so 125 trials sweep the whole grid.
    """
    rng = np.random.default_rng(seed)
    # the entropy of a trial seed is [campaign seed, trial index]
    real = REAL_TARGETS[int(np.atleast_1d(seed.entropy)[-1]) % len(REAL_TARGETS)]
    complex_ = TargetComplexSpec(*rng.uniform(ANGLE_MARGIN, np.pi / 2 - ANGLE_MARGIN, size=3))
    traces = [
        ghz_to_real(real, tolerances=config.tolerances),
        ghz_to_complex(complex_, tolerances=config.tolerances),
    ]
    infidelity = max(1 - trace.min_fidelity for trace in traces)
    probability_defect = max(abs(trace.total_probability - 1) for trace in traces)
    re_omega = max(trace.max_abs_re_omega for trace in traces)
    passed = (
        infidelity <= config.tolerances.proto
        and probability_defect <= PROBABILITY_DEFECT
        and re_omega <= config.tolerances.orbit
    )
    detail = f"real target ({real.mu:.4f}, {real.delta:.4f}, {real.delta_prime:.4f})"
    return _trial(passed, max(infidelity, probability_defect, re_omega), detail)


def closed_form_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    """Closed-form outcome invariants against the invariants of the simulated outcome"""
    state_seed, rng_seed = seed.spawn(2)
    rng = np.random.default_rng(rng_seed)
    gate_state, party = _real_gate_state(state_seed, rng, config)
    t = t_matrices(gate_state, party)
    if t.a > t.b:
        gate_state = apply_local_unitary(gate_state, party, PAULI_X, config.tolerances)
        t = t_matrices(gate_state, party)
    x, y = solve_condpovm(t.a, t.b, rng.uniform(*LAMBDA_RANGE), config.tolerances)
    closed_form = outcome_invariants_closed_form(t, x, y)
    outcome, _ = apply_kraus(gate_state, party, diagonal_kraus_pair(x, y)[0], config.tolerances)
    direct = compute_invariants(outcome, config.tolerances).real_part
    mirrored = outcome_invariants_closed_form(t, 1 - x, 1 - y)
    residual = max(float(np.abs(closed_form - direct).max()), float(np.abs(closed_form - mirrored).max()))
    return _trial(residual <= CLOSED_FORM_TOLERANCE, residual)


def resultant_structure_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    """Share of the resultant's spectral energy in the frequencies allowed by its symmetry"""
    state_seed, rng_seed = seed.spawn(2)
    state = random_state(state_seed, Ensemble.GHZ_CLASS_COMPLEX, config.tolerances)
    t = t_matrices(state, _random_party(np.random.default_rng(rng_seed)))
    grid = np.linspace(0, 2 * np.pi, RESULTANT_GRID_SIZE, endpoint=False)
    energy = np.abs(np.fft.rfft(resultant_values(t, grid, config.tolerances))) ** 2
    share = float(energy[list(RESULTANT_BINS)].sum() / energy.sum())
    return _trial(share >= RESULTANT_ENERGY_SHARE, 1 - share)


def fingerprint_trial(seed: np.random.SeedSequence, config: RunConfig) -> dict:
    """A state against its conjugate and against a random local-unitary image"""
    state_seed, rng_seed = seed.spawn(2)
    state = random_state(state_seed, Ensemble.GHZ_CLASS_COMPLEX, config.tolerances)
    rng = np.random.default_rng(rng_seed)
    image = apply_local_unitaries(state, {party: haar_unitary(rng) for party in Party}, config.tolerances)
    fingerprint = compute_invariants(state, config.tolerances)
    conjugate_relation = orbit_fingerprints_equal(
        fingerprint, compute_invariants(conjugate(state), config.tolerances), config.tolerances.orbit
    )
    image_fingerprint = compute_invariants(image, config.tolerances)
    image_relation = orbit_fingerprints_equal(fingerprint, image_fingerprint, config.tolerances.orbit)
    passed = (
        conjugate_relation is OrbitRelation.CONJUGATE_ORBIT and image_relation is OrbitRelation.SAME_ORBIT
    )
    residual = float(np.abs(fingerprint.real_part - image_fingerprint.real_part).max())
    return _trial(passed, residual, f"{conjugate_relation.value}, {image_relation.value}")


campaign_trials: Dict[Campaign, Callable[[np.random.SeedSequence, RunConfig], dict]] = {
    Campaign.THEOREM1: theorem1_trial,
    Campaign.REAL_GATE: real_gate_trial,
    Campaign.COMPLEX_GATE: complex_gate_trial,
    Campaign.APPENDIX: appendix_trial,
    Campaign.INVARIANT_ORACLE: invariant_oracle_trial,
    Campaign.PROTOCOL: protocol_trial,
    Campaign.CLOSED_FORM: closed_form_trial,
    Campaign.RESULTANT_STRUCTURE: resultant_structure_trial,
    Campaign.FINGERPRINT: fingerprint_trial,
}


@dask.delayed
def perform_trial(campaign: Campaign, seed: int, index: int, config: RunConfig) -> dict:
    """Runs one trial; library errors count as a failed trial"""
    try:
        result = campaign_trials[campaign](np.random.SeedSequence([seed, index]), config)
    except GhzLoccError as error:
        result = _trial(False, np.nan, f"{error.code}: {error.detail}")
    return {"trial": index, **result}


def run_campaign(campaign: Campaign | str, config: RunConfig) -> CampaignReport:
    """Runs every trial of a campaign with the scheduler of the configuration

    Args:
        campaign: the campaign to run
        config: seed, trial count, tolerances and search parameters

    Returns:
        The report, with one row per trial in trial order
    """
    campaign = Campaign(campaign)
    tasks = [perform_trial(campaign, config.seed, index, config) for index in range(config.trial_count)]
    rows = dask.compute(*tasks, scheduler=config.scheduler)
    report = CampaignReport(campaign, config.seed, pd.DataFrame(list(rows), columns=TRIAL_COLUMNS))
    for seed, trial in report.failing_seeds:
        logger.warning(
            "%s trial %d failed; reproduce with SeedSequence([%d, %d])", campaign.value, trial, seed, trial
        )
    logger.info(
        "%s: %d of %d trials passed, max residual %.3e",
        campaign.value,
        report.passed,
        len(report.trials),
        report.max_residual,
    )
    return report

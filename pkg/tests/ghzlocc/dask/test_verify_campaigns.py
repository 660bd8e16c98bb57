import numpy as np
import pandas as pd
import pytest

from ghzlocc.config import RunConfig, Tolerances
from ghzlocc.dask.verify_campaigns import (
    REAL_TARGETS,
    RESULTANT_ENERGY_SHARE,
    TRIAL_COLUMNS,
    Campaign,
    CampaignReport,
    perform_trial,
    run_campaign,
)

RELIABLE_CAMPAIGNS = [
    Campaign.THEOREM1,
    Campaign.REAL_GATE,
    Campaign.APPENDIX,
    Campaign.INVARIANT_ORACLE,
    Campaign.PROTOCOL,
    Campaign.CLOSED_FORM,
    Campaign.FINGERPRINT,
]


@pytest.mark.parametrize("campaign", RELIABLE_CAMPAIGNS)
def test_campaign_passes(campaign):
    report = run_campaign(campaign, RunConfig(seed=11, trial_count=3))
    assert report.campaign is campaign
    assert list(report.trials.columns) == TRIAL_COLUMNS
    assert list(report.trials["trial"]) == [0, 1, 2]
    assert report.passed == 3
    assert report.failing_seeds == []
    assert report.success_rate == 1


def test_complex_gate_campaign():
    config = RunConfig(seed=4, trial_count=2, grid_size=128)
    report = run_campaign(Campaign.COMPLEX_GATE.value, config)
    assert report.trials["passed"].dtype == bool
    assert report.failed == 0
    assert report.max_residual <= config.tolerances.gate
    assert all("candidates" in detail for detail in report.trials["detail"])


def test_resultant_structure_campaign():
    report = run_campaign(Campaign.RESULTANT_STRUCTURE, RunConfig(seed=4, trial_count=2))
    assert report.success_rate == 1
    assert report.max_residual <= 1 - RESULTANT_ENERGY_SHARE


def test_protocol_campaign_sweeps_the_real_grid():
    report = run_campaign(Campaign.PROTOCOL, RunConfig(seed=6, trial_count=3))
    assert report.failed == 0
    for index, detail in enumerate(report.trials["detail"]):
        spec = REAL_TARGETS[index]
        assert detail == f"real target ({spec.mu:.4f}, {spec.delta:.4f}, {spec.delta_prime:.4f})"
    assert len(REAL_TARGETS) == 125


def test_campaign_is_reproducible():
    config = RunConfig(seed=21, trial_count=4)
    first = run_campaign(Campaign.THEOREM1, config)
    second = run_campaign(Campaign.THEOREM1, config)
    pd.testing.assert_frame_equal(first.trials, second.trials)


def test_campaign_does_not_depend_on_scheduler():
    synchronous = run_campaign(Campaign.FINGERPRINT, RunConfig(seed=2, trial_count=4))
    threaded = run_campaign(Campaign.FINGERPRINT, RunConfig(seed=2, trial_count=4, scheduler="threads"))
    pd.testing.assert_frame_equal(synchronous.trials, threaded.trials)


def test_trial_is_a_delayed_task():
    row = perform_trial(Campaign.INVARIANT_ORACLE, 1, 5, RunConfig()).compute()
    assert row["trial"] == 5
    assert row["passed"]
    assert row["residual"] <= 1e-9


def test_failing_trials_are_reported():
    config = RunConfig(tolerances=Tolerances(tangle=10.0), seed=3, trial_count=2)
    report = run_campaign(Campaign.THEOREM1, config)
    assert report.failed == 2
    assert report.failing_seeds == [[3, 0], [3, 1]]
    assert report.trials["detail"][0].startswith("EnsembleExhausted")
    assert np.isnan(report.trials["residual"]).all()


def test_report_to_dict():
    trials = pd.DataFrame(
        [
            {"trial": 0, "passed": True, "residual": 1e-12, "detail": ""},
            {"trial": 1, "passed": False, "residual": 0.5, "detail": "off"},
        ],
        columns=TRIAL_COLUMNS,
    )
    output = CampaignReport(Campaign.PROTOCOL, 9, trials).to_dict()
    assert output["campaign"] == "protocol"
    assert output["passed"] == 1
    assert output["failed"] == 1
    assert output["success_rate"] == 0.5
    assert output["max_residual"] == 0.5
    assert output["failing_seeds"] == [[9, 1]]


def test_unknown_campaign():
    with pytest.raises(ValueError):
        run_campaign("random_walk", RunConfig(trial_count=1))

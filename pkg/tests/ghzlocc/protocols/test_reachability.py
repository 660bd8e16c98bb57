import numpy as np
import pytest

from ghzlocc.core.ghz_canonical import ghz_canonical_state, subclass_of
from ghzlocc.errors import NotGhzOrbit
from ghzlocc.protocols import enumerate_reachable_real_targets
from ghzlocc.protocols.ghz_protocols import TargetRealSpec
from ghzlocc.protocols.reachability import (
    MEMBER_COLUMNS,
    REACHABLE_FAMILIES,
    REJECTED_COLUMNS,
    reachability_certificate,
    to_ghz,
)
from ghzlocc.state import Party, fidelity_up_to_global_phase, ghz_state, haar_unitary
from ghzlocc.state.pure_state import apply_local_unitaries


@pytest.fixture
def ghz_image(ghz, rng):
    return apply_local_unitaries(ghz, {party: haar_unitary(rng) for party in Party})


def test_enumerate_from_ghz():
    report = enumerate_reachable_real_targets(samples=2, seed=5)
    assert report.source_re_omega == pytest.approx(0, abs=1e-12)
    assert list(report.members.columns) == MEMBER_COLUMNS
    assert list(report.rejected.columns) == REJECTED_COLUMNS
    assert len(report.members) == 2 * len(REACHABLE_FAMILIES)
    assert len(report.rejected) == 2
    assert report.all_members_reachable
    assert report.all_rejected_unreachable
    assert (report.members["min_fidelity"] >= 1 - 1e-10).all()
    assert np.abs(report.members["re_omega"]).max() <= 1e-9
    assert (np.abs(report.rejected["re_omega"]) > 1e-3).all()
    assert len(report.traces) == len(report.members)


def test_enumerate_is_seeded():
    first = enumerate_reachable_real_targets(samples=1, seed=3)
    second = enumerate_reachable_real_targets(samples=1, seed=3)
    assert list(first.members["parameters"]) == list(second.members["parameters"])


def test_enumerate_from_local_unitary_image(ghz_image):
    report = enumerate_reachable_real_targets(ghz_image, samples=1, seed=1)
    assert report.all_members_reachable
    assert report.all_rejected_unreachable


def test_to_ghz(ghz_image):
    assert fidelity_up_to_global_phase(to_ghz(ghz_image), ghz_state()) == pytest.approx(1, abs=1e-10)


def test_to_ghz_rejects_other_orbits(w, canonical_state):
    with pytest.raises(NotGhzOrbit):
        to_ghz(canonical_state)
    with pytest.raises(NotGhzOrbit):
        enumerate_reachable_real_targets(w)


def test_certificate_for_reachable_target():
    certificate = reachability_certificate(TargetRealSpec(0.9, 1.0, 0.3).target())
    assert certificate.reachable
    assert certificate.source_re_omega == pytest.approx(0, abs=1e-12)


def test_certificate_for_another_subclass():
    delta = np.arccos((2 / 3) ** (1 / 3))
    target = ghz_canonical_state(1.0, 1.0, 0.0, [delta] * 3)
    assert subclass_of(target) == pytest.approx(0.2, abs=1e-12)
    certificate = reachability_certificate(target)
    assert not certificate.reachable
    assert certificate.target_re_omega == pytest.approx(0.2, abs=1e-12)
    assert certificate.to_dict()["reachable"] is False


def test_families_to_dict():
    families = [family.to_dict() for family in REACHABLE_FAMILIES]
    assert [family["roles"] for family in families] == ["ABC", "BAC", "CAB", "ABC"]
    assert set(families[0]["parameters"]) == {"mu", "delta", "delta_prime"}

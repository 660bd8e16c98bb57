import numpy as np
import pytest

from ghzlocc.core.gate_search.abstract_gate_search import AbstractGateSearch
from ghzlocc.core.gate_search.complex_gate_search import ComplexGateSearch
from ghzlocc.core.gate_search.find_gate_unitary import (
    default_gate_search,
    find_gate_unitary,
    get_gate_search,
)
from ghzlocc.core.gate_search.gate_search_algorithms import BuiltInGateSearch
from ghzlocc.core.gate_search.real_gate_search import RealGateSearch
from ghzlocc.state import Party
from ghzlocc.state.local_operators import rotation


def test_default_search_follows_amplitudes(real_state, complex_state):
    assert default_gate_search(real_state) is BuiltInGateSearch.REAL
    assert default_gate_search(complex_state) is BuiltInGateSearch.COMPLEX


def test_find_gate_unitary_on_real_state(real_state):
    result = find_gate_unitary(real_state, Party.B)
    assert result.zeta == 0
    assert result.residuals.max_abs <= 1e-9


def test_find_gate_unitary_passes_kwargs(real_state):
    result = find_gate_unitary(real_state, Party.B, algorithm="real", probe_lambda=2.0)
    assert result.povm is not None


def test_get_gate_search():
    assert get_gate_search("real") is RealGateSearch
    assert get_gate_search(BuiltInGateSearch.COMPLEX) is ComplexGateSearch
    assert get_gate_search(MockGateSearch) is MockGateSearch


def test_get_gate_search_unknown_name():
    with pytest.raises(ValueError):
        get_gate_search("newton")


def test_get_gate_search_wrong_type():
    with pytest.raises(TypeError):
        get_gate_search(3)
    with pytest.raises(TypeError):
        get_gate_search(dict)


def test_custom_gate_search(ghz):
    result = find_gate_unitary(ghz, Party.A, algorithm=MockGateSearch, alpha=np.pi / 4)
    assert result.alpha == pytest.approx(np.pi / 4)
    assert result.candidates_tried == 1
    assert result.residuals.max_abs <= 1e-15


# pylint: disable=too-few-public-methods
class MockGateSearch(AbstractGateSearch):
    """Mock class used to test a gate search"""

    def search(self, alpha: float = 0.0):
        return self._result(rotation(alpha), alpha, 0.0)

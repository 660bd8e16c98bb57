from __future__ import annotations

from typing import Optional, Type, Union

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.gate_search.abstract_gate_search import AbstractGateSearch, GateSearchResult
from ghzlocc.core.gate_search.complex_gate_search import ComplexGateSearch
from ghzlocc.core.gate_search.gate_search_algorithms import BuiltInGateSearch
from ghzlocc.core.gate_search.real_gate_search import RealGateSearch, has_real_amplitudes
from ghzlocc.state.pure_state import Party, PureState3Q

builtin_gate_searches = {
    BuiltInGateSearch.REAL: RealGateSearch,
    BuiltInGateSearch.COMPLEX: ComplexGateSearch,
}

GateSearchLike = Union[Type[AbstractGateSearch], BuiltInGateSearch, str]


def default_gate_search(state: PureState3Q, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BuiltInGateSearch:
    """The real search for states with real amplitudes, the complex search otherwise"""
    if has_real_amplitudes(state, tolerances):
        return BuiltInGateSearch.REAL
    return BuiltInGateSearch.COMPLEX


def get_gate_search(algorithm: GateSearchLike) -> Type[AbstractGateSearch]:
    """Gets the class performing a gate search

    Args:
        algorithm: a built-in search, given as a ``BuiltInGateSearch`` or its string value, or a
            subclass of ``AbstractGateSearch``

    Returns:
        The class to instantiate, either looked up for a built-in search or the custom class itself.
    """
    if isinstance(algorithm, str) and not isinstance(algorithm, BuiltInGateSearch):
        algorithm = BuiltInGateSearch(algorithm)
    if isinstance(algorithm, BuiltInGateSearch):
        return builtin_gate_searches[algorithm]
    if isinstance(algorithm, type) and issubclass(algorithm, AbstractGateSearch):
        return algorithm
    raise TypeError("algorithm must be either a subclass of AbstractGateSearch or a builtin search")


def find_gate_unitary(
    state: PureState3Q,
    party: Party,
    algorithm: Optional[GateSearchLike] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    **kwargs,
) -> GateSearchResult:
    """Finds a local unitary on ``party`` that turns ``state`` into a gate state

    Args:
        state: a GHZ-class state
        party: the party the unitary acts on
        algorithm: the search to run; by default the real search for states with real amplitudes
            and the complex search otherwise
        tolerances: tolerances of the search
        **kwargs: additional arguments passed to the ``search`` method of the algorithm

    Returns:
        The search result, with the unitary, the gate state and its residuals
    """
    if algorithm is None:
        algorithm = default_gate_search(state, tolerances)
    return get_gate_search(algorithm)(state, party, tolerances).search(**kwargs)

from dataclasses import dataclass

from ghzlocc.config import DEFAULT_TOLERANCES


@dataclass
class StateLoadingConfig:
    """Configuration for loading a state file in ghzlocc.

    Contains all parameters needed for a user to specify how to correctly read a state.
    """

    norm_tolerance: float = DEFAULT_TOLERANCES.norm
    """Allowed deviation of the norm of the stored amplitudes from 1"""
    renormalize: bool = False
    """Accept any nonzero amplitudes and scale them to unit norm"""

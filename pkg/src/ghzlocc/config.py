from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used throughout ghzlocc.

    All values are absolute unless noted; every public operation that compares floating point
    quantities takes a ``tolerances`` argument defaulting to ``DEFAULT_TOLERANCES``.
    """

    norm: float = 1e-10
    """Allowed deviation of the state norm from 1"""
    unit: float = 1e-10
    """Allowed ``||u^dagger u - 1||`` for local unitaries and POVM completeness"""
    prob: float = 1e-12
    """Outcome probabilities below this are treated as zero"""
    tangle: float = 1e-6
    """I4 threshold separating the GHZ class from the W class"""
    im6: float = 1e-9
    """Band around zero in which the sign of Im I6 is reported as zero"""
    degenerate: float = 1e-7
    """Relative band in which mu and nu are considered equal"""
    gate: float = 1e-9
    """Gate-condition residual accepted for a gate state"""
    orbit: float = 1e-8
    """Invariant difference accepted for two states to share an orbit"""
    proto: float = 1e-10
    """Allowed infidelity of a protocol leaf with its target"""
    res: float = 1e-10
    """Resultant zero band, relative to the largest value on the scan grid"""
    fit: float = 1e-10
    """Relative residual accepted for the structured polynomial fit"""

    def __post_init__(self):
        for tolerance in dataclasses.fields(self):
            value = getattr(self, tolerance.name)
            if not value > 0:
                raise ValueError(f"Tolerance {tolerance.name} must be positive, got {value}")

    def with_overrides(self, **overrides: Optional[float]) -> Tolerances:
        """Returns a copy with the given tolerances replaced. ``None`` values are ignored."""
        changes = {name: value for name, value in overrides.items() if value is not None}
        return dataclasses.replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()


@dataclass
class RunConfig:
    """Configuration of a command line run or a verification campaign."""

    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 0
    grid_size: int = 512
    trial_count: int = 100
    output_path: Optional[str] = None
    output_format: str = "json"
    probe_lambda: float = 2.0
    scheduler: str = "synchronous"

    SCHEDULERS = ("synchronous", "threads", "processes")
    OUTPUT_FORMATS = ("json", "csv")

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.grid_size < 64:
            raise ValueError("grid_size must be at least 64")
        if self.trial_count < 1:
            raise ValueError("trial_count must be at least 1")
        if self.probe_lambda <= 1:
            raise ValueError("probe_lambda must be greater than 1")
        if self.output_format not in self.OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {', '.join(self.OUTPUT_FORMATS)}")
        if self.scheduler not in self.SCHEDULERS:
            raise ValueError(f"scheduler must be one of {', '.join(self.SCHEDULERS)}")

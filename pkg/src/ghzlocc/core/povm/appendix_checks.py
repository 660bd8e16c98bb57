"""Numerical checks of the identities behind the deterministic measurements.

For a gate state with ``a <= b`` and the weights of parameter ``lambda``:

* the Cayley-Hamilton theorem and the first gate condition give ``G00 / a^3 = G11 / b^3``;
* with ``mu = I5(outcome)``, the cubic
  ``(G00 - mu a^3) + 3 (G01 - mu a^2 b) z + 3 (G10 - mu a b^2) z^2 + (G11 - mu b^3) z^3`` has the roots
  ``y/x``, ``(1-y)/(1-x)`` and ``-a/b``, and the first two multiply to ``a^2 / b^2``;
* exactly one of ``y/x`` and ``(1-y)/(1-x)`` exceeds 1, which makes I5 decrease strictly;
* the closed-form I5 of the outcome matches the I5 of the simulated outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ghzlocc.config import DEFAULT_TOLERANCES, Tolerances
from ghzlocc.core.invariants import compute_invariants, trace_moments
from ghzlocc.core.povm.deterministic_povm import (
    apply_deterministic_povm,
    build_deterministic_povm,
    outcome_invariants_closed_form,
    require_gate_state,
)
from ghzlocc.state.local_operators import IDENTITY, PAULI_X
from ghzlocc.state.pure_state import Party, PureState3Q, t_matrices

# relative accuracy of the identities checked below
IDENTITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class AppendixReport:
    a: float
    b: float
    x: float
    y: float
    lam: float
    g00_over_a3: float
    g11_over_b3: float
    roots: Tuple[float, float, float]
    cubic_residuals: Tuple[float, float, float]
    root_product: float
    i5_input: float
    i5_outcome: float
    """I5 of the simulated outcome"""
    i5_closed_form: float
    identity_povm: bool

    @property
    def cayley_hamilton_ok(self) -> bool:
        return abs(self.g00_over_a3 - self.g11_over_b3) <= IDENTITY_TOLERANCE * max(1.0, self.g00_over_a3)

    @property
    def roots_ok(self) -> bool:
        return max(self.cubic_residuals) <= IDENTITY_TOLERANCE

    @property
    def root_product_ok(self) -> bool:
        expected = self.a**2 / self.b**2
        return abs(self.root_product - expected) <= IDENTITY_TOLERANCE * max(1.0, expected)

    @property
    def one_root_above_one(self) -> bool:
        """Exactly one of y/x, (1-y)/(1-x) exceeds 1; vacuous for the identity measurement"""
        if self.identity_povm:
            return True
        return (self.roots[0] > 1) != (self.roots[1] > 1)

    @property
    def closed_form_ok(self) -> bool:
        return abs(self.i5_closed_form - self.i5_outcome) <= IDENTITY_TOLERANCE * max(1.0, self.i5_outcome)

    @property
    def i5_decreases(self) -> bool:
        if self.identity_povm:
            return abs(self.i5_outcome - self.i5_input) <= IDENTITY_TOLERANCE
        return self.i5_outcome < self.i5_input

    @property
    def passed(self) -> bool:
        return all(
            (
                self.cayley_hamilton_ok,
                self.roots_ok,
                self.root_product_ok,
                self.one_root_above_one,
                self.i5_decreases,
                self.closed_form_ok,
            )
        )

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "x": self.x,
            "y": self.y,
            "lambda": self.lam,
            "g00_over_a3": self.g00_over_a3,
            "g11_over_b3": self.g11_over_b3,
            "roots": list(self.roots),
            "root_product": self.root_product,
            "i5_input": self.i5_input,
            "i5_outcome": self.i5_outcome,
            "i5_closed_form": self.i5_closed_form,
            "identity_povm": self.identity_povm,
            "passed": self.passed,
        }


def appendix_checks(
    gate_state: PureState3Q, party: Party, lam: float, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> AppendixReport:
    """Evaluates the identities above for one gate state and one measurement

    Raises:
        GateConditionViolated: if ``gate_state`` is not a gate state for ``party``
        OutOfRange: if ``lam`` admits no weights
        NonDeterministicPovm: if the simulated outcomes are not in the same orbit
    """
    party = Party(party)
    t = t_matrices(gate_state, party)
    require_gate_state(t, tolerances)
    if t.a > t.b + tolerances.norm:
        t = t.mixed(PAULI_X)
    moments = trace_moments(t)
    a, b = moments.a, moments.b
    g00, g01, g10, g11 = (g.real for g in (moments.g00, moments.g01, moments.g10, moments.g11))
    povm = build_deterministic_povm(gate_state, party, IDENTITY, lam, tolerances)
    x, y = povm.diag.x, povm.diag.y
    outcome = apply_deterministic_povm(gate_state, povm, tolerances)
    i5_input = float(compute_invariants(gate_state, tolerances).i5)
    i5_outcome = float(outcome.invariants0.i5)

    cubic = np.array(
        [
            g00 - i5_outcome * a**3,
            3 * (g01 - i5_outcome * a * a * b),
            3 * (g10 - i5_outcome * a * b * b),
            g11 - i5_outcome * b**3,
        ]
    )
    roots = (y / x, (1 - y) / (1 - x), -a / b)
    scale = np.abs(cubic).sum()
    cubic_residuals = tuple(
        float(abs(np.polynomial.polynomial.polyval(z, cubic)) / (scale * max(1.0, abs(z)) ** 3))
        for z in roots
    )
    return AppendixReport(
        a=a,
        b=b,
        x=x,
        y=y,
        lam=lam,
        g00_over_a3=g00 / a**3,
        g11_over_b3=g11 / b**3,
        roots=roots,
        cubic_residuals=cubic_residuals,
        root_product=roots[0] * roots[1],
        i5_input=i5_input,
        i5_outcome=i5_outcome,
        i5_closed_form=float(outcome_invariants_closed_form(t, x, y)[4]),
        identity_povm=bool(abs(x - y) <= tolerances.norm),
    )

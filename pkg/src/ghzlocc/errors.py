"""Exceptions raised by ghzlocc.

Every exception carries a machine-readable ``code`` and the process ``exit_code`` the command line
interface uses when it is raised: 2 for malformed input and violated contracts, 3 for numerical
searches that did not find what they were looking for.
"""

from __future__ import annotations

from typing import Optional


class GhzLoccError(Exception):
    """Base class of all ghzlocc errors"""

    code = "error"
    exit_code = 2

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    def to_dict(self) -> dict:
        return {"error": self.code, "detail": self.detail}


class ContractError(GhzLoccError, ValueError):
    """An input or an intermediate value violates a documented precondition"""

    code = "contract_error"


class SearchFailure(GhzLoccError, ArithmeticError):
    """A numerical search finished without a usable result"""

    code = "search_failure"
    exit_code = 3


class ParseError(ContractError):
    code = "ParseError"

    def __init__(self, detail: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(detail + location)
        self.line = line
        self.column = column

    def to_dict(self) -> dict:
        return {**super().to_dict(), "line": self.line, "column": self.column}


class NotNormalized(ContractError):
    code = "NotNormalized"

    def __init__(self, norm: float):
        super().__init__(f"State is not normalized: norm = {norm!r}")
        self.norm = norm


class NonUnitaryOperator(ContractError):
    code = "NonUnitaryOperator"


class InvalidKrausOperator(ContractError):
    code = "InvalidKrausOperator"


class ZeroProbabilityOutcome(ContractError):
    code = "ZeroProbabilityOutcome"


class EnsembleExhausted(SearchFailure):
    code = "EnsembleExhausted"


class NotGhzClass(ContractError):
    code = "NotGhzClass"


class DegeneratePencil(ContractError):
    code = "DegeneratePencil"


class OutcomeLeftGhzClass(ContractError):
    code = "OutcomeLeftGhzClass"


class StructureViolation(ContractError):
    code = "StructureViolation"


class GateConditionViolated(ContractError):
    code = "GateConditionViolated"


class OutOfRange(ContractError):
    code = "OutOfRange"


class NonDeterministicPovm(ContractError):
    code = "NonDeterministicPovm"

    def __init__(self, detail: str, verdict: str):
        super().__init__(detail)
        self.verdict = verdict


class BranchCorrectionFailed(ContractError):
    code = "BranchCorrectionFailed"


class NotGhzOrbit(ContractError):
    code = "NotGhzOrbit"


class RootRefinementFailed(SearchFailure):
    code = "RootRefinementFailed"


class NoSignChange(SearchFailure):
    code = "NoSignChange"


class OnlyComplexCommonRoots(SearchFailure):
    code = "OnlyComplexCommonRoots"


class OnlyConjugateOrbitOutcomes(SearchFailure):
    code = "OnlyConjugateOrbitOutcomes"


class ReOmegaDrift(SearchFailure):
    """Re Omega changed along a chain of deterministic measurements"""

    code = "ReOmegaDrift"


class ChainStepFailed(GhzLoccError):
    """A step of a deterministic chain failed; keeps the failing step and the original error"""

    code = "ChainStepFailed"

    def __init__(self, step_index: int, cause: GhzLoccError):
        super().__init__(f"step {step_index}: {cause.code}: {cause.detail}")
        self.step_index = step_index
        self.cause = cause
        self.exit_code = cause.exit_code

    def to_dict(self) -> dict:
        return {**super().to_dict(), "step": self.step_index, "cause": self.cause.code}

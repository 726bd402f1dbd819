"""Domain errors raised by the library.

Every error carries a stable ``code`` used by the service layer and the CLI
to build structured error payloads.
"""

from __future__ import annotations


class GkzError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, *, detail: object = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def payload(self) -> dict:
        body: dict = {"code": self.code, "message": self.message}
        if self.detail is not None:
            body["detail"] = self.detail
        return body


class InputValidationError(GkzError):
    """Malformed or inconsistent problem input."""

    code = "input-invalid"


class RankMismatchError(InputValidationError):
    """Matrix rank disagrees with the declared row count."""

    code = "rank-mismatch"


class NotHomogeneousError(InputValidationError):
    """No rational covector sends every matrix column to 1."""

    code = "not-homogeneous"


class WeightNotGenericError(GkzError):
    """The weight vector ties two distinct monomials it must separate."""

    code = "weight-not-generic"


class BudgetExceededError(GkzError):
    """A completion run exceeded its S-pair budget."""

    code = "budget-exceeded"


class SaturationBudgetError(GkzError):
    """Saturation did not stabilize within its budget."""

    code = "saturation-budget-exceeded"


class DegenerateParameterError(GkzError):
    """A standard pair yields a positive-dimensional solution set."""

    code = "degenerate-parameter"


class PerturbationZeroError(GkzError):
    """A perturbation direction vanishes on a coordinate that must move."""

    code = "perturbation-zero"


class DerivativeOrderError(GkzError):
    """Requested derivative order is outside the guaranteed range."""

    code = "derivative-order-out-of-range"


class ConditionNotMetError(GkzError):
    """A boundary derivative order was requested but the rational condition
    sums do not vanish."""

    code = "condition-not-met"


class UnknownExponentError(GkzError):
    """A requested exponent does not occur among the computed fake
    exponents."""

    code = "unknown-exponent"


class RegionLimitError(GkzError):
    """Lattice point enumeration exceeded its hard safety limit."""

    code = "region-limit-exceeded"


class SeriesFormatError(GkzError):
    """A series document cannot be parsed back into a series."""

    code = "series-format-invalid"

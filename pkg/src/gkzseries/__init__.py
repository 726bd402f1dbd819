"""Exact series solutions of regular hypergeometric systems.

The package computes starting exponents from the combinatorics of an
initial ideal, classifies their negative supports, and builds logarithmic
and log-free series by two perturbation methods, all in exact rational
arithmetic. A small HTTP service wraps the computations and the command
line client talks to it.
"""

from .errors import (
    BudgetExceededError,
    ConditionNotMetError,
    DegenerateParameterError,
    DerivativeOrderError,
    GkzError,
    InputValidationError,
    NotHomogeneousError,
    PerturbationZeroError,
    RankMismatchError,
    RegionLimitError,
    SaturationBudgetError,
    SeriesFormatError,
    UnknownExponentError,
    WeightNotGenericError,
)
from .exponents import FakeExponent, SupportClassification, fake_exponents
from .frobenius import (
    frobenius_method1,
    frobenius_method1_extra,
    frobenius_method2,
)
from .linalg import LatticeBasis, kernel_lattice_basis
from .problem import Pipeline, ProblemFile
from .series import LogSeries, phi_series
from .standard_pairs import StandardPair, standard_pairs
from .toric import Binomial, GroebnerBasis, saturate_to_toric
from .verifier import HypergeometricSystem, verify

__version__ = "0.1.0"

__all__ = [
    "Binomial",
    "BudgetExceededError",
    "ConditionNotMetError",
    "DegenerateParameterError",
    "DerivativeOrderError",
    "FakeExponent",
    "GkzError",
    "GroebnerBasis",
    "HypergeometricSystem",
    "InputValidationError",
    "LatticeBasis",
    "LogSeries",
    "NotHomogeneousError",
    "PerturbationZeroError",
    "Pipeline",
    "ProblemFile",
    "RankMismatchError",
    "RegionLimitError",
    "SaturationBudgetError",
    "SeriesFormatError",
    "StandardPair",
    "SupportClassification",
    "UnknownExponentError",
    "WeightNotGenericError",
    "fake_exponents",
    "frobenius_method1",
    "frobenius_method1_extra",
    "frobenius_method2",
    "kernel_lattice_basis",
    "phi_series",
    "saturate_to_toric",
    "standard_pairs",
    "verify",
    "__version__",
]

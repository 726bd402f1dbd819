"""Problem file model and the staged computation pipeline.

A problem file fixes the matrix, the parameter vector, the weight vector,
and optional extras: explicit toric generators, perturbation directions, a
restriction of the positive support family, and engine options. The
pipeline validates once and caches each derived stage.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import InputValidationError, UnknownExponentError
from .exponents import (FakeExponent, SupportClassification, annotate_exponents,
                        classify_supports, fake_exponents,
                        restrict_classification)
from .linalg import (LatticeBasis, Vec, as_vec, kernel_lattice_basis,
                     require_homogeneous, weight_genericity_check)
from .standard_pairs import StandardPair, standard_pairs
from .toric import (Binomial, GroebnerBasis, MonomialIdeal, initial_ideal,
                    lattice_ideal_generators, saturate_to_toric,
                    weight_groebner_basis)
from .verifier import HypergeometricSystem


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise InputValidationError(f"not a rational number: {value!r}")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputValidationError(f"not a rational number: {value!r}") from exc
    raise InputValidationError(f"not a rational number: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


class ProblemOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    radius: int = 10
    weight_cap: int | str = "20"
    s_degree: Optional[int] = None


class ProblemFile(BaseModel):
    """Wire format of a problem statement."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    matrix: list[list[int]] = Field(alias="A")
    beta: list[int | str]
    w: list[int | str]
    toric_generators: Optional[list[list[int]]] = None
    b_vectors: Optional[list[list[int]]] = None
    n_restriction: Optional[list[list[int]]] = Field(default=None,
                                                     alias="N_restriction")
    options: ProblemOptions = Field(default_factory=ProblemOptions)

    @model_validator(mode="after")
    def _shapes(self) -> "ProblemFile":
        if not self.matrix or not self.matrix[0]:
            raise ValueError("matrix must be nonempty")
        ncols = len(self.matrix[0])
        if any(len(row) != ncols for row in self.matrix):
            raise ValueError("matrix rows must have equal length")
        if len(self.beta) != len(self.matrix):
            raise ValueError("beta length must match the matrix row count")
        if len(self.w) != ncols:
            raise ValueError("weight length must match the matrix column count")
        for vec in (self.toric_generators or []) + (self.b_vectors or []):
            if len(vec) != ncols:
                raise ValueError("vector length must match the matrix column count")
        return self


class Pipeline:
    """Validated problem with cached derived stages.

    Per-request overrides for radius, weight cap, expansion degree, and the
    support restriction are fixed at construction; everything downstream uses
    them consistently.
    """

    def __init__(self, problem: ProblemFile, *, radius: Optional[int] = None,
                 weight_cap=None, s_degree: Optional[int] = None,
                 restriction: Optional[list[list[int]]] = None):
        self.problem = problem
        self.matrix = tuple(tuple(int(e) for e in row) for row in problem.matrix)
        self.nrows = len(self.matrix)
        self.ncols = len(self.matrix[0])
        self.beta: Vec = tuple(parse_rational(e) for e in problem.beta)
        self.w: Vec = tuple(parse_rational(e) for e in problem.w)
        require_homogeneous(self.matrix)
        self.radius = radius if radius is not None else problem.options.radius
        if self.radius < 1:
            raise InputValidationError("radius must be positive")
        cap_source = weight_cap if weight_cap is not None else problem.options.weight_cap
        self.weight_cap = parse_rational(cap_source)
        self.s_degree = s_degree if s_degree is not None else problem.options.s_degree
        raw_restriction = (restriction if restriction is not None
                           else problem.n_restriction)
        self.restriction: Optional[list[frozenset[int]]] = None
        if raw_restriction is not None:
            sets = []
            for entry in raw_restriction:
                if any(i < 1 or i > self.ncols for i in entry):
                    raise InputValidationError(
                        "restriction indices must be between 1 and the "
                        "variable count")
                sets.append(frozenset(i - 1 for i in entry))
            self.restriction = sets
        self._classifications: dict[Vec, SupportClassification] = {}

    @cached_property
    def basis(self) -> LatticeBasis:
        return kernel_lattice_basis(self.matrix, self.nrows)

    @cached_property
    def toric(self) -> tuple[Binomial, ...]:
        if self.problem.toric_generators:
            gens = []
            for vec in self.problem.toric_generators:
                if self.basis.gale_coordinates(tuple(vec)) is None:
                    raise InputValidationError(
                        f"toric generator {vec} is not in the kernel lattice")
                gens.append(Binomial.from_vector(vec))
            return tuple(gens)
        return saturate_to_toric(lattice_ideal_generators(self.basis),
                                 self.ncols)

    @cached_property
    def groebner(self) -> GroebnerBasis:
        gb = weight_groebner_basis(self.toric, self.w, self.ncols)
        report = weight_genericity_check(self.w, gb)
        if not report.ok:
            from .errors import WeightNotGenericError
            raise WeightNotGenericError(
                "weight not generic: zero weight on direction "
                f"{list(report.offending or ())}")
        return gb

    @cached_property
    def initial(self) -> MonomialIdeal:
        return initial_ideal(self.groebner)

    @cached_property
    def pairs(self) -> tuple[StandardPair, ...]:
        return standard_pairs(self.initial)

    @cached_property
    def exponents(self) -> tuple[FakeExponent, ...]:
        raw = fake_exponents(self.matrix, self.beta, self.pairs)
        return annotate_exponents(raw, self.basis, self.w, self.radius)

    @cached_property
    def system(self) -> HypergeometricSystem:
        return HypergeometricSystem(matrix=self.matrix, beta=self.beta,
                                    toric=self.groebner.elements)

    def classification(self, v: Vec, *, restricted: bool = True
                       ) -> SupportClassification:
        key = tuple(v)
        if key not in self._classifications:
            self._classifications[key] = classify_supports(
                key, self.basis, self.w, self.radius,
                self.groebner.directions)
        cls = self._classifications[key]
        if restricted and self.restriction is not None:
            cls = restrict_classification(cls, self.restriction)
        return cls

    def find_exponent(self, requested: Optional[list]) -> FakeExponent:
        """Resolve the target exponent: the requested value, or the unique
        computed one when none is given."""
        if requested is None:
            if len(self.exponents) == 1:
                return self.exponents[0]
            raise UnknownExponentError(
                "several fake exponents exist; pick one with the exponent "
                "selector", detail=[
                    [format_rational(q) for q in e.v] for e in self.exponents])
        if len(requested) != self.ncols:
            raise InputValidationError(
                "exponent selector length must match the variable count")
        target = tuple(parse_rational(e) for e in requested)
        for e in self.exponents:
            if e.v == target:
                return e
        raise UnknownExponentError(
            "no fake exponent matches the selector", detail=[
                [format_rational(q) for q in e.v] for e in self.exponents])

    def default_directions(self) -> list[list[int]]:
        if self.problem.b_vectors:
            return self.problem.b_vectors
        raise InputValidationError(
            "no perturbation directions: supply them in the problem file or "
            "on the command line")


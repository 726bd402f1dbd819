"""Perturbation constructions of logarithmic series solutions.

Both methods perturb the base exponent along kernel vectors, expand every
coefficient exactly in the perturbation variables, multiply by a prefactor
that absorbs the vanishing denominators, and read off derivatives at zero.
Method one uses a single direction and a power prefactor s^(size of the base
support minus the minimal class size); method two uses several directions
and the product of the per-coordinate linear forms over the non-core part of
the base support.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (ConditionNotMetError, DerivativeOrderError,
                     InputValidationError, PerturbationZeroError)
from .exponents import SupportClassification, negative_support
from .linalg import IntVec, Vec, as_int_vec, as_vec, dot
from .series import (LogPolynomial, LogSeries, SSeries, coefficient_expansion,
                     enumerate_class_terms, perturbation_forms)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class ConditionCertificate:
    """Rational sums whose joint vanishing unlocks the boundary derivative
    order; entries are keyed by the crossing pair that produced them."""

    entries: tuple[tuple[frozenset[int], frozenset[int], Fraction], ...]

    @property
    def all_zero(self) -> bool:
        return all(value == 0 for _, _, value in self.entries)

    def payload(self) -> list:
        return [{
            "supports": [sorted(i + 1 for i in a), sorted(i + 1 for i in b)],
            "value": str(value),
        } for a, b, value in self.entries]


def _crossing_pairs(cls: SupportClassification):
    if cls.min_crossing_size is None:
        return []
    out = []
    for i_set in sorted(cls.ns, key=lambda s: (len(s), sorted(s))):
        for j_set in sorted(cls.ns_complement, key=lambda s: (len(s), sorted(s))):
            if len(i_set | j_set) == cls.min_crossing_size:
                out.append((i_set, j_set))
    return out


def _require_lattice(basis, b: Sequence[int]) -> IntVec:
    bb = as_int_vec(b)
    if basis.gale_coordinates(bb) is None:
        raise InputValidationError(
            f"perturbation vector {list(bb)} is not in the kernel lattice")
    return bb


def _require_moves_support(v: Vec, b: IntVec) -> None:
    for i in sorted(negative_support(v)):
        if b[i] == 0:
            raise PerturbationZeroError(
                f"perturbation vanishes on coordinate {i + 1} of the negative "
                "support")


class PerturbedSum:
    """Exact expansion of a perturbed series family, ready for extraction.

    ``terms`` maps Gale coordinates to the regularized expansion of the
    corresponding coefficient: prefactor times falling-factorial ratio, a
    genuine power series once the vanishing denominators are absorbed.
    """

    def __init__(self, v: Vec, basis, w: Vec, bindings: tuple[IntVec, ...],
                 cls: SupportClassification, degree: int, weight_cap,
                 radius: int, mode: str):
        self.v = v
        self.basis = basis
        self.w = w
        self.bindings = bindings
        self.classification = cls
        self.degree = degree
        self.weight_cap = Fraction(weight_cap)
        self.radius = radius
        self.mode = mode
        self.terms: dict[IntVec, SSeries] = {}
        self.complete = True
        self._build()

    def _build(self) -> None:
        cls = self.classification
        found, complete = enumerate_class_terms(
            self.v, self.basis, self.w, cls.ns, self.weight_cap, self.radius)
        self.complete = complete
        base = cls.base_support
        core = cls.core_support
        q = len(base) - cls.min_support_size
        prefactor_coords = sorted(base - core)
        forms = perturbation_forms(self.bindings, len(self.v))
        for x in sorted(found):
            u = self.basis.lattice_vector(x)
            expansion = coefficient_expansion(self.v, self.bindings, u,
                                              self.degree)
            if expansion.series.is_zero():
                continue
            if self.mode == "power":
                scalar = _ONE
                for _, form in expansion.den_forms:
                    scalar /= form[0]
                regular = expansion.series.shifted_by(
                    q - len(expansion.den_forms), scalar)
            else:
                cancelled = {j for j, _ in expansion.den_forms}
                for j, form in expansion.den_forms:
                    if form != forms[j]:
                        raise AssertionError(
                            "denominator form differs from its prefactor factor")
                    if j not in prefactor_coords:
                        raise AssertionError(
                            "vanishing denominator outside the prefactor range")
                regular = expansion.series
                for j in prefactor_coords:
                    if j in cancelled:
                        continue
                    regular = regular.mul(
                        SSeries.affine(0, forms[j], regular.cap))
            regular = regular.truncate(self.degree)
            if not regular.is_zero():
                self.terms[x] = regular

    def extract(self, p: Sequence[int]) -> LogSeries:
        """Derivative of multi-order p at zero, as a log series."""
        pp = as_int_vec(p)
        if len(pp) != len(self.bindings):
            raise InputValidationError("derivative order length mismatch")
        if any(e < 0 for e in pp):
            raise InputValidationError("derivative orders must be nonnegative")
        if sum(pp) > self.degree:
            raise InputValidationError(
                "derivative order exceeds the expansion degree")
        nsyms = len(self.bindings)
        pfact = _ONE
        for e in pp:
            pfact *= math.factorial(e)
        terms: dict[IntVec, LogPolynomial] = {}
        for x, regular in self.terms.items():
            coeffs: dict[IntVec, Fraction] = {}
            for e, c in regular.coeffs.items():
                if any(a > b for a, b in zip(e, pp)):
                    continue
                rest = tuple(b - a for a, b in zip(e, pp))
                factor = pfact
                for r in rest:
                    factor /= math.factorial(r)
                coeffs[rest] = coeffs.get(rest, _ZERO) + factor * c
            poly = LogPolynomial(nsyms, coeffs)
            if not poly.is_zero():
                terms[x] = poly
        cap_abs = dot(self.w, self.v) + self.weight_cap
        return LogSeries(self.v, self.basis, self.w, self.bindings, terms,
                         cap_abs, self.radius, self.complete,
                         self.classification.warnings).assert_cone_supported()


def method1_condition(v: Sequence, bindings: Sequence[Sequence[int]],
                      cls: SupportClassification) -> ConditionCertificate:
    """Sums sum_i b_(I minus base) b_(J minus I) / b_(base minus I) over the
    minimal crossing pairs; all zero unlocks the boundary order."""
    vv = as_vec(v)
    base = cls.base_support
    entries = []
    for i_set, j_set in _crossing_pairs(cls):
        total = _ZERO
        for b in bindings:
            bb = as_int_vec(b)
            num = _ONE
            for idx in (i_set - base) | (j_set - i_set):
                num *= bb[idx]
            den = _ONE
            for idx in base - i_set:
                den *= bb[idx]
            if den == 0:
                raise PerturbationZeroError(
                    "condition sum needs the perturbation nonzero on the base "
                    "support")
            total += Fraction(num, 1) / den
        entries.append((i_set, j_set, total))
    return ConditionCertificate(tuple(entries))


def method2_condition(v: Sequence, bindings: Sequence[Sequence[int]],
                      cls: SupportClassification, p: Sequence[int]
                      ) -> ConditionCertificate:
    """Partition sums over the minimal crossing pairs: assign the crossing
    coordinates (outside the core) to the directions with multiplicities p;
    all zero unlocks the boundary order."""
    pp = as_int_vec(p)
    l = len(bindings)
    bs = [as_int_vec(b) for b in bindings]
    entries = []
    for i_set, j_set in _crossing_pairs(cls):
        coords = sorted((i_set | j_set) - cls.core_support)
        total = _ZERO
        if len(coords) == sum(pp):
            for assignment in itertools.product(range(l), repeat=len(coords)):
                counts = [0] * l
                for slot in assignment:
                    counts[slot] += 1
                if counts != list(pp):
                    continue
                prod = _ONE
                for idx, slot in zip(coords, assignment):
                    prod *= bs[slot][idx]
                total += prod
        entries.append((i_set, j_set, total))
    return ConditionCertificate(tuple(entries))


def frobenius_method1(v: Sequence, b: Sequence[int], cls: SupportClassification,
                      j: int, weight_cap, radius: int, *,
                      degree: Optional[int] = None) -> LogSeries:
    """Single-direction solution: derivative order j of the power-prefactored
    perturbed sum, valid strictly below the crossing bound."""
    vv = as_vec(v)
    bb = _require_lattice(cls.basis, b)
    _require_moves_support(vv, bb)
    if j < 0:
        raise DerivativeOrderError("derivative order must be nonnegative")
    bound = cls.derivative_bound()
    if bound is not None and j >= bound:
        raise DerivativeOrderError(
            f"derivative order {j} is out of range: orders up to {bound - 1} "
            "are guaranteed; the boundary order needs the combined "
            "construction with vanishing condition sums")
    target = max(j, degree) if degree is not None else j
    family = PerturbedSum(vv, cls.basis, as_vec(cls.w), (bb,), cls, target,
                          weight_cap, radius, "power")
    return family.extract((j,))


def frobenius_method1_extra(v: Sequence, bindings: Sequence[Sequence[int]],
                            cls: SupportClassification, weight_cap,
                            radius: int) -> tuple[LogSeries, ConditionCertificate]:
    """Boundary-order solution from a combination of directions whose
    condition sums vanish."""
    vv = as_vec(v)
    bs = tuple(_require_lattice(cls.basis, b) for b in bindings)
    if not bs:
        raise InputValidationError("at least one perturbation vector is needed")
    for b in bs:
        _require_moves_support(vv, b)
    if cls.min_crossing_size is None:
        raise DerivativeOrderError(
            "no crossing bound: every achieved support is weight-positive, "
            "so no boundary order exists")
    certificate = method1_condition(vv, bs, cls)
    if not certificate.all_zero:
        raise ConditionNotMetError(
            "condition sums do not vanish for the supplied directions",
            detail=certificate.payload())
    j = cls.derivative_bound()
    assert j is not None
    combined: Optional[LogSeries] = None
    for slot, b in enumerate(bs):
        family = PerturbedSum(vv, cls.basis, as_vec(cls.w), (b,), cls, j,
                              weight_cap, radius, "power")
        piece = family.extract((j,)).embedded(bs, slot)
        combined = piece if combined is None else combined.add(piece)
    assert combined is not None
    return combined, certificate


def frobenius_method2(v: Sequence, bindings: Sequence[Sequence[int]],
                      cls: SupportClassification, p: Sequence[int],
                      weight_cap, radius: int, *, degree: Optional[int] = None
                      ) -> tuple[LogSeries, Optional[ConditionCertificate]]:
    """Multi-direction solution: derivative of multi-order p of the
    factor-prefactored perturbed sum.

    Orders with total below the crossing bound minus the core size are
    guaranteed; the boundary total additionally needs vanishing partition
    sums, returned as the certificate."""
    vv = as_vec(v)
    bs = tuple(_require_lattice(cls.basis, b) for b in bindings)
    if not bs:
        raise InputValidationError("at least one perturbation vector is needed")
    pp = as_int_vec(p)
    if len(pp) != len(bs):
        raise InputValidationError(
            "derivative multi-order length must match the direction count")
    for i in sorted(negative_support(vv)):
        if all(b[i] == 0 for b in bs):
            raise PerturbationZeroError(
                f"no direction moves coordinate {i + 1} of the negative support")
    total = sum(pp)
    certificate: Optional[ConditionCertificate] = None
    if cls.min_crossing_size is not None:
        bound = cls.min_crossing_size - len(cls.core_support)
        if total > bound:
            raise DerivativeOrderError(
                f"derivative total {total} is out of range: totals below "
                f"{bound} are guaranteed, {bound} only with vanishing "
                "partition sums")
        if total == bound:
            certificate = method2_condition(vv, bs, cls, pp)
            if not certificate.all_zero:
                raise ConditionNotMetError(
                    "partition sums do not vanish for the supplied directions "
                    "and orders", detail=certificate.payload())
    if cls.min_crossing_size is not None:
        default_degree = cls.min_crossing_size - len(cls.core_support)
    else:
        default_degree = total
    target = max(total, degree if degree is not None else default_degree)
    family = PerturbedSum(vv, cls.basis, as_vec(cls.w), bs, cls, target,
                          weight_cap, radius, "factor")
    return family.extract(pp), certificate


def starting_monomials(series_list: Sequence[LogSeries]) -> list[str]:
    """Distinct starting monomials across constructed solutions, a cheap
    linear-independence witness."""
    seen = []
    for s in series_list:
        mono = s.starting_monomial()
        if mono is not None and mono not in seen:
            seen.append(mono)
    return seen

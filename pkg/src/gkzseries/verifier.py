"""Symbolic application of the system's operators to a truncated series.

Differentiation acts exactly on terms c x^alpha (log x^b1)^m1 ...; binomial
operators subtract two derivative cascades after rebasing to a common
exponent; the homogeneity operators act term-by-term without shifting
exponents. A truncated series cannot vanish under a binomial beyond its
certified region, so the verdict only inspects residual terms whose weight
stays below the cap minus the operator margin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import IntVec, Vec, as_int_vec, as_vec, dot, vec_sub
from .series import LogPolynomial, LogSeries
from .toric import Binomial

_ZERO = Fraction(0)


@dataclass(frozen=True)
class HypergeometricSystem:
    """Matrix, parameter, and toric generators; rows give the homogeneity
    operators, binomials the toric ones."""

    matrix: tuple[IntVec, ...]
    beta: Vec
    toric: tuple[Binomial, ...]

    @property
    def nvars(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


def apply_derivative(series: LogSeries, j: int) -> LogSeries:
    """Exact partial derivative in variable j.

    Terms keep their Gale coordinates; the base exponent drops by e_j and the
    certified cap drops by the weight of variable j.
    """
    new_v = list(series.v)
    new_v[j] -= 1
    binding_col = [b[j] for b in series.bindings]
    terms: dict[IntVec, LogPolynomial] = {}
    for x, poly in series.terms.items():
        alpha = series.exponent_of(x)[j]
        out = poly.scale(alpha)
        for k, bj in enumerate(binding_col):
            if bj:
                out = out.add(poly.lower(k).scale(bj))
        if not out.is_zero():
            terms[x] = out
    return LogSeries(tuple(new_v), series.basis, series.w, series.bindings,
                     terms, series.weight_cap_abs - series.w[j], series.radius,
                     series.complete, series.warnings)


def apply_monomial_derivative(series: LogSeries, monomial: Sequence[int]) -> LogSeries:
    out = series
    for j, e in enumerate(as_int_vec(monomial)):
        for _ in range(e):
            out = apply_derivative(out, j)
    return out


def apply_binomial(series: LogSeries, g: Binomial) -> LogSeries:
    """Residual of the binomial operator: both cascades, rebased, subtracted."""
    left = apply_monomial_derivative(series, g.plus)
    right = apply_monomial_derivative(series, g.minus)
    return left.add(right.rebase(left.v).scale(-1))


def apply_homogeneity(series: LogSeries, row: Sequence[int], beta_i) -> LogSeries:
    """Residual of sum_j a_j x_j d_j - beta_i; exponents do not shift."""
    rr = as_int_vec(row)
    target = Fraction(beta_i)
    binding_weights = [dot(rr, b) for b in series.bindings]
    terms: dict[IntVec, LogPolynomial] = {}
    for x, poly in series.terms.items():
        scalar = dot(rr, series.exponent_of(x)) - target
        out = poly.scale(scalar)
        for k, bw in enumerate(binding_weights):
            if bw:
                out = out.add(poly.lower(k).scale(bw))
        if not out.is_zero():
            terms[x] = out
    return LogSeries(series.v, series.basis, series.w, series.bindings, terms,
                     series.weight_cap_abs, series.radius, series.complete,
                     series.warnings)


@dataclass(frozen=True)
class OperatorReport:
    kind: str                      # "toric" / "homogeneity"
    label: str
    passed: bool
    excluded_terms: int            # nonzero residual terms above the cap
    witness_exponent: Optional[tuple[str, ...]] = None
    witness_poly: Optional[str] = None


@dataclass(frozen=True)
class ResidualReport:
    passed: bool
    margin: Fraction
    certified_cap: Fraction
    complete: bool
    operators: tuple[OperatorReport, ...]
    warnings: tuple[str, ...] = ()


def operator_margin(system: HypergeometricSystem, w: Sequence) -> Fraction:
    """Largest weight of an initial monomial across the toric operators; the
    certified region shrinks by this much under one operator pass."""
    ww = as_vec(w)
    weights = [dot(ww, g.plus) for g in system.toric]
    return max(weights) if weights else _ZERO


def verify(series: LogSeries, system: HypergeometricSystem, *,
           margin: Optional[Fraction] = None) -> ResidualReport:
    """Check annihilation by every operator of the system.

    Toric residuals must vanish at all weights up to the certified cap minus
    the margin; residual terms above that are reported as excluded, not as
    failures. Homogeneity residuals must vanish identically.
    """
    used_margin = operator_margin(system, series.w) if margin is None else Fraction(margin)
    certified = series.weight_cap_abs - used_margin
    reports: list[OperatorReport] = []

    for g in system.toric:
        residual = apply_binomial(series, g)
        reports.append(_residual_report("toric", g.display(), residual,
                                        certified))
    for i, row in enumerate(system.matrix):
        residual = apply_homogeneity(series, row, system.beta[i])
        label = ("theta(" + ",".join(str(a) for a in row) + ") - "
                 + str(system.beta[i]))
        reports.append(_residual_report("homogeneity", label, residual, None))

    passed = all(r.passed for r in reports)
    return ResidualReport(passed=passed, margin=used_margin,
                          certified_cap=certified, complete=series.complete,
                          operators=tuple(reports), warnings=series.warnings)


def _residual_report(kind: str, label: str, residual: LogSeries,
                     cap: Optional[Fraction]) -> OperatorReport:
    excluded = 0
    witness: Optional[tuple] = None
    for x, poly in residual.sorted_items():
        weight = dot(residual.w, residual.exponent_of(x))
        if cap is not None and weight > cap:
            excluded += 1
            continue
        if witness is None:
            witness = (tuple(str(q) for q in residual.exponent_of(x)),
                       repr(poly))
    if witness is None:
        return OperatorReport(kind, label, True, excluded)
    return OperatorReport(kind, label, False, excluded,
                          witness_exponent=witness[0], witness_poly=witness[1])

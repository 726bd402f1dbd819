"""Exact truncated series: log-coefficient polynomials, perturbation-variable
expansions, and the series object keyed by Gale coordinates.

A series here is a finite sum  sum_u  g_u(log x) x^{v+u}  with u ranging over
kernel-lattice vectors recorded by their Gale coordinates and g_u a rational
polynomial in the formal symbols log x^{b} attached to the binding vectors.
Truncation is by weight (w.u bounded) and by the enumeration radius; a series
carries an absolute certified weight cap and a completeness flag meaning
every true term up to the cap is present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputValidationError, PerturbationZeroError
from .exponents import (SupportClassification, negative_support,
                        support_region)
from .linalg import (IntVec, LatticeBasis, Vec, as_int_vec, as_vec, dot,
                     vec_add, vec_sub)
from .polyhedra import Constraint, Unbounded, box_points, is_empty, lattice_points
from .toric import in_cone

_ZERO = Fraction(0)
_ONE = Fraction(1)


def falling_factorial(v: Sequence, u: Sequence[int]) -> Fraction:
    """prod_j v_j (v_j - 1) ... (v_j - u_j + 1) over nonnegative u."""
    out = _ONE
    for base, steps in zip(v, u):
        if steps < 0:
            raise ValueError("falling factorial needs nonnegative steps")
        b = Fraction(base)
        for t in range(steps):
            out *= (b - t)
    return out


class LogPolynomial:
    """Polynomial in the formal log symbols, exact rational coefficients."""

    __slots__ = ("nsyms", "coeffs")

    def __init__(self, nsyms: int, coeffs: Optional[dict] = None):
        self.nsyms = nsyms
        self.coeffs: dict[IntVec, Fraction] = {}
        if coeffs:
            for expo, c in coeffs.items():
                q = Fraction(c)
                if q != 0:
                    self.coeffs[tuple(expo)] = q

    @classmethod
    def constant(cls, nsyms: int, c) -> "LogPolynomial":
        return cls(nsyms, {(0,) * nsyms: Fraction(c)})

    @classmethod
    def monomial(cls, nsyms: int, expo: Sequence[int], c) -> "LogPolynomial":
        return cls(nsyms, {tuple(expo): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Optional[int]:
        if not self.coeffs:
            return None
        return max(sum(e) for e in self.coeffs)

    def add(self, other: "LogPolynomial") -> "LogPolynomial":
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            out[expo] = out.get(expo, _ZERO) + c
        return LogPolynomial(self.nsyms, out)

    def scale(self, c) -> "LogPolynomial":
        q = Fraction(c)
        if q == 0:
            return LogPolynomial(self.nsyms)
        return LogPolynomial(self.nsyms,
                             {e: q * v for e, v in self.coeffs.items()})

    def lower(self, k: int) -> "LogPolynomial":
        """Formal derivative in symbol k: m ell^m -> m_k ell^{m - e_k}."""
        out: dict[IntVec, Fraction] = {}
        for expo, c in self.coeffs.items():
            if expo[k] == 0:
                continue
            new = list(expo)
            new[k] -= 1
            key = tuple(new)
            out[key] = out.get(key, _ZERO) + c * expo[k]
        return LogPolynomial(self.nsyms, out)

    def top_component(self) -> dict[IntVec, Fraction]:
        d = self.degree
        if d is None:
            return {}
        return {e: c for e, c in self.coeffs.items() if sum(e) == d}

    def lex_leading(self) -> Optional[tuple[IntVec, Fraction]]:
        if not self.coeffs:
            return None
        expo = max(self.coeffs)
        return expo, self.coeffs[expo]

    def canonical(self, bindings: Sequence[IntVec]) -> tuple:
        """Key each monomial by the multiset of (binding vector, power); lets
        polynomials over different binding tuples compare semantically."""
        items = []
        for expo, c in self.coeffs.items():
            merged: dict[IntVec, int] = {}
            for k, p in enumerate(expo):
                if p:
                    b = tuple(bindings[k])
                    merged[b] = merged.get(b, 0) + p
            key = tuple(sorted(merged.items()))
            items.append((key, c))
        folded: dict[tuple, Fraction] = {}
        for key, c in items:
            folded[key] = folded.get(key, _ZERO) + c
        return tuple(sorted((k, v) for k, v in folded.items() if v != 0))

    def sorted_items(self) -> list[tuple[IntVec, Fraction]]:
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        return (isinstance(other, LogPolynomial)
                and self.nsyms == other.nsyms and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for expo, c in self.sorted_items():
            mon = "*".join(f"L{k + 1}^{p}" if p > 1 else f"L{k + 1}"
                           for k, p in enumerate(expo) if p)
            parts.append(f"{c}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


class SSeries:
    """Truncated power series in the perturbation variables.

    Coefficients live on multi-exponents of total degree at most ``cap``;
    operations truncate to the smaller cap of their operands.
    """

    __slots__ = ("nvars", "cap", "coeffs")

    def __init__(self, nvars: int, cap: int, coeffs: Optional[dict] = None):
        self.nvars = nvars
        self.cap = cap
        self.coeffs: dict[IntVec, Fraction] = {}
        if coeffs:
            for expo, c in coeffs.items():
                q = Fraction(c)
                if q != 0 and sum(expo) <= cap:
                    self.coeffs[tuple(expo)] = q

    @classmethod
    def zero(cls, nvars: int, cap: int) -> "SSeries":
        return cls(nvars, cap)

    @classmethod
    def one(cls, nvars: int, cap: int) -> "SSeries":
        return cls(nvars, cap, {(0,) * nvars: _ONE})

    @classmethod
    def affine(cls, constant, form: Sequence, cap: int) -> "SSeries":
        """constant + sum_k form_k s_k."""
        nvars = len(form)
        coeffs: dict[IntVec, Fraction] = {(0,) * nvars: Fraction(constant)}
        for k, c in enumerate(form):
            e = [0] * nvars
            e[k] = 1
            coeffs[tuple(e)] = Fraction(c)
        return cls(nvars, cap, coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self) -> Optional[int]:
        if not self.coeffs:
            return None
        return min(sum(e) for e in self.coeffs)

    def coeff(self, expo: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(expo), _ZERO)

    def add(self, other: "SSeries") -> "SSeries":
        cap = min(self.cap, other.cap)
        out = {e: c for e, c in self.coeffs.items() if sum(e) <= cap}
        for e, c in other.coeffs.items():
            if sum(e) <= cap:
                out[e] = out.get(e, _ZERO) + c
        return SSeries(self.nvars, cap, out)

    def scale(self, c) -> "SSeries":
        q = Fraction(c)
        return SSeries(self.nvars, self.cap,
                       {e: q * v for e, v in self.coeffs.items()})

    def mul(self, other: "SSeries") -> "SSeries":
        cap = min(self.cap, other.cap)
        out: dict[IntVec, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > cap:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, _ZERO) + c1 * c2
        return SSeries(self.nvars, cap, out)

    def truncate(self, cap: int) -> "SSeries":
        return SSeries(self.nvars, cap, self.coeffs)

    def invert_affine(self, constant: Fraction, form: Sequence) -> "SSeries":
        """Multiply by (constant + form.s)^-1 for a nonzero constant."""
        if constant == 0:
            raise ZeroDivisionError("affine factor has zero constant term")
        lin = SSeries.affine(0, [Fraction(f) / constant for f in form], self.cap)
        inv = SSeries.one(self.nvars, self.cap)
        power = SSeries.one(self.nvars, self.cap)
        for _ in range(self.cap):
            power = power.mul(lin).scale(-1)
            if power.is_zero():
                break
            inv = inv.add(power)
        return self.mul(inv).scale(_ONE / constant)

    def shifted_by(self, offset: int, scalar: Fraction) -> "SSeries":
        """Multiply by scalar * s^offset in a single variable; negative
        offsets must not push any term below degree zero."""
        if self.nvars != 1:
            raise ValueError("degree shift is single-variable only")
        out: dict[IntVec, Fraction] = {}
        for (e,), c in self.coeffs.items():
            t = e + offset
            if t < 0:
                raise ArithmeticError(
                    "regularity violated: pole survives the prefactor")
            if t <= self.cap:
                out[(t,)] = scalar * c
        return SSeries(1, self.cap, out)

    def sorted_items(self) -> list[tuple[IntVec, Fraction]]:
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        return (isinstance(other, SSeries) and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        return f"SSeries({self.nvars}, cap={self.cap}, {dict(self.sorted_items())})"


@dataclass(frozen=True)
class LaurentExpansion:
    """Expansion of a falling-factorial ratio around s = 0.

    ``den_forms`` lists the denominator factors with zero constant term, kept
    symbolic as (coordinate, linear form); ``series`` is the expansion of the
    remaining regular part to total degree ``series.cap``.
    """

    den_forms: tuple[tuple[int, Vec], ...]
    series: SSeries
    target_degree: int

    def pole_order(self) -> int:
        return len(self.den_forms)

    def order(self) -> Optional[int]:
        o = self.series.order()
        if o is None:
            return None
        return o - len(self.den_forms)


def perturbation_forms(bindings: Sequence[Sequence[int]], n: int) -> list[Vec]:
    """Per-coordinate linear forms lambda_j = sum_k b^(k)_j s_k."""
    return [as_vec([b[j] for b in bindings]) for j in range(n)]


def coefficient_expansion(v: Sequence, bindings: Sequence[Sequence[int]],
                          u: Sequence[int], degree: int) -> LaurentExpansion:
    """Expand the series coefficient at offset u for the perturbed exponent
    v + sum_k s_k b^(k).

    The coefficient is [v']_{u_-} / [v' + u]_{u_+} with v' the perturbed
    exponent; factors whose constant part vanishes are exactly the
    coordinates whose negativity the translate repairs (denominator) or
    creates (numerator). Denominator zero-constant factors stay symbolic.
    """
    vv = as_vec(v)
    uu = as_int_vec(u)
    n = len(vv)
    lam = perturbation_forms(bindings, n)
    nvars = len(bindings)

    den_sym: list[tuple[int, Vec]] = []
    den_count = len(negative_support(vv) - negative_support(vec_add(vv, uu)))
    cap = degree + den_count

    series = SSeries.one(nvars, cap)
    pending_inverses: list[tuple[Fraction, Vec]] = []
    for j in range(n):
        steps_num = max(-uu[j], 0)
        steps_den = max(uu[j], 0)
        for t in range(steps_num):
            constant = vv[j] - t
            if constant == 0:
                if all(c == 0 for c in lam[j]):
                    return LaurentExpansion((), SSeries.zero(nvars, degree), degree)
                series = series.mul(SSeries.affine(0, lam[j], cap))
            else:
                series = series.mul(SSeries.affine(constant, lam[j], cap))
        for t in range(steps_den):
            constant = vv[j] + uu[j] - t
            if constant == 0:
                if all(c == 0 for c in lam[j]):
                    raise PerturbationZeroError(
                        f"perturbation vanishes on coordinate {j + 1}, whose "
                        "factor must supply the vanishing denominator")
                den_sym.append((j, lam[j]))
            else:
                pending_inverses.append((Fraction(constant), lam[j]))
    for constant, form in pending_inverses:
        series = series.invert_affine(constant, form)
    if len(den_sym) != den_count:
        raise AssertionError("denominator bookkeeping mismatch")
    return LaurentExpansion(tuple(sorted(den_sym, key=lambda t: t[0])),
                            series, degree)


class LogSeries:
    """Finite exact series  sum_u g_u(log) x^{v+u}  keyed by Gale coordinates.

    ``weight_cap_abs`` bounds w.(v+u) for certified completeness; ``complete``
    asserts every true term with weight under the cap is present.
    """

    def __init__(self, v: Sequence, basis: LatticeBasis, w: Sequence,
                 bindings: Sequence[Sequence[int]],
                 terms: dict, weight_cap_abs: Fraction, radius: int,
                 complete: bool, warnings: Sequence[str] = ()):
        self.v = as_vec(v)
        self.basis = basis
        self.w = as_vec(w)
        self.bindings = tuple(as_int_vec(b) for b in bindings)
        self.terms: dict[IntVec, LogPolynomial] = {
            tuple(x): poly for x, poly in terms.items() if not poly.is_zero()}
        self.weight_cap_abs = Fraction(weight_cap_abs)
        self.radius = radius
        self.complete = complete
        self.warnings = tuple(warnings)

    def assert_cone_supported(self) -> "LogSeries":
        """Builders call this: every offset must be weight-positive or zero."""
        wcols = [dot(self.w, col) for col in self.basis.columns]
        for x in self.terms:
            shift = sum(c * xi for c, xi in zip(wcols, x))
            if any(x) and shift <= 0:
                raise AssertionError(
                    f"term at Gale coordinates {x} is not weight-positive")
        return self

    @property
    def nsyms(self) -> int:
        return len(self.bindings)

    def exponent_of(self, x: Sequence[int]) -> Vec:
        return tuple(a + b for a, b in zip(self.v, self.basis.lattice_vector(x)))

    def weight_of(self, x: Sequence[int]) -> Fraction:
        return dot(self.w, self.exponent_of(x))

    @property
    def max_log_degree(self) -> int:
        degrees = [p.degree for p in self.terms.values() if p.degree is not None]
        return max(degrees) if degrees else 0

    def starting_monomial(self) -> Optional[str]:
        """Display form of x^v times the lex-leading log monomial at u = 0."""
        origin = (0,) * self.basis.k
        poly = self.terms.get(origin)
        if poly is None or poly.is_zero():
            return None
        expo, coeff = poly.lex_leading()
        parts = [f"{coeff}"] if coeff != 1 else []
        xs = "*".join(f"x{i + 1}^{q}" if q != 1 else f"x{i + 1}"
                      for i, q in enumerate(self.v) if q != 0)
        if xs:
            parts.append(xs)
        for k, p in enumerate(expo):
            if p:
                b = self.bindings[k]
                mono = "*".join(f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}"
                                for i, e in enumerate(b) if e != 0)
                term = f"log({mono})"
                parts.append(term if p == 1 else f"{term}^{p}")
        if not parts:
            parts = ["1"]
        return "*".join(parts)

    def scale(self, c) -> "LogSeries":
        q = Fraction(c)
        return LogSeries(self.v, self.basis, self.w, self.bindings,
                         {x: p.scale(q) for x, p in self.terms.items()},
                         self.weight_cap_abs, self.radius, self.complete,
                         self.warnings)

    def add(self, other: "LogSeries") -> "LogSeries":
        if self.v != other.v or self.bindings != other.bindings:
            raise InputValidationError(
                "series addition needs matching base exponent and bindings")
        terms = {x: p for x, p in self.terms.items()}
        for x, p in other.terms.items():
            terms[x] = terms[x].add(p) if x in terms else p
        return LogSeries(self.v, self.basis, self.w, self.bindings, terms,
                         min(self.weight_cap_abs, other.weight_cap_abs),
                         min(self.radius, other.radius),
                         self.complete and other.complete,
                         self.warnings + other.warnings)

    def rebase(self, new_v: Sequence) -> "LogSeries":
        """Re-key the terms against another base exponent in the same coset."""
        nv = as_vec(new_v)
        delta = self.basis.gale_coordinates(vec_sub(self.v, nv))
        if delta is None:
            raise InputValidationError(
                "cannot rebase: exponents differ by a non-lattice vector")
        terms = {tuple(a + b for a, b in zip(x, delta)): p
                 for x, p in self.terms.items()}
        return LogSeries(nv, self.basis, self.w, self.bindings, terms,
                         self.weight_cap_abs, self.radius, self.complete,
                         self.warnings)

    def embedded(self, bindings: Sequence[Sequence[int]], slot: int) -> "LogSeries":
        """Relabel a single-symbol series into slot ``slot`` of a larger
        binding tuple (the remaining symbols never occur)."""
        if self.nsyms != 1:
            raise InputValidationError("embedding expects a single log symbol")
        full = tuple(as_int_vec(b) for b in bindings)
        if full[slot] != self.bindings[0]:
            raise InputValidationError("binding mismatch at the embedded slot")
        nsyms = len(full)
        terms = {}
        for x, poly in self.terms.items():
            coeffs = {}
            for (t,), c in poly.coeffs.items():
                e = [0] * nsyms
                e[slot] = t
                coeffs[tuple(e)] = c
            terms[x] = LogPolynomial(nsyms, coeffs)
        return LogSeries(self.v, self.basis, self.w, full, terms,
                         self.weight_cap_abs, self.radius, self.complete,
                         self.warnings)

    def canonical_terms(self) -> dict[Vec, tuple]:
        """Terms keyed by absolute exponent with binding-canonical polys."""
        out = {}
        for x, poly in self.terms.items():
            out[self.exponent_of(x)] = poly.canonical(self.bindings)
        return out

    def equal_on_common_region(self, other: "LogSeries") -> bool:
        """Exact equality of all terms below both certified caps.

        Requires both series complete; compares by absolute exponent so the
        two sides may be based at different exponents of the same coset.
        """
        if not (self.complete and other.complete):
            return False
        cap = min(self.weight_cap_abs, other.weight_cap_abs)
        mine = {e: p for e, p in self.canonical_terms().items()
                if dot(self.w, e) <= cap}
        theirs = {e: p for e, p in other.canonical_terms().items()
                  if dot(other.w, e) <= cap}
        return mine == theirs

    def sorted_items(self) -> list[tuple[IntVec, LogPolynomial]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        return (f"LogSeries(v={tuple(map(str, self.v))}, "
                f"terms={len(self.terms)}, cap={self.weight_cap_abs}, "
                f"complete={self.complete})")


def enumerate_class_terms(v: Sequence, basis: LatticeBasis, w: Sequence,
                          supports: Iterable[frozenset[int]], weight_cap,
                          radius: int) -> tuple[dict[IntVec, frozenset[int]], bool]:
    """Gale points of the chosen support classes inside the weight slab and
    the radius box, plus a completeness flag.

    Complete means: for every class, the slab portion of the class region
    lies inside the box, so no true term under the cap was cut off.
    """
    vv = as_vec(v)
    ww = as_vec(w)
    k = basis.k
    weight_row = as_vec([dot(ww, col) for col in basis.columns])
    cap = Fraction(weight_cap)
    found: dict[IntVec, frozenset[int]] = {}
    complete = True
    for support in sorted(supports, key=lambda s: (len(s), sorted(s))):
        region = support_region(vv, basis, support)
        slab = region + [Constraint(weight_row, cap)]
        for x in box_points(slab, k, radius):
            found[x] = support
        for i in range(k):
            for sign in (1, -1):
                e = [_ZERO] * k
                e[i] = Fraction(-sign)
                beyond = slab + [Constraint(tuple(e), Fraction(-(radius + 1)))]
                if not is_empty(beyond, k):
                    complete = False
    return found, complete


def phi_series(v: Sequence, basis: LatticeBasis, w: Sequence, weight_cap,
               radius: int, *, directions: Optional[Sequence] = None,
               warnings: Sequence[str] = ()) -> LogSeries:
    """The log-free series with unit leading coefficient at x^v.

    Terms run over translates keeping the negative support of v, filtered to
    the direction monoid when directions are given and to the weight-positive
    halfspace otherwise; for an exponent with minimal negative support the
    whole class passes either filter. Each coefficient is the
    falling-factorial ratio, with the convention coefficient 1 at u = 0.
    """
    vv = as_vec(v)
    base = negative_support(vv)
    found, complete = enumerate_class_terms(vv, basis, w, [base], weight_cap,
                                            radius)
    ww = as_vec(w)
    terms: dict[IntVec, LogPolynomial] = {}
    for x in sorted(found):
        u = basis.lattice_vector(x)
        if directions is not None:
            if not in_cone(u, directions, ww):
                continue
        elif any(u) and dot(ww, u) <= 0:
            continue
        u_plus = tuple(max(e, 0) for e in u)
        u_minus = tuple(max(-e, 0) for e in u)
        num = falling_factorial(vv, u_minus)
        den = falling_factorial(vec_add(vv, u), u_plus)
        if den == 0:
            raise AssertionError(
                "zero denominator inside an equal-support class")
        terms[x] = LogPolynomial.constant(0, num / den)
    cap_abs = dot(ww, vv) + Fraction(weight_cap)
    return LogSeries(vv, basis, w, (), terms, cap_abs, radius, complete,
                     warnings).assert_cone_supported()

"""Exact rational halfspace systems and Fourier-Motzkin elimination.

Used to certify emptiness of sign-pattern regions, to enumerate the lattice
points of bounded regions exhaustively, and to place sample points inside
full-dimensional faces. All comparisons are exact over Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import RegionLimitError
from .linalg import Vec, as_vec

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Constraint:
    """coeffs . x <= bound, strict when flagged."""

    coeffs: Vec
    bound: Fraction
    strict: bool = False

    @classmethod
    def of(cls, coeffs: Sequence, bound, strict: bool = False) -> "Constraint":
        return cls(as_vec(coeffs), Fraction(bound), strict)

    def holds(self, x: Sequence) -> bool:
        value = sum(c * Fraction(v) for c, v in zip(self.coeffs, x))
        return value < self.bound if self.strict else value <= self.bound


class Unbounded(Exception):
    """Raised when an enumeration target has an unbounded coordinate."""


def eliminate(constraints: Sequence[Constraint], i: int) -> list[Constraint]:
    """Project out variable i, keeping the remaining coordinates in place."""
    zero, pos, neg = [], [], []
    for c in constraints:
        if c.coeffs[i] > 0:
            pos.append(c)
        elif c.coeffs[i] < 0:
            neg.append(c)
        else:
            zero.append(c)
    out = list(zero)
    for p in pos:
        for q in neg:
            a, b = p.coeffs[i], -q.coeffs[i]
            coeffs = tuple(b * pc + a * qc for pc, qc in zip(p.coeffs, q.coeffs))
            bound = b * p.bound + a * q.bound
            out.append(Constraint(coeffs, bound, p.strict or q.strict))
    return out


def is_empty(constraints: Sequence[Constraint], nvars: int) -> bool:
    """Exact emptiness of the real solution set."""
    work = list(constraints)
    for i in range(nvars):
        work = eliminate(work, i)
    for c in work:
        if c.bound < 0 or (c.strict and c.bound == 0):
            return True
    return False


@dataclass(frozen=True)
class Interval:
    lo: Optional[Fraction]
    lo_strict: bool
    hi: Optional[Fraction]
    hi_strict: bool
    empty: bool = False


def variable_interval(constraints: Sequence[Constraint], nvars: int, i: int) -> Interval:
    """Exact projection of the region onto coordinate i."""
    work = list(constraints)
    for j in range(nvars):
        if j != i:
            work = eliminate(work, j)
    lo: Optional[Fraction] = None
    lo_strict = False
    hi: Optional[Fraction] = None
    hi_strict = False
    for c in work:
        coeff = c.coeffs[i]
        if coeff == 0:
            if c.bound < 0 or (c.strict and c.bound == 0):
                return Interval(None, False, None, False, empty=True)
            continue
        value = c.bound / coeff
        if coeff > 0:
            if hi is None or value < hi or (value == hi and c.strict):
                hi, hi_strict = value, c.strict
        else:
            if lo is None or value > lo or (value == lo and c.strict):
                lo, lo_strict = value, c.strict
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and (lo_strict or hi_strict)):
            return Interval(None, False, None, False, empty=True)
    return Interval(lo, lo_strict, hi, hi_strict)


def _int_floor(q: Fraction, strict: bool) -> int:
    # greatest integer satisfying x <= q (or < q)
    f = q.numerator // q.denominator
    if strict and q == f:
        return f - 1
    return f


def _int_ceil(q: Fraction, strict: bool) -> int:
    f = -((-q.numerator) // q.denominator)
    if strict and q == f:
        return f + 1
    return f


def _substitute(constraints: Sequence[Constraint], i: int, value: Fraction) -> list[Constraint]:
    out = []
    for c in constraints:
        coeffs = list(c.coeffs)
        shift = coeffs[i] * value
        coeffs[i] = _ZERO
        out.append(Constraint(tuple(coeffs), c.bound - shift, c.strict))
    return out


def lattice_points(constraints: Sequence[Constraint], nvars: int, *,
                   limit: int = 200000) -> list[tuple[int, ...]]:
    """All integer points of the region, sorted; raises Unbounded when any
    coordinate projection is unbounded, RegionLimitError past the limit."""
    points: list[tuple[int, ...]] = []
    budget = [limit]

    def rec(cons: Sequence[Constraint], i: int, prefix: tuple[int, ...]) -> None:
        if i == nvars:
            if not is_empty(cons, nvars):
                points.append(prefix)
            return
        iv = variable_interval(cons, nvars, i)
        if iv.empty:
            return
        if iv.lo is None or iv.hi is None:
            raise Unbounded(f"coordinate {i} unbounded")
        lo = _int_ceil(iv.lo, iv.lo_strict)
        hi = _int_floor(iv.hi, iv.hi_strict)
        for value in range(lo, hi + 1):
            budget[0] -= 1
            if budget[0] < 0:
                raise RegionLimitError(f"region enumeration limit {limit} exceeded")
            rec(_substitute(cons, i, Fraction(value)), i + 1, prefix + (value,))

    rec(list(constraints), 0, ())
    return sorted(points)


def box_points(constraints: Sequence[Constraint], nvars: int, radius: int,
               *, limit: int = 500000) -> list[tuple[int, ...]]:
    """Integer points of the region inside [-radius, radius]^n, sorted."""
    box = list(constraints)
    for i in range(nvars):
        e = [_ZERO] * nvars
        e[i] = Fraction(1)
        box.append(Constraint(tuple(e), Fraction(radius)))
        e2 = [_ZERO] * nvars
        e2[i] = Fraction(-1)
        box.append(Constraint(tuple(e2), Fraction(radius)))
    return lattice_points(box, nvars, limit=limit)


def find_lattice_point(constraints: Sequence[Constraint], nvars: int, radius: int,
                       *, exclude_origin: bool = False
                       ) -> tuple[str, Optional[tuple[int, ...]]]:
    """Search for an integer point; status is one of
    ``found`` / ``certified-none`` / ``unknown``.

    The certified branch uses real emptiness or bounded exhaustion; the
    unknown branch means the region is unbounded and the box scan at the
    given radius found nothing.
    """
    origin = (0,) * nvars
    if is_empty(constraints, nvars):
        return ("certified-none", None)
    try:
        pts = lattice_points(constraints, nvars)
        if exclude_origin:
            pts = [p for p in pts if p != origin]
        if pts:
            return ("found", pts[0])
        return ("certified-none", None)
    except Unbounded:
        pts = box_points(constraints, nvars, radius)
        if exclude_origin:
            pts = [p for p in pts if p != origin]
        if pts:
            return ("found", pts[0])
        return ("unknown", None)


def _primitive_integer_row(coeffs: Vec) -> tuple[int, ...]:
    """Scale a rational row to a primitive integer row, sign preserved."""
    from math import gcd, lcm
    denoms = [c.denominator for c in coeffs]
    scale = lcm(*denoms) if denoms else 1
    ints = [int(c * scale) for c in coeffs]
    g = gcd(*(abs(e) for e in ints)) if any(ints) else 1
    return tuple(e // max(g, 1) for e in ints)


def cone_hull_constraints(generators: Sequence[Sequence[int]], k: int
                          ) -> list[Constraint]:
    """Halfspace description of the cone spanned by the generators.

    The result is a list of homogeneous constraints over k coordinates whose
    common solution set is exactly {sum t_i g_i : t_i >= 0}; rows are
    primitive integer vectors, possibly redundant. With no generators the
    description cuts out the origin.
    """
    r = len(generators)
    total = k + r
    cons: list[Constraint] = []
    for j in range(k):
        row = [_ZERO] * total
        row[j] = Fraction(1)
        for i, g in enumerate(generators):
            row[k + i] = Fraction(-g[j])
        cons.append(Constraint(tuple(row), _ZERO))
        cons.append(Constraint(tuple(-c for c in row), _ZERO))
    for i in range(r):
        row = [_ZERO] * total
        row[k + i] = Fraction(-1)
        cons.append(Constraint(tuple(row), _ZERO))

    work = cons
    for i in range(total - 1, k - 1, -1):
        work = eliminate(work, i)
        seen: set[tuple] = set()
        dedup = []
        for c in work:
            key = (_primitive_integer_row(c.coeffs), c.strict)
            if key in seen:
                continue
            seen.add(key)
            dedup.append(c)
        work = dedup

    out = []
    seen = set()
    for c in work:
        assert c.bound == 0 and not c.strict
        head = _primitive_integer_row(c.coeffs[:k])
        if not any(head):
            continue
        if head in seen:
            continue
        seen.add(head)
        out.append(Constraint(as_vec(head), _ZERO))
    return out


def interior_point(constraints: Sequence[Constraint], nvars: int) -> Optional[Vec]:
    """A rational point of a nonempty region, biased to interior positions.

    Intended for full-dimensional regions given with strict constraints plus
    a bounding window; returns None when the region is empty.
    """
    if is_empty(constraints, nvars):
        return None
    cons = list(constraints)
    point: list[Fraction] = []
    for i in range(nvars):
        iv = variable_interval(cons, nvars, i)
        if iv.empty:
            return None
        if iv.lo is not None and iv.hi is not None:
            value = (iv.lo + iv.hi) / 2
        elif iv.lo is not None:
            value = iv.lo + 1
        elif iv.hi is not None:
            value = iv.hi - 1
        else:
            value = _ZERO
        point.append(value)
        cons = _substitute(cons, i, value)
    if is_empty(cons, nvars):
        return None
    return tuple(point)

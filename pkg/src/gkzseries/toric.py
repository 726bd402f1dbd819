"""Binomial ideal arithmetic: term orders, completion, saturation.

Binomials in the lattice ideal of a standard-graded matrix stay binomial
under S-pairs and reduction, so the completion below never touches general
polynomials. Saturation follows the iterated single-variable scheme: for each
variable, recompute a basis under a graded reverse lexicographic order that
makes that variable cheapest, then divide out its common powers; repeat
passes until the basis stabilizes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    BudgetExceededError,
    InputValidationError,
    SaturationBudgetError,
    WeightNotGenericError,
)
from .linalg import IntVec, LatticeBasis, Vec, as_int_vec, as_vec, dot, vec_sub

Monomial = IntVec


def _divides(a: Monomial, m: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, m))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


@dataclass(frozen=True)
class GrevlexOrder:
    """Graded reverse lexicographic order, optionally with one variable
    rotated into the cheapest position."""

    nvars: int
    cheapest: Optional[int] = None

    def key(self, m: Monomial):
        if self.cheapest is None:
            arranged = m
        else:
            arranged = tuple(m[j] for j in range(self.nvars) if j != self.cheapest)
            arranged = arranged + (m[self.cheapest],)
        return (sum(m), tuple(-x for x in reversed(arranged)))

    def weight_tie(self, a: Monomial, b: Monomial) -> bool:
        return False

    @property
    def tag(self) -> str:
        return "grevlex" if self.cheapest is None else f"grevlex-cheapest-{self.cheapest}"


@dataclass(frozen=True)
class WeightOrder:
    """Weight vector order with a grevlex tie-break.

    The tie-break keeps sorting deterministic; a genuine weight tie between
    the two monomials of a binomial being oriented is treated as
    non-genericity and aborts the caller.
    """

    w: Vec
    nvars: int

    def key(self, m: Monomial):
        return (dot(self.w, m),) + GrevlexOrder(self.nvars).key(m)

    def weight_tie(self, a: Monomial, b: Monomial) -> bool:
        return a != b and dot(self.w, a) == dot(self.w, b)

    @property
    def tag(self) -> str:
        return "weight+grevlex"


@dataclass(frozen=True)
class Binomial:
    """x^plus - x^minus with plus marked as the initial monomial."""

    plus: Monomial
    minus: Monomial

    @property
    def direction(self) -> IntVec:
        return vec_sub(self.plus, self.minus)

    @property
    def nvars(self) -> int:
        return len(self.plus)

    @classmethod
    def from_vector(cls, u: Sequence[int]) -> "Binomial":
        uu = as_int_vec(u)
        plus = tuple(max(x, 0) for x in uu)
        minus = tuple(max(-x, 0) for x in uu)
        return cls(plus, minus)

    def stripped(self) -> "Binomial":
        common = tuple(min(p, q) for p, q in zip(self.plus, self.minus))
        if not any(common):
            return self
        return Binomial(vec_sub(self.plus, common), vec_sub(self.minus, common))

    def strip_variable(self, i: int) -> "Binomial":
        c = min(self.plus[i], self.minus[i])
        if c == 0:
            return self
        plus = list(self.plus)
        minus = list(self.minus)
        plus[i] -= c
        minus[i] -= c
        return Binomial(tuple(plus), tuple(minus))

    def display(self, names: Optional[Sequence[str]] = None) -> str:
        def side(m: Monomial) -> str:
            parts = []
            for i, e in enumerate(m):
                if e == 0:
                    continue
                name = names[i] if names else f"d{i + 1}"
                parts.append(name if e == 1 else f"{name}^{e}")
            return "*".join(parts) if parts else "1"

        return f"{side(self.plus)} - {side(self.minus)}"


def _orient(p: Monomial, q: Monomial, order) -> Optional[Binomial]:
    if p == q:
        return None
    if order.weight_tie(p, q):
        raise WeightNotGenericError(
            "weight not generic: zero weight on direction "
            f"{tuple(vec_sub(p, q))}", detail=list(vec_sub(p, q)))
    if order.key(p) > order.key(q):
        return Binomial(p, q)
    return Binomial(q, p)


def monomial_normal_form(m: Monomial, basis: Sequence[Binomial]) -> Monomial:
    """Fully reduce a monomial modulo the marked binomials."""
    changed = True
    while changed:
        changed = False
        for g in basis:
            if _divides(g.plus, m):
                m = tuple(x - p + q for x, p, q in zip(m, g.plus, g.minus))
                changed = True
                break
    return m


def binomial_normal_form(b: Binomial, basis: Sequence[Binomial]) -> Optional[Binomial]:
    """Reduce both monomials; None when the binomial collapses to zero.

    The returned pair is not reoriented; callers orient against their order.
    """
    p = monomial_normal_form(b.plus, basis)
    q = monomial_normal_form(b.minus, basis)
    if p == q:
        return None
    return Binomial(p, q)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis together with the order that produced it."""

    elements: tuple[Binomial, ...]
    order: object
    w: Optional[Vec] = None

    @property
    def tie_break(self) -> str:
        return "grevlex"

    @property
    def directions(self) -> tuple[IntVec, ...]:
        return tuple(g.direction for g in self.elements)

    def reduce_monomial(self, m: Monomial) -> Monomial:
        return monomial_normal_form(m, self.elements)

    def reduce_binomial(self, b: Binomial) -> Optional[Binomial]:
        return binomial_normal_form(b, self.elements)


def buchberger(gens: Iterable[Binomial], order, *, budget: int = 20000) -> GroebnerBasis:
    """Completion to a reduced basis under the given order.

    Raises WeightNotGenericError when the order cannot orient a computed
    element, and BudgetExceededError past the S-pair budget.
    """
    basis: list[Binomial] = []
    for b in gens:
        g = _orient(b.plus, b.minus, order)
        if g is not None and g not in basis:
            basis.append(g)
    basis.sort(key=lambda g: order.key(g.plus))

    counter = 0
    queue: list = []

    def push_pairs(j: int) -> None:
        nonlocal counter
        for i in range(j):
            lcm = _lcm(basis[i].plus, basis[j].plus)
            counter += 1
            heapq.heappush(queue, (order.key(lcm), counter, i, j))

    for j in range(len(basis)):
        push_pairs(j)

    processed = 0
    while queue:
        _, _, i, j = heapq.heappop(queue)
        processed += 1
        if processed > budget:
            raise BudgetExceededError(f"budget exceeded after {budget} S-pairs")
        gi, gj = basis[i], basis[j]
        if _coprime(gi.plus, gj.plus):
            continue
        lcm = _lcm(gi.plus, gj.plus)
        p = tuple(l - a + b for l, a, b in zip(lcm, gi.plus, gi.minus))
        q = tuple(l - a + b for l, a, b in zip(lcm, gj.plus, gj.minus))
        p = monomial_normal_form(p, basis)
        q = monomial_normal_form(q, basis)
        g = _orient(p, q, order)
        if g is None or g in basis:
            continue
        basis.append(g)
        push_pairs(len(basis) - 1)

    return _reduce_basis(basis, order)


def _reduce_basis(basis: list[Binomial], order) -> GroebnerBasis:
    # minimal generators of the initial ideal
    minimal: list[Binomial] = []
    for g in sorted(basis, key=lambda g: order.key(g.plus)):
        if any(_divides(h.plus, g.plus) for h in minimal):
            continue
        minimal.append(g)
    # tail-reduce against the other initials
    reduced: list[Binomial] = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        tail = monomial_normal_form(g.minus, others)
        reduced.append(Binomial(g.plus, tail))
    reduced.sort(key=lambda g: order.key(g.plus))
    w = getattr(order, "w", None)
    return GroebnerBasis(tuple(reduced), order, w=w)


def lattice_ideal_generators(basis: LatticeBasis) -> tuple[Binomial, ...]:
    """One binomial per basis column, positive part minus negative part."""
    return tuple(Binomial.from_vector(col) for col in basis.columns)


def saturate_to_toric(gens: Iterable[Binomial], nvars: int, *,
                      budget: int = 20000, max_passes: int = 8) -> tuple[Binomial, ...]:
    """Saturate a lattice ideal by every variable.

    Requires standard-graded input (all generator directions homogeneous),
    which makes each single-variable pass exact. Returns the reduced grevlex
    basis of the saturation, each element stripped of common variable powers.
    """
    current: list[Binomial] = []
    for b in gens:
        s = b.stripped()
        if s.plus != s.minus and s not in current:
            current.append(s)

    reference = GrevlexOrder(nvars)

    def snapshot(items: Sequence[Binomial]) -> frozenset:
        gb = buchberger(items, reference, budget=budget)
        return frozenset((g.plus, g.minus) for g in gb.elements)

    try:
        previous = snapshot(current)
        for _ in range(max_passes):
            for i in range(nvars):
                order = GrevlexOrder(nvars, cheapest=i)
                gb = buchberger(current, order, budget=budget)
                current = [g.strip_variable(i) for g in gb.elements]
            state = snapshot(current)
            if state == previous:
                break
            previous = state
        else:
            raise SaturationBudgetError("saturation budget exceeded")
        final = buchberger(current, reference, budget=budget)
    except BudgetExceededError as exc:
        raise SaturationBudgetError("saturation budget exceeded") from exc

    out = []
    for g in final.elements:
        s = g.stripped()
        if s.plus != s.minus and s not in out:
            out.append(s)
    return tuple(sorted(out, key=lambda g: reference.key(g.plus)))


def weight_groebner_basis(gens: Iterable[Binomial], w: Sequence, nvars: int, *,
                          budget: int = 20000) -> GroebnerBasis:
    order = WeightOrder(as_vec(w), nvars)
    return buchberger(gens, order, budget=budget)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators, sorted."""

    nvars: int
    generators: tuple[Monomial, ...]

    @classmethod
    def from_generators(cls, nvars: int, gens: Iterable[Monomial]) -> "MonomialIdeal":
        unique = sorted(set(tuple(g) for g in gens))
        minimal = [g for g in unique
                   if not any(h != g and _divides(h, g) for h in unique)]
        return cls(nvars, tuple(sorted(minimal)))

    def contains(self, m: Monomial) -> bool:
        return any(_divides(g, m) for g in self.generators)


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    nvars = gb.elements[0].nvars if gb.elements else 0
    return MonomialIdeal.from_generators(nvars, (g.plus for g in gb.elements))


def in_cone(u: Sequence[int], directions: Sequence[Sequence[int]],
            w: Sequence, basis: Optional[LatticeBasis] = None) -> bool:
    """Membership of a lattice vector in the monoid spanned by the reduced
    basis directions.

    Decided exactly: the strictly positive weight of every direction bounds
    the multipliers, so the nonnegative integer combinations reaching u form
    a finite set that is searched exhaustively. Note that this monoid is
    generally smaller than the weight-positive halfspace; vectors of positive
    weight can still fall outside every nonnegative combination.
    """
    from .polyhedra import Constraint, find_lattice_point

    uu = as_int_vec(u)
    if basis is not None and basis.gale_coordinates(uu) is None:
        raise InputValidationError(
            f"vector {list(uu)} is not in the kernel lattice")
    if not any(uu):
        return True
    ww = as_vec(w)
    dirs = [as_int_vec(d) for d in directions]
    weights = [dot(ww, d) for d in dirs]
    if any(wt <= 0 for wt in weights):
        raise InputValidationError(
            "cone directions must have strictly positive weight")
    target_weight = dot(ww, uu)
    if target_weight <= 0:
        return False
    r = len(dirs)
    cons: list[Constraint] = []
    n = len(uu)
    for j in range(n):
        row = tuple(Fraction(d[j]) for d in dirs)
        cons.append(Constraint(row, Fraction(uu[j])))
        cons.append(Constraint(tuple(-c for c in row), Fraction(-uu[j])))
    for i in range(r):
        row = [Fraction(0)] * r
        row[i] = Fraction(-1)
        cons.append(Constraint(tuple(row), Fraction(0)))
        row2 = [Fraction(0)] * r
        row2[i] = Fraction(1)
        cons.append(Constraint(tuple(row2), target_weight / weights[i]))
    status, _ = find_lattice_point(cons, r, 0)
    assert status != "unknown"
    return status == "found"


def ideals_equal(gens_a: Sequence[Binomial], gens_b: Sequence[Binomial],
                 nvars: int, *, budget: int = 20000) -> bool:
    """Mutual-reduction equality of two binomial ideals."""
    order = GrevlexOrder(nvars)
    gb_a = buchberger(gens_a, order, budget=budget)
    gb_b = buchberger(gens_b, order, budget=budget)
    return frozenset((g.plus, g.minus) for g in gb_a.elements) == \
        frozenset((g.plus, g.minus) for g in gb_b.elements)

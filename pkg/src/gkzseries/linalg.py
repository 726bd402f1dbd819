"""Exact integer and rational linear algebra.

Everything here runs over Python ints and ``fractions.Fraction``; no floats
are ever produced. The module provides the kernel-lattice construction with
its canonical Hermite-form normalization, affine solving with solution-set
classification, and the small vector helpers shared by the rest of the
library.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputValidationError, NotHomogeneousError, RankMismatchError

IntVec = tuple[int, ...]
IntMatrix = tuple[IntVec, ...]
Vec = tuple[Fraction, ...]


def as_vec(entries: Iterable) -> Vec:
    return tuple(Fraction(e) for e in entries)


def as_int_vec(entries: Iterable) -> IntVec:
    out = []
    for e in entries:
        if isinstance(e, Fraction):
            if e.denominator != 1:
                raise InputValidationError(f"expected integer entry, got {e}")
            out.append(e.numerator)
        elif isinstance(e, int):
            out.append(e)
        else:
            raise InputValidationError(f"expected integer entry, got {e!r}")
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def mat_vec(m: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(dot(row, x) for row in m)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def _row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [inv * a for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rational_rank(m: Sequence[Sequence]) -> int:
    rows = [[Fraction(e) for e in row] for row in m]
    if not rows:
        return 0
    _, pivots = _row_reduce(rows)
    return len(pivots)


@dataclass(frozen=True)
class AffineSolution:
    """Outcome of solving M x = rhs over the rationals.

    ``status`` is one of ``unique`` / ``none`` / ``underdetermined``;
    ``solution`` is the unique solution when unique, a particular solution
    (free coordinates set to zero) when underdetermined, and None otherwise.
    """

    status: str
    solution: Optional[Vec]


def solve_affine(m: Sequence[Sequence], rhs: Sequence) -> AffineSolution:
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if len(rhs) != nrows:
        raise ValueError("dimension mismatch")
    aug = [[Fraction(e) for e in row] + [Fraction(r)] for row, r in zip(m, rhs)]
    if not aug:
        # no equations: everything solves; unique only with no unknowns
        zero = tuple(Fraction(0) for _ in range(ncols))
        return AffineSolution("unique" if ncols == 0 else "underdetermined", zero)
    reduced, pivots = _row_reduce(aug)
    if ncols in pivots:
        return AffineSolution("none", None)
    solution = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][ncols]
    status = "unique" if len(pivots) == ncols else "underdetermined"
    return AffineSolution(status, tuple(solution))


def homogeneity_covector(m: Sequence[Sequence]) -> Optional[Vec]:
    """A rational c with c.column = 1 for every column of m, or None.

    Existence is equivalent to the all-ones vector lying in the row space.
    """
    cols = transpose(m)
    ones = [Fraction(1)] * len(cols)
    result = solve_affine(cols, ones)
    return result.solution if result.status != "none" else None


def hnf_rows(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form: echelon shape, positive pivots, entries above
    each pivot reduced into [0, pivot). Zero rows are dropped."""
    rows = [list(as_int_vec(r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        # gcd-eliminate entries below position (r, c) via unimodular row swaps
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[i0] = rows[i0], rows[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        pivot = rows[r][c]
        for i in range(r):
            q = rows[i][c] // pivot
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return tuple(tuple(row) for row in rows[:r])


def integer_kernel_basis(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Basis rows for the saturated integer kernel {x : m.x = 0}.

    Runs row reduction over Z on [m^T | I]; rows whose left block vanishes
    carry kernel vectors in the right block. The result is HNF-normalized so
    the basis is canonical: leading entries positive, entries above each
    leading entry reduced.
    """
    mt = transpose(m)
    n = len(mt)
    d = len(mt[0]) if n else 0
    stacked = [list(as_int_vec(row)) + [1 if j == i else 0 for j in range(n)]
               for i, row in enumerate(mt)]
    r = 0
    for c in range(d):
        if r >= n:
            break
        while True:
            nz = [i for i in range(r, n) if stacked[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(stacked[i][c]))
            stacked[r], stacked[i0] = stacked[i0], stacked[r]
            done = True
            for i in range(r + 1, n):
                if stacked[i][c] != 0:
                    q = stacked[i][c] // stacked[r][c]
                    stacked[i] = [a - q * b for a, b in zip(stacked[i], stacked[r])]
                    if stacked[i][c] != 0:
                        done = False
            if done:
                break
        if stacked[r][c] != 0:
            r += 1
    tails = [tuple(row[d:]) for row in stacked[r:]]
    return hnf_rows(tails)


def maximal_minor_gcd(m: Sequence[Sequence[int]]) -> int:
    """gcd of all maximal minors of a full-row-rank integer matrix."""
    rows = [as_int_vec(r) for r in m]
    k = len(rows)
    n = len(rows[0]) if k else 0
    if k == 0:
        return 1
    g = 0
    for cols in itertools.combinations(range(n), k):
        sub = [[rows[i][c] for c in cols] for i in range(k)]
        g = math.gcd(g, _int_det(sub))
        if g == 1:
            return 1
    return g


def _int_det(m: list[list[int]]) -> int:
    k = len(m)
    if k == 0:
        return 1
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    det = 0
    for j in range(k):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        det += (-1) ** j * m[0][j] * _int_det(minor)
    return det


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of the integer kernel lattice, stored column-wise.

    ``matrix`` is n x k; column j is the j-th basis vector, row i is the i-th
    dual covector used to read off coordinate signs along the lattice.
    """

    matrix: IntMatrix

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def k(self) -> int:
        return len(self.matrix[0]) if self.matrix and self.matrix[0] else 0

    @property
    def columns(self) -> tuple[IntVec, ...]:
        return transpose(self.matrix)

    @property
    def rows(self) -> tuple[IntVec, ...]:
        return self.matrix

    def lattice_vector(self, x: Sequence[int]) -> IntVec:
        if len(x) != self.k:
            raise ValueError("dimension mismatch")
        return tuple(sum(row[j] * x[j] for j in range(self.k)) for row in self.matrix)

    def gale_coordinates(self, u: Sequence) -> Optional[IntVec]:
        """Integer x with basis.x = u, or None when u is not in the lattice."""
        if len(u) != self.n:
            raise ValueError("dimension mismatch")
        result = solve_affine(self.matrix, u)
        if result.status != "unique" or result.solution is None:
            if result.status == "underdetermined":
                raise InputValidationError("lattice basis is not full column rank")
            return None
        if any(c.denominator != 1 for c in result.solution):
            return None
        return tuple(c.numerator for c in result.solution)

    def contains(self, u: Sequence) -> bool:
        return self.gale_coordinates(u) is not None


def kernel_lattice_basis(m: Sequence[Sequence[int]], declared_rank: int) -> LatticeBasis:
    """Canonical basis of ker_Z(m) for a matrix of the declared full row rank."""
    rank = rational_rank(m)
    if rank != declared_rank:
        raise RankMismatchError(
            f"rank mismatch: matrix has rational rank {rank}, declared {declared_rank}")
    rows = integer_kernel_basis(m)
    n = len(m[0]) if m else 0
    basis = LatticeBasis(matrix=tuple(tuple(row[i] for row in rows) for i in range(n)))
    for col in basis.columns:
        if any(mat_vec(m, col)):
            raise AssertionError("kernel basis column fails m.x = 0")
    if rows and maximal_minor_gcd(rows) != 1:
        raise AssertionError("kernel basis is not saturated")
    return basis


def require_homogeneous(m: Sequence[Sequence[int]]) -> Vec:
    cov = homogeneity_covector(m)
    if cov is None:
        raise NotHomogeneousError(
            "the all-ones vector is not in the row space of the matrix")
    return cov


@dataclass(frozen=True)
class GenericityReport:
    ok: bool
    offending: Optional[IntVec] = None

    def __bool__(self) -> bool:
        return self.ok


def weight_genericity_check(w: Sequence, gb) -> GenericityReport:
    """Check that no reduced-basis direction has zero weight.

    Ties arising mid-completion abort the run before a basis exists, so a
    surviving basis only needs its own directions checked.
    """
    wv = as_vec(w)
    for g in gb.elements:
        direction = vec_sub(g.plus, g.minus)
        if dot(wv, direction) == 0:
            return GenericityReport(False, as_int_vec(direction))
    return GenericityReport(True, None)

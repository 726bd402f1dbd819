"""Fake exponents and the classification of negative supports.

A fake exponent solves the column equations of a standard pair: fixed to the
pair's exponent off the face, solved exactly on the face. Each exponent is
then classified: which subsets of its integer-coordinate positions occur as
the negative support of a translate along the kernel lattice, and which of
those subsets keep every realization inside the monoid of nonnegative
integer combinations of the reduced-basis directions. Every verdict carries
a certificate tag, exact or radius-limited.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (DegenerateParameterError, InputValidationError,
                     RegionLimitError)
from .linalg import (IntVec, LatticeBasis, Vec, _int_det, as_int_vec, as_vec,
                     dot, solve_affine)
from .polyhedra import (Constraint, Unbounded, box_points,
                        cone_hull_constraints, find_lattice_point,
                        lattice_points)
from .standard_pairs import StandardPair
from .toric import in_cone

_ZERO = Fraction(0)


def negative_support(v: Sequence) -> frozenset[int]:
    """Positions carrying negative integers."""
    out = set()
    for i, e in enumerate(v):
        q = Fraction(e)
        if q.denominator == 1 and q < 0:
            out.add(i)
    return frozenset(out)


def integer_positions(v: Sequence) -> frozenset[int]:
    """Positions carrying integers; only these can ever turn negative."""
    return frozenset(i for i, e in enumerate(v) if Fraction(e).denominator == 1)


@dataclass(frozen=True)
class FakeExponent:
    """Exponent vector attached to the standard pairs that produce it."""

    v: Vec
    source_pairs: tuple[StandardPair, ...]
    nsupp: frozenset[int]
    integer_support: frozenset[int]
    minimal: Optional[str] = None          # "certified" / "at-radius" / "no"
    minimal_witness: Optional[IntVec] = None
    smallest_weight_in_class: Optional[bool] = None


def fake_exponents(matrix: Sequence[Sequence[int]], beta: Sequence,
                   pairs: Iterable[StandardPair]) -> tuple[FakeExponent, ...]:
    """Solve each standard pair for its exponent; deduplicate by value."""
    rows = tuple(as_int_vec(r) for r in matrix)
    n = len(rows[0]) if rows else 0
    beta_v = as_vec(beta)
    by_value: dict[Vec, list[StandardPair]] = {}
    for pair in pairs:
        face = sorted(pair.sigma)
        fixed = tuple(_ZERO if i in pair.sigma else Fraction(pair.a[i])
                      for i in range(n))
        rhs = tuple(b - dot(row, fixed) for b, row in zip(beta_v, rows))
        cols = tuple(tuple(Fraction(row[i]) for i in face) for row in rows)
        result = solve_affine(cols, rhs)
        if result.status == "underdetermined":
            raise DegenerateParameterError(
                f"standard pair {pair.display()} gives a positive-dimensional "
                "exponent set")
        if result.status == "none":
            continue
        v = list(fixed)
        for i, value in zip(face, result.solution or ()):
            v[i] = value
        key = tuple(v)
        by_value.setdefault(key, []).append(pair)
    out = []
    for v in sorted(by_value):
        srcs = tuple(sorted(by_value[v], key=StandardPair.sort_key))
        out.append(FakeExponent(
            v=v,
            source_pairs=srcs,
            nsupp=negative_support(v),
            integer_support=integer_positions(v),
        ))
    return tuple(out)


def support_region(v: Sequence, basis: LatticeBasis,
                   support: frozenset[int]) -> list[Constraint]:
    """Halfspaces on Gale coordinates x cutting out
    {x : negative_support(v + basis.x) = support}."""
    vv = as_vec(v)
    cons: list[Constraint] = []
    for i in sorted(integer_positions(vv)):
        row = as_vec(basis.rows[i])
        if i in support:
            # v_i + g_i.x <= -1
            cons.append(Constraint(row, -vv[i] - 1))
        else:
            # v_i + g_i.x >= 0
            cons.append(Constraint(tuple(-c for c in row), vv[i]))
    return cons


def classify_point(v: Sequence, basis: LatticeBasis, x: Sequence[int]) -> frozenset[int]:
    """Negative support of the translate at Gale coordinates x, read off the
    dual covector signs."""
    vv = as_vec(v)
    out = set()
    for i in sorted(integer_positions(vv)):
        if dot(as_vec(basis.rows[i]), as_vec(x)) + vv[i] < 0:
            out.add(i)
    return frozenset(out)


def minimal_negative_support(v: Sequence, basis: LatticeBasis, radius: int
                             ) -> tuple[str, Optional[IntVec]]:
    """Whether no lattice translate strictly shrinks the negative support.

    Returns ("no", witness-vector) with an explicit translate when one
    exists, ("certified", None) when every proper subset region is certified
    empty, and ("at-radius", None) when some region stayed unknown.
    """
    base = negative_support(v)
    certified = True
    for size in range(len(base)):
        for subset in itertools.combinations(sorted(base), size):
            region = support_region(v, basis, frozenset(subset))
            status, point = find_lattice_point(region, basis.k, radius)
            if status == "found" and point is not None:
                return ("no", basis.lattice_vector(point))
            if status == "unknown":
                certified = False
    return ("certified" if certified else "at-radius", None)


@dataclass(frozen=True)
class SupportRecord:
    """One achieved negative support with its cone verdict."""

    support: frozenset[int]
    witness: IntVec                      # Gale coordinates achieving it
    in_positive_cone: bool               # every realization in the monoid
    certificate: str                     # "certified" / "radius-limited"
    cone_witness: Optional[IntVec] = None  # realization outside, Gale coords


@dataclass(frozen=True)
class SupportClassification:
    """Negative supports of v + L split by cone behavior.

    ``ns`` collects supports all of whose realizations are nonnegative
    integer combinations of the cone directions; ``ns_complement`` the
    achieved rest. The derived quantities drive the derivative orders of
    both construction methods.
    """

    v: Vec
    w: Vec
    basis: LatticeBasis
    radius: int
    records: tuple[SupportRecord, ...]
    ns: frozenset[frozenset[int]]
    ns_complement: frozenset[frozenset[int]]
    base_support: frozenset[int]                 # negative support of v itself
    core_support: frozenset[int]                 # intersection over ns
    min_support_size: int
    min_crossing_size: Optional[int]             # min |I union J| across the split
    restricted: bool = False
    warnings: tuple[str, ...] = ()

    @property
    def all_certified(self) -> bool:
        return all(r.certificate == "certified" for r in self.records)

    def record_for(self, support: frozenset[int]) -> Optional[SupportRecord]:
        for r in self.records:
            if r.support == support:
                return r
        return None

    def derivative_bound(self) -> Optional[int]:
        """Largest guaranteed single-parameter derivative order plus one."""
        if self.min_crossing_size is None:
            return None
        return self.min_crossing_size - self.min_support_size


def _sorted_supports(supports: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    return sorted(supports, key=lambda s: (len(s), sorted(s)))


def _unimodular_cover(generators: Sequence[IntVec], k: int) -> bool:
    """Whether some k generators form a lattice basis whose nonnegative span
    contains every generator.

    Such a cover certifies saturation: the monoid of nonnegative integer
    combinations then equals the real cone intersected with the lattice, so
    facet certificates transfer from the cone to the monoid.
    """
    for combo in itertools.combinations(range(len(generators)), k):
        mat = [[generators[i][j] for i in combo] for j in range(k)]
        if abs(_int_det(mat)) != 1:
            continue
        ok = True
        for g in generators:
            res = solve_affine(mat, g)
            if res.status != "unique" or res.solution is None or any(
                    t.denominator != 1 or t < 0 for t in res.solution):
                ok = False
                break
        if ok:
            return True
    return False


def _support_label(support: frozenset[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(support)) + "}"


def classify_supports(v: Sequence, basis: LatticeBasis, w: Sequence,
                      radius: int, directions: Sequence[Sequence[int]]
                      ) -> SupportClassification:
    """Classify every achievable negative support of v + L.

    Candidates range over subsets of the integer positions of v.
    Achievability of each candidate is decided exactly where Fourier-Motzkin
    certifies emptiness or the region is bounded, and by a radius-limited box
    scan otherwise. The cone side asks whether every realizing translate is a
    nonnegative integer combination of the given directions. Witnesses
    against are always exact. An all-realizations verdict is certified when
    the region avoids every hull facet and a unimodular generator subset
    shows the monoid saturated, or when a bounded region is exhausted point
    by point; otherwise it is tagged radius-limited.
    """
    vv = as_vec(v)
    ww = as_vec(w)
    k = basis.k
    dirs = tuple(as_int_vec(d) for d in directions)
    gale_dirs = []
    for d in dirs:
        x = basis.gale_coordinates(d)
        if x is None:
            raise InputValidationError(
                f"cone direction {list(d)} is not in the kernel lattice")
        gale_dirs.append(x)
    facets = cone_hull_constraints(gale_dirs, k)
    saturated = _unimodular_cover(gale_dirs, k)

    member_cache: dict[tuple[int, ...], bool] = {}

    def member(x: tuple[int, ...]) -> bool:
        if x not in member_cache:
            member_cache[x] = in_cone(basis.lattice_vector(x), dirs, ww)
        return member_cache[x]

    candidates = []
    intpos = sorted(integer_positions(vv))
    for size in range(len(intpos) + 1):
        for subset in itertools.combinations(intpos, size):
            candidates.append(frozenset(subset))

    records: list[SupportRecord] = []
    warnings: list[str] = []
    for support in candidates:
        region = support_region(vv, basis, support)
        status, point = find_lattice_point(region, k, radius)
        if status == "certified-none":
            continue
        if status == "unknown":
            warnings.append("support " + _support_label(support) +
                            " unresolved at radius " + str(radius))
            continue
        assert point is not None

        # realizations strictly outside the hull violate some facet by >= 1
        outside = None
        contained = True
        for f in facets:
            probe = list(region)
            probe.append(Constraint(tuple(-c for c in f.coeffs), Fraction(-1)))
            fstatus, fpoint = find_lattice_point(probe, k, radius)
            if fstatus == "found":
                outside = fpoint
                break
            if fstatus == "unknown":
                contained = False
        if outside is not None:
            records.append(SupportRecord(support, point, False, "certified",
                                         cone_witness=outside))
            continue
        if contained and saturated:
            records.append(SupportRecord(support, point, True, "certified"))
            continue

        # saturation unavailable: inspect the realizations one by one
        try:
            pts = lattice_points(region, k)
            complete = True
        except (Unbounded, RegionLimitError):
            pts = box_points(region, k, radius)
            complete = False
        hole = next((p for p in pts if not member(p)), None)
        if hole is not None:
            records.append(SupportRecord(support, point, False, "certified",
                                         cone_witness=hole))
        elif complete:
            records.append(SupportRecord(support, point, True, "certified"))
        else:
            warnings.append("support " + _support_label(support) +
                            " cone verdict limited to radius " + str(radius))
            records.append(SupportRecord(support, point, True,
                                         "radius-limited"))

    ns = frozenset(r.support for r in records if r.in_positive_cone)
    nsc = frozenset(r.support for r in records if not r.in_positive_cone)
    base = negative_support(vv)
    if base not in ns:
        raise AssertionError(
            "the base negative support must land on the positive side")
    return _build_classification(vv, ww, basis, radius, tuple(records), ns, nsc,
                                 base, warnings=tuple(warnings))


def _build_classification(v: Vec, w: Vec, basis: LatticeBasis, radius: int,
                          records: tuple[SupportRecord, ...],
                          ns: frozenset, nsc: frozenset, base: frozenset,
                          *, restricted: bool = False,
                          warnings: tuple[str, ...] = ()) -> SupportClassification:
    m = min(len(s) for s in ns)
    if nsc:
        big = min(len(i | j) for i in ns for j in nsc)
    else:
        big = None
    core = frozenset.intersection(*ns) if ns else frozenset()
    return SupportClassification(
        v=v, w=w, basis=basis, radius=radius,
        records=tuple(sorted(records, key=lambda r: (len(r.support), sorted(r.support)))),
        ns=ns, ns_complement=nsc, base_support=base, core_support=core,
        min_support_size=m, min_crossing_size=big,
        restricted=restricted, warnings=warnings)


def restrict_classification(cls: SupportClassification,
                            keep: Iterable[frozenset[int]]) -> SupportClassification:
    """Restrict the positive side to a chosen subfamily.

    The subfamily must contain the base support and be drawn from the current
    positive side; everything else moves to the complement, which raises the
    crossing size and with it the guaranteed derivative orders.
    """
    keep_set = frozenset(frozenset(s) for s in keep)
    if not keep_set:
        raise InputValidationError("restriction must keep at least one support")
    for s in keep_set:
        if s not in cls.ns:
            raise InputValidationError(
                "restriction contains a support not on the positive side: " +
                _support_label(s))
    if cls.base_support not in keep_set:
        raise InputValidationError(
            "restriction must contain the base negative support")
    nsc = frozenset(cls.ns | cls.ns_complement) - keep_set
    records = []
    for r in cls.records:
        records.append(replace(r, in_positive_cone=r.support in keep_set))
    return _build_classification(cls.v, cls.w, cls.basis, cls.radius,
                                 tuple(records), keep_set, nsc,
                                 cls.base_support, restricted=True,
                                 warnings=cls.warnings)


def annotate_exponents(exponents: Sequence[FakeExponent], basis: LatticeBasis,
                       w: Sequence, radius: int) -> tuple[FakeExponent, ...]:
    """Attach minimality flags and the smallest-weight-in-coset flag."""
    ww = as_vec(w)
    weights = [dot(ww, e.v) for e in exponents]
    smallest: list[bool] = []
    for i, e in enumerate(exponents):
        best = True
        for j, other in enumerate(exponents):
            if i == j:
                continue
            if basis.contains(tuple(a - b for a, b in zip(e.v, other.v))):
                if weights[j] < weights[i]:
                    best = False
                    break
        smallest.append(best)
    out = []
    for e, small in zip(exponents, smallest):
        flag, witness = minimal_negative_support(e.v, basis, radius)
        out.append(replace(e, minimal=flag, minimal_witness=witness,
                           smallest_weight_in_class=small))
    return tuple(out)


def multiplicity_lower_bound(cls: SupportClassification, n: int, d: int
                             ) -> Optional[int]:
    """Binomial lower bound on the solution multiplicity at the exponent;
    None when the crossing size does not exceed the base support size."""
    if cls.min_crossing_size is None:
        return None
    excess = cls.min_crossing_size - len(cls.base_support)
    if excess <= 0:
        return None
    return math.comb(n - d + excess - 1, excess - 1)

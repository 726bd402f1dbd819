"""Rational halfspace regions: elimination, enumeration, cone hulls."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzseries.errors import RegionLimitError
from gkzseries.polyhedra import (Constraint, Unbounded, box_points,
                                 cone_hull_constraints, eliminate,
                                 find_lattice_point, interior_point, is_empty,
                                 lattice_points, variable_interval)


def cons(coeffs, bound, strict=False):
    return Constraint(tuple(Fraction(c) for c in coeffs), Fraction(bound),
                      strict)


TRIANGLE = [cons((-1, 0), 0), cons((0, -1), 0), cons((1, 1), 2)]


def test_is_empty_detects_contradiction():
    assert is_empty([cons((1,), 0), cons((-1,), -1)], 1)
    assert not is_empty([cons((1,), 5), cons((-1,), 0)], 1)


def test_is_empty_strict_boundary():
    # x <= 0 and x >= 0 meet only at 0; making one side strict empties it
    assert not is_empty([cons((1,), 0), cons((-1,), 0)], 1)
    assert is_empty([cons((1,), 0), cons((-1,), 0, strict=True)], 1)


def test_eliminate_projects_shadow():
    # projecting the triangle onto x keeps exactly 0 <= x <= 2
    shadow = eliminate(TRIANGLE, 1)
    iv = variable_interval(shadow, 2, 0)
    assert (iv.lo, iv.hi) == (0, 2)
    assert not iv.empty


def test_variable_interval_on_triangle():
    iv = variable_interval(TRIANGLE, 2, 1)
    assert (iv.lo, iv.hi) == (0, 2)
    assert not (iv.lo_strict or iv.hi_strict)


def test_variable_interval_unbounded_side():
    iv = variable_interval([cons((-1,), 0)], 1, 0)
    assert iv.lo == 0 and iv.hi is None


def test_lattice_points_triangle():
    pts = sorted(lattice_points(TRIANGLE, 2))
    assert pts == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_lattice_points_empty_region():
    assert list(lattice_points([cons((1,), -1), cons((-1,), 0)], 1)) == []


def test_lattice_points_unbounded_raises():
    with pytest.raises(Unbounded):
        lattice_points([cons((-1, 0), 0), cons((0, -1), 0)], 2)


def test_lattice_points_limit():
    big = [cons((1, 0), 600), cons((-1, 0), 0),
           cons((0, 1), 600), cons((0, -1), 0)]
    with pytest.raises(RegionLimitError):
        lattice_points(big, 2)


def test_box_points_counts():
    assert len(list(box_points([], 2, 1))) == 9
    got = sorted(box_points(TRIANGLE, 2, 1))
    assert got == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_find_lattice_point_found():
    status, pt = find_lattice_point(TRIANGLE, 2, 5)
    assert status == "found"
    assert pt is not None
    for c in TRIANGLE:
        assert sum(a * x for a, x in zip(c.coeffs, pt)) <= c.bound


def test_find_lattice_point_certified_none():
    status, pt = find_lattice_point([cons((1,), -1), cons((-1,), 0)], 1, 5)
    assert status == "certified-none" and pt is None


def test_find_lattice_point_unknown_on_even_line():
    # 2x + 2y = 1 has real points but no lattice points, and the region is
    # unbounded, so neither certificate is reachable
    line = [cons((2, 2), -1), cons((-2, -2), 1)]
    status, pt = find_lattice_point(line, 2, 6)
    assert status == "unknown" and pt is None


def test_cone_hull_constraints_contains_generators():
    gens = [(1, 0), (1, 2)]
    hull = cone_hull_constraints(gens, 2)
    for g in gens + [(2, 2), (5, 1)]:
        assert all(sum(a * x for a, x in zip(c.coeffs, g)) <= c.bound
                   for c in hull)
    for outside in [(-1, 0), (0, 1), (1, 3)]:
        assert any(sum(a * x for a, x in zip(c.coeffs, outside)) > c.bound
                   for c in hull)


def test_cone_hull_constraint_rows_are_primitive_integer():
    hull = cone_hull_constraints([(2, 0), (0, 4)], 2)
    for c in hull:
        ints = [int(a) for a in c.coeffs]
        assert all(Fraction(i) == a for i, a in zip(ints, c.coeffs))
        from math import gcd
        assert gcd(*(abs(i) for i in ints)) == 1
        assert c.bound == 0


def test_interior_point_strictly_inside():
    pt = interior_point(TRIANGLE, 2)
    assert pt is not None
    for c in TRIANGLE:
        assert sum(a * x for a, x in zip(c.coeffs, pt)) < c.bound


def test_interior_point_lower_dimensional_stays_inside():
    # a segment has no interior, but any returned point must satisfy it
    seg = [cons((1, 1), 0), cons((-1, -1), 0), cons((1, 0), 1),
           cons((-1, 0), 1)]
    pt = interior_point(seg, 2)
    assert pt is not None
    for c in seg:
        assert sum(a * x for a, x in zip(c.coeffs, pt)) <= c.bound


def test_interior_point_none_for_empty_region():
    empty = [cons((1,), -1), cons((-1,), 0)]
    assert interior_point(empty, 1) is None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3),
                          st.integers(-4, 4)),
                min_size=1, max_size=5))
def test_emptiness_agrees_with_brute_force_box(raw):
    # compare exact emptiness with a scan of a box that safely contains any
    # witness when all coefficients are small; restrict to bounded regions
    # by intersecting with a box
    region = [cons((a, b), c) for a, b, c in raw]
    box = [cons((1, 0), 8), cons((-1, 0), 8), cons((0, 1), 8),
           cons((0, -1), 8)]
    pts = list(lattice_points(region + box, 2))
    if pts:
        assert not is_empty(region, 2)
    # an empty rational region certainly has no lattice points
    if is_empty(region + box, 2):
        assert pts == []

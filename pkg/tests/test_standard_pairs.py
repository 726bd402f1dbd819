"""Standard pair decompositions of monomial ideals."""

from hypothesis import given, settings
from hypothesis import strategies as st

from gkzseries.standard_pairs import StandardPair, cover_check, standard_pairs
from gkzseries.toric import MonomialIdeal, initial_ideal


def displays(pairs):
    return sorted(p.display() for p in pairs)


def test_single_variable_ideal():
    ideal = MonomialIdeal.from_generators(3, [(1, 0, 0)])
    assert displays(standard_pairs(ideal)) == ["(0,*,*)"]


def test_zero_ideal_has_single_full_pair():
    ideal = MonomialIdeal.from_generators(2, [])
    assert displays(standard_pairs(ideal)) == ["(*,*)"]


def test_conic_initial_ideal_pairs(conic_pipe):
    assert displays(conic_pipe.pairs) == ["(*,*,0)", "(0,*,*)"]


def test_curve_initial_ideal_pairs(curve_pipe):
    assert displays(curve_pipe.pairs) == [
        "(*,*,0,0)", "(0,*,*,0)", "(0,*,*,1)", "(0,0,*,*)", "(1,*,1,0)"]


def test_square_initial_ideal_pairs(square_pipe):
    assert displays(square_pipe.pairs) == [
        "(*,*,0,0,*)", "(*,0,0,*,*)", "(0,*,*,0,*)", "(0,0,*,*,*)"]


def test_pairs_are_distinct(curve_pipe):
    keys = [(p.a, p.sigma) for p in curve_pipe.pairs]
    assert len(keys) == len(set(keys))


def test_cover_check_passes_on_computed_pairs(conic_pipe, curve_pipe,
                                              square_pipe):
    for pipe in (conic_pipe, curve_pipe, square_pipe):
        ideal = initial_ideal(pipe.groebner)
        assert cover_check(ideal, pipe.pairs, 5)


def test_cover_check_fails_with_missing_pair(curve_pipe):
    ideal = initial_ideal(curve_pipe.groebner)
    pruned = [p for p in curve_pipe.pairs if p.display() != "(*,*,0,0)"]
    assert not cover_check(ideal, pruned, 5)


def test_cover_check_fails_with_foreign_pair():
    ideal = MonomialIdeal.from_generators(2, [(2, 0)])
    pairs = list(standard_pairs(ideal))
    # a pair whose box reaches into the ideal must break the equality
    assert not cover_check(ideal, pairs + [StandardPair((5, 0),
                                                        frozenset({1}))], 6)


def test_display_uses_star_on_free_coordinates():
    pair = StandardPair((0, 2, 1), frozenset({0}))
    assert pair.display() == "(*,2,1)"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                min_size=0, max_size=4))
def test_standard_pairs_cover_arbitrary_ideals(gens):
    ideal = MonomialIdeal.from_generators(2, gens)
    pairs = standard_pairs(ideal)
    assert cover_check(ideal, pairs, 5)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(0, 2)),
                min_size=1, max_size=4))
def test_standard_pairs_cover_three_variables(gens):
    ideal = MonomialIdeal.from_generators(3, gens)
    assert cover_check(ideal, standard_pairs(ideal), 4)

"""Perturbation methods: derivative-order solutions and their certificates."""

from fractions import Fraction

import pytest

from gkzseries.errors import (ConditionNotMetError, DerivativeOrderError,
                              InputValidationError, PerturbationZeroError)
from gkzseries.frobenius import (frobenius_method1, frobenius_method1_extra,
                                 frobenius_method2, method1_condition,
                                 method2_condition, starting_monomials)
from gkzseries.series import phi_series


def fs(*items):
    return frozenset(items)


def test_method1_order_zero_is_scaled_phi(conic_pipe):
    v = (0, 12, -2)
    cls = conic_pipe.classification(v)
    s0 = frobenius_method1(v, (1, -2, 1), cls, 0, conic_pipe.weight_cap,
                           conic_pipe.radius)
    assert sorted(s0.terms) == [(2,), (3,), (4,), (5,), (6,)]
    assert s0.terms[(2,)].coeffs == {(0,): -5940}
    assert s0.terms[(3,)].coeffs == {(0,): -110880}
    assert s0.max_log_degree == 0
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    expected = phi.rebase(v).scale(-5940)
    assert s0.equal_on_common_region(expected)


def test_method1_order_one_carries_logs(conic_pipe):
    v = (0, 12, -2)
    cls = conic_pipe.classification(v)
    s1 = frobenius_method1(v, (1, -2, 1), cls, 1, conic_pipe.weight_cap,
                           conic_pipe.radius)
    assert s1.max_log_degree == 1
    assert s1.terms[(0,)].coeffs == {(0,): 1}
    assert s1.terms[(1,)].coeffs == {(0,): -132}
    assert s1.terms[(2,)].coeffs == {(1,): -5940, (0,): 7548}
    assert s1.starting_monomial() == "x2^12*x3^-2"
    assert s1.complete


def test_method1_log_degree_bounded_by_order(conic_pipe):
    v = (0, 12, -2)
    cls = conic_pipe.classification(v)
    for j in range(cls.derivative_bound()):
        out = frobenius_method1(v, (1, -2, 1), cls, j,
                                conic_pipe.weight_cap, conic_pipe.radius)
        assert out.max_log_degree <= j


def test_method1_rejects_orders_at_the_bound(conic_pipe):
    v = (0, 12, -2)
    cls = conic_pipe.classification(v)
    with pytest.raises(DerivativeOrderError) as err:
        frobenius_method1(v, (1, -2, 1), cls, 2, conic_pipe.weight_cap,
                          conic_pipe.radius)
    assert "orders up to 1" in str(err.value)
    with pytest.raises(DerivativeOrderError):
        frobenius_method1(v, (1, -2, 1), cls, -1, conic_pipe.weight_cap,
                          conic_pipe.radius)


def test_method1_rejects_off_lattice_direction(conic_pipe):
    cls = conic_pipe.classification((0, 12, -2))
    with pytest.raises(InputValidationError):
        frobenius_method1((0, 12, -2), (1, -1, 0), cls, 0,
                          conic_pipe.weight_cap, conic_pipe.radius)


def test_method1_rejects_direction_vanishing_on_base(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    # direction (0,1,-3,2) has a zero on base coordinate 1
    with pytest.raises(PerturbationZeroError):
        frobenius_method1(v, (0, 1, -3, 2), cls, 0, curve_pipe.weight_cap,
                          curve_pipe.radius)


def test_method1_curve_decomposes_into_phi_pair(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    phis = {}
    for pv in [(1, -4, 1, 0), (0, 0, -7, 5)]:
        phis[pv] = phi_series(pv, curve_pipe.basis, (3, 0, 0, 1),
                              curve_pipe.weight_cap, curve_pipe.radius)
    for b, c2, c3 in [((1, -2, 2, -1), -6, -6),
                      ((1, -1, -1, 1), -6, 6),
                      ((2, -3, 1, 0), -3, -1)]:
        out = frobenius_method1(v, b, cls, 0, curve_pipe.weight_cap,
                                curve_pipe.radius)
        expected = phis[(1, -4, 1, 0)].rebase(v).scale(c2).add(
            phis[(0, 0, -7, 5)].rebase(v).scale(c3))
        assert out.equal_on_common_region(expected)
        assert out.max_log_degree == 0


def test_method1_condition_crossing_pairs(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    cert = method1_condition(v, [(1, -2, 2, -1)], cls)
    got = {(i, j): val for i, j, val in cert.entries}
    assert got == {(fs(2), fs(0, 2)): -1, (fs(1), fs(1, 3)): -1}
    assert not cert.all_zero


def test_method1_condition_cancels_for_the_pair(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    cert = method1_condition(v, [(1, -2, 2, -1), (1, -1, -1, 1)], cls)
    assert {val for _, _, val in cert.entries} == {0}
    assert cert.all_zero
    single = method1_condition(v, [(1, -1, -1, 1)], cls)
    assert {(i, j): val for i, j, val in single.entries} == {
        (fs(2), fs(0, 2)): 1, (fs(1), fs(1, 3)): 1}


def test_method1_extra_needs_vanishing_sums(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    with pytest.raises(ConditionNotMetError):
        frobenius_method1_extra(v, [(1, -2, 2, -1)], cls,
                                curve_pipe.weight_cap, curve_pipe.radius)


def test_method1_extra_boundary_order(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    out, cert = frobenius_method1_extra(
        v, [(1, -2, 2, -1), (1, -1, -1, 1)], cls, curve_pipe.weight_cap,
        curve_pipe.radius)
    assert cert.all_zero
    assert out.max_log_degree == 1
    assert out.terms
    assert out.complete


def test_method2_order_zero_is_phi(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    out, cert = frobenius_method2(v, bs, cls, (0, 0), square_pipe.weight_cap,
                                  square_pipe.radius)
    assert cert is None
    assert list(out.terms) == [(0, 0)]
    assert out.terms[(0, 0)].coeffs == {(0, 0): 1}
    assert out.starting_monomial() == "x5"


def test_method2_single_log_orders(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    for p, origin_key in [((1, 0), (1, 0)), ((0, 1), (0, 1))]:
        out, cert = frobenius_method2(v, bs, cls, p, square_pipe.weight_cap,
                                      square_pipe.radius)
        assert cert is None
        assert out.terms[(0, 0)].coeffs == {origin_key: 1}
        assert out.max_log_degree == 1
        # every correction term is log-free
        for x, poly in out.terms.items():
            if x != (0, 0):
                assert set(poly.coeffs) <= {(0, 0)}


def test_method2_single_log_correction_value(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    out, _ = frobenius_method2(v, bs, cls, (1, 0), square_pipe.weight_cap,
                               square_pipe.radius)
    assert out.terms[(0, 1)].coeffs == {(0, 0): -2}


def test_method2_boundary_order_with_certificate(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    out, cert = frobenius_method2(v, bs, cls, (1, 1), square_pipe.weight_cap,
                                  square_pipe.radius)
    assert cert is not None and cert.all_zero
    assert out.max_log_degree == 2
    assert out.terms[(0, 0)].coeffs == {(1, 1): 1}
    off_origin_keys = set()
    for x, poly in out.terms.items():
        if x != (0, 0):
            off_origin_keys |= set(poly.coeffs)
    assert off_origin_keys == {(0, 0), (0, 1), (1, 0)}


def test_method2_condition_partition_sums(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    balanced = method2_condition(v, bs, cls, (1, 1))
    assert balanced.all_zero
    skew = method2_condition(v, bs, cls, (2, 0))
    got = {(i, j): val for i, j, val in skew.entries}
    assert got == {(fs(), fs(0, 2)): 1, (fs(), fs(1, 3)): 0}
    assert not skew.all_zero


def test_method2_rejects_unbalanced_boundary_order(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    with pytest.raises(ConditionNotMetError):
        frobenius_method2(v, bs, cls, (2, 0), square_pipe.weight_cap,
                          square_pipe.radius)
    with pytest.raises(DerivativeOrderError):
        frobenius_method2(v, bs, cls, (2, 1), square_pipe.weight_cap,
                          square_pipe.radius)


def test_method2_agrees_with_method1_single_direction(conic_pipe):
    # one direction, empty prefactor difference: the two constructions
    # coincide order by order
    v = (0, 12, -2)
    cls = conic_pipe.classification(v)
    for q in (0, 1):
        m2, _ = frobenius_method2(v, [(1, -2, 1)], cls, (q,),
                                  conic_pipe.weight_cap, conic_pipe.radius)
        m1 = frobenius_method1(v, (1, -2, 1), cls, q, conic_pipe.weight_cap,
                               conic_pipe.radius)
        assert m2.canonical_terms() == m1.canonical_terms()


def test_method2_prefactor_shifts_orders_curve(curve_pipe):
    # base support {1,2} with empty core: the factor prefactor eats one
    # derivative order and scales by the product of base entries
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    b = (1, -2, 2, -1)
    zero, _ = frobenius_method2(v, [b], cls, (0,), curve_pipe.weight_cap,
                                curve_pipe.radius)
    assert zero.terms == {}
    one, _ = frobenius_method2(v, [b], cls, (1,), curve_pipe.weight_cap,
                               curve_pipe.radius)
    m1 = frobenius_method1(v, b, cls, 0, curve_pipe.weight_cap,
                           curve_pipe.radius)
    assert one.canonical_terms() == m1.scale(-2).canonical_terms()


def test_method2_needs_a_direction_moving_the_base(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    with pytest.raises(PerturbationZeroError):
        frobenius_method2(v, [(0, 1, -3, 2)], cls, (0,),
                          curve_pipe.weight_cap, curve_pipe.radius)


def test_starting_monomials_square_count(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    outs = [frobenius_method2(v, bs, cls, p, square_pipe.weight_cap,
                              square_pipe.radius)[0]
            for p in [(0, 0), (1, 0), (0, 1), (1, 1)]]
    monos = starting_monomials(outs)
    assert monos == [
        "x5",
        "x5*log(x1*x3*x5^-2)",
        "x5*log(x2*x4*x5^-2)",
        "x5*log(x1*x3*x5^-2)*log(x2*x4*x5^-2)"]
    assert len(set(monos)) == 4


def test_method1_on_restricted_classification(conic_pipe):
    from gkzseries.exponents import restrict_classification
    v = (2, 8, 0)
    cls = restrict_classification(conic_pipe.classification(v),
                                  {frozenset()})
    assert cls.derivative_bound() == 1
    out = frobenius_method1(v, (1, -2, 1), cls, 0, conic_pipe.weight_cap,
                            conic_pipe.radius)
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    assert out.canonical_terms() == phi.canonical_terms()
    assert out.complete

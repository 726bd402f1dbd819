"""Operator checks: derivatives, binomials, homogeneity, residual reports."""

from fractions import Fraction

from gkzseries.frobenius import (frobenius_method1, frobenius_method1_extra,
                                 frobenius_method2)
from gkzseries.series import LogPolynomial, LogSeries, phi_series
from gkzseries.toric import Binomial
from gkzseries.verifier import (apply_binomial, apply_derivative,
                                apply_homogeneity, operator_margin, verify)


def test_operator_margin_values(conic_pipe, curve_pipe, square_pipe):
    assert operator_margin(conic_pipe.system, (1, 0, 1)) == 2
    assert operator_margin(curve_pipe.system, (3, 0, 0, 1)) == 6
    assert operator_margin(square_pipe.system, (1, 1, 1, 1, 0)) == 2


def test_apply_derivative_pure_monomial(square_pipe):
    phi = phi_series((0, 0, 0, 0, 1), square_pipe.basis, (1, 1, 1, 1, 0),
                     square_pipe.weight_cap, square_pipe.radius)
    d5 = apply_derivative(phi, 4)
    assert list(d5.terms) == [(0, 0)]
    assert d5.terms[(0, 0)].coeffs == {(): 1}
    assert d5.v == (0, 0, 0, 0, 0)
    # a derivative in a variable absent from the term kills it
    d1 = apply_derivative(phi, 0)
    assert d1.terms == {}


def test_apply_derivative_log_chain_rule(square_pipe):
    # d/dx5 of x5*log(...x5^-2) adds the log derivative term -2
    v = (0, 0, 0, 0, 1)
    b = (1, 0, 1, 0, -2)
    poly = LogPolynomial.monomial(1, (1,), 1)
    series = LogSeries(v, square_pipe.basis, (1, 1, 1, 1, 0), (b,),
                       {(0, 0): poly}, Fraction(20), 10, False)
    out = apply_derivative(series, 4)
    assert out.terms[(0, 0)].coeffs == {(1,): 1, (0,): -2}


def test_apply_binomial_annihilates_phi(conic_pipe):
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    residual = apply_binomial(phi, Binomial.from_vector((1, -2, 1)))
    # exact annihilation below the cap; the truncation boundary may shed
    # a finite tail
    cap = phi.weight_cap_abs - operator_margin(conic_pipe.system, (1, 0, 1))
    assert all(residual.weight_of(x) > cap for x in residual.terms)


def test_apply_homogeneity_is_exact_on_every_term(conic_pipe):
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    system = conic_pipe.system
    for row, beta_i in zip(system.matrix, system.beta):
        assert apply_homogeneity(phi, row, beta_i).terms == {}


def test_verify_phi_conic(conic_pipe):
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    report = verify(phi, conic_pipe.system)
    assert report.passed
    assert report.margin == 2
    assert report.certified_cap == 20
    assert report.complete
    kinds = [op.kind for op in report.operators]
    assert kinds == ["toric", "homogeneity", "homogeneity"]
    for op in report.operators:
        assert op.passed
        if op.kind == "homogeneity":
            assert op.excluded_terms == 0


def test_verify_method1_outputs(conic_pipe):
    v = (0, 12, -2)
    cls = conic_pipe.classification(v)
    for j in (0, 1):
        out = frobenius_method1(v, (1, -2, 1), cls, j, conic_pipe.weight_cap,
                                conic_pipe.radius)
        report = verify(out, conic_pipe.system)
        assert report.passed
        assert report.certified_cap == out.weight_cap_abs - 2


def test_verify_method1_extra_curve(curve_pipe):
    v = (-1, -1, 0, 0)
    cls = curve_pipe.classification(v)
    out, _ = frobenius_method1_extra(v, [(1, -2, 2, -1), (1, -1, -1, 1)],
                                     cls, curve_pipe.weight_cap,
                                     curve_pipe.radius)
    report = verify(out, curve_pipe.system)
    assert report.passed
    assert report.margin == 6
    assert len(report.operators) == 4 + 2


def test_verify_method2_outputs(square_pipe):
    v = (0, 0, 0, 0, 1)
    cls = square_pipe.classification(v)
    bs = [(1, 0, 1, 0, -2), (0, 1, 0, 1, -2)]
    for p in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        out, _ = frobenius_method2(v, bs, cls, p, square_pipe.weight_cap,
                                   square_pipe.radius)
        report = verify(out, square_pipe.system)
        assert report.passed
        assert report.margin == 2


def test_verify_rejects_nonsolution(conic_pipe):
    # the log-free candidate at a non-minimal exponent satisfies the
    # homogeneities but not the toric operator
    naive = phi_series((0, 12, -2), conic_pipe.basis, (1, 0, 1),
                       conic_pipe.weight_cap, conic_pipe.radius)
    report = verify(naive, conic_pipe.system)
    assert not report.passed
    toric_ops = [op for op in report.operators if op.kind == "toric"]
    assert len(toric_ops) == 1
    assert not toric_ops[0].passed
    assert toric_ops[0].witness_exponent is not None
    assert toric_ops[0].witness_poly is not None
    homogeneity_ops = [op for op in report.operators
                       if op.kind == "homogeneity"]
    assert all(op.passed for op in homogeneity_ops)


def test_verify_detects_corrupted_coefficient(conic_pipe):
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    terms = dict(phi.terms)
    terms[(2,)] = LogPolynomial.constant(0, 71)  # true value is 70
    broken = LogSeries(phi.v, phi.basis, phi.w, phi.bindings, terms,
                       phi.weight_cap_abs, phi.radius, phi.complete)
    report = verify(broken, conic_pipe.system)
    assert not report.passed


def test_verify_custom_margin_shrinks_cap(conic_pipe):
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    report = verify(phi, conic_pipe.system, margin=Fraction(4))
    assert report.margin == 4
    assert report.certified_cap == 18
    assert report.passed


def test_verify_excluded_terms_counted(conic_pipe):
    # the log series has a cap-truncated tail, unlike the terminating phi,
    # so its boundary residual shows up as excluded rather than failing
    cls = conic_pipe.classification((0, 12, -2))
    series = frobenius_method1((0, 12, -2), (1, -2, 1), cls, 1,
                               conic_pipe.weight_cap, conic_pipe.radius)
    report = verify(series, conic_pipe.system)
    toric_op = report.operators[0]
    assert toric_op.passed
    assert toric_op.excluded_terms >= 1

    # a naturally terminating exact solution excludes nothing
    phi = phi_series((2, 8, 0), conic_pipe.basis, (1, 0, 1),
                     conic_pipe.weight_cap, conic_pipe.radius)
    full = verify(phi, conic_pipe.system)
    assert all(op.excluded_terms == 0 for op in full.operators)

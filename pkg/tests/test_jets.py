"""Jet arithmetic against independent derivative computations."""

import numpy as np
import pytest

from levelflow import jets
from levelflow.fields import ScalarField


def fd_derivative(f, p, iorder, jorder, h=1e-2):
    """Plain nested central differences of a bivariate function."""
    if iorder > 0:
        return (fd_derivative(f, (p[0] + h, p[1]), iorder - 1, jorder, h)
                - fd_derivative(f, (p[0] - h, p[1]), iorder - 1, jorder, h)) / (2 * h)
    if jorder > 0:
        return (fd_derivative(f, (p[0], p[1] + h), iorder, jorder - 1, h)
                - fd_derivative(f, (p[0], p[1] - h), iorder, jorder - 1, h)) / (2 * h)
    return f(p[0], p[1])


def test_expression_jet_matches_finite_differences():
    def f(x, y):
        return np.exp(0.3 * x) * np.log(2.0 + x * x + 0.5 * y * y) + np.arctan(x - 0.2 * y)

    def expr(x, y):
        return jets.exp(0.3 * x) * jets.log(2.0 + x * x + 0.5 * y * y) + jets.atan(x - 0.2 * y)

    field = ScalarField.from_expression(expr)
    p = (0.7, -0.4)
    j = field.jet(p)
    assert j.value[0] == pytest.approx(f(*p), abs=1e-14)
    assert j.grad[0, 0] == pytest.approx(fd_derivative(f, p, 1, 0), abs=1e-5)
    assert j.grad[0, 1] == pytest.approx(fd_derivative(f, p, 0, 1), abs=1e-5)
    assert j.hess[0, 0, 1] == pytest.approx(fd_derivative(f, p, 1, 1), abs=1e-4)
    assert j.third[0, 1] == pytest.approx(fd_derivative(f, p, 2, 1), abs=1e-3)
    assert j.fourth[0, 2] == pytest.approx(fd_derivative(f, p, 2, 2), rel=1e-3, abs=1e-3)


def test_division_and_power():
    field = ScalarField.from_expression(lambda x, y: (x * x + 1.0) / (y + 2.0))
    j = field.jet((1.0, 0.0))
    # f = (x^2+1)/(y+2): f_x = 2x/(y+2) = 1, f_yy = 2(x^2+1)/(y+2)^3 = 0.5
    assert j.grad[0, 0] == pytest.approx(1.0, abs=1e-14)
    assert j.hess[0, 1, 1] == pytest.approx(0.5, abs=1e-14)
    sq = ScalarField.from_expression(lambda x, y: jets.sqrt(x * x + y * y))
    assert sq.gradient((3.0, 4.0)) == pytest.approx([0.6, 0.8], abs=1e-14)


def test_trig_and_hyperbolic():
    f = ScalarField.from_expression(lambda x, y: jets.sin(x) * jets.cos(y) + jets.cosh(x))
    j = f.jet((0.3, 0.2))
    assert j.value[0] == pytest.approx(np.sin(0.3) * np.cos(0.2) + np.cosh(0.3), abs=1e-14)
    assert j.hess[0, 0, 0] == pytest.approx(-np.sin(0.3) * np.cos(0.2) + np.cosh(0.3),
                                            abs=1e-13)
    a = ScalarField.from_expression(lambda x, y: 2.0 * jets.atan(jets.exp(x)))
    # d/dt 2 arctan(e^t) = sech t, second derivative -sech t tanh t
    t = 0.7
    j = a.jet((t, 0.0))
    assert j.grad[0, 0] == pytest.approx(1.0 / np.cosh(t), abs=1e-14)
    assert j.hess[0, 0, 0] == pytest.approx(-np.tanh(t) / np.cosh(t), abs=1e-14)


def test_holomorphic_jets_log_and_monomial():
    # u = Re ln z = ln|z|: gradient (x, y)/r^2, harmonic
    z0 = np.array([0.6 + 0.8j])
    t = jets.holomorphic_jet(jets.log_z_coeffs(z0), "re")
    assert t.c[0, 0][0] == pytest.approx(0.0, abs=1e-15)  # ln|z0| = ln 1
    assert t.c[1, 0][0] == pytest.approx(0.6, abs=1e-15)
    assert t.c[0, 1][0] == pytest.approx(0.8, abs=1e-15)
    assert 2 * t.c[2, 0][0] + 2 * t.c[0, 2][0] == pytest.approx(0.0, abs=1e-15)
    # Im z^3 at z0 = 1+0j: value 0, d/dy = 3
    m = jets.holomorphic_jet(jets.monomial_coeffs(np.array([1.0 + 0j]), 3), "im")
    assert m.c[0, 0][0] == pytest.approx(0.0, abs=1e-15)
    assert m.c[0, 1][0] == pytest.approx(3.0, abs=1e-15)


def test_fd_fallback_consistency():
    f = ScalarField.from_callable(
        lambda p: np.exp(p[:, 0]) * np.sin(p[:, 1]), step=1e-3)
    g = ScalarField.from_expression(lambda x, y: jets.exp(x) * jets.sin(y))
    pts = np.array([[0.2, 0.7], [1.1, -0.3]])
    jf, jg = f.jet(pts), g.jet(pts)
    assert np.allclose(jf.grad, jg.grad, atol=1e-10)
    assert np.allclose(jf.hess, jg.hess, atol=1e-8)
    assert np.allclose(jf.third, jg.third, atol=1e-5)
    assert f.derivative_source == "nested_finite_difference"
    assert g.derivative_source == "closed_form"


def test_concurrent_evaluation_is_pure():
    # fields are immutable after construction; concurrent jet evaluation
    # must agree with the sequential result
    from concurrent.futures import ThreadPoolExecutor
    g = ScalarField.from_expression(lambda x, y: jets.exp(x) * jets.atan(y))
    pts = np.random.default_rng(0).uniform(-1, 1, size=(64, 2))
    expected = g.jet(pts).fourth
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: g.jet(pts).fourth, range(16)))
    for r in results:
        assert np.array_equal(r, expected)


def test_batch_evaluation_matches_pointwise():
    g = ScalarField.from_expression(lambda x, y: jets.log(1.0 + x * x + y * y) * jets.exp(-y))
    pts = np.array([[0.1, 0.2], [1.4, -0.6], [2.0, 0.0]])
    batch = g.jet(pts)
    for i, p in enumerate(pts):
        single = g.jet(p)
        assert np.allclose(single.value[0], batch.value[i], atol=0)
        assert np.allclose(single.fourth[0], batch.fourth[i], atol=0)

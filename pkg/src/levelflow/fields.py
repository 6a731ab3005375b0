"""Scalar fields on a chart with derivative tables up to fourth order.

A :class:`ScalarField` evaluates, at one point or a batch of points, the
value, gradient, Hessian, and the independent third- and fourth-order
coordinate derivatives.  Closed-form fields are defined either by an
ordinary formula evaluated in jet arithmetic (:mod:`levelflow.jets`) or by
complex Taylor coefficients of a holomorphic function; both routes are
exact up to roundoff.  Arbitrary user callables fall back to nested
central finite differences with one Richardson extrapolation level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import jets
from .jets import Taylor2

CLOSED_FORM = "closed_form"
FINITE_DIFFERENCE = "nested_finite_difference"


def as_points(p) -> tuple[np.ndarray, bool]:
    """Normalise a point or an (n, 2) array of points; flag the scalar case."""
    a = np.asarray(p, dtype=float)
    if a.ndim == 1:
        return a[None, :], True
    return a, False


@dataclass(frozen=True)
class FieldJet:
    """Pointwise derivative table of a scalar field.

    ``third`` holds (f_xxx, f_xxy, f_xyy, f_yyy) and ``fourth`` holds
    (f_xxxx, f_xxxy, f_xxyy, f_xyyy, f_yyyy), each batched along axis 0.
    """

    value: np.ndarray   # (n,)
    grad: np.ndarray    # (n, 2)
    hess: np.ndarray    # (n, 2, 2)
    third: np.ndarray   # (n, 4)
    fourth: np.ndarray  # (n, 5)

    def laplacian(self) -> np.ndarray:
        return self.hess[:, 0, 0] + self.hess[:, 1, 1]

    def grad_norm(self) -> np.ndarray:
        return np.hypot(self.grad[:, 0], self.grad[:, 1])


def _jet_from_taylor(t: Taylor2) -> FieldJet:
    c = t.c
    n = c.shape[2:]
    value = np.asarray(c[0, 0], dtype=float).reshape(n or (1,))
    grad = np.stack([c[1, 0], c[0, 1]], axis=-1).reshape(n + (2,) if n else (1, 2))
    hess = np.empty(n + (2, 2) if n else (1, 2, 2))
    hess[..., 0, 0] = 2.0 * c[2, 0]
    hess[..., 0, 1] = c[1, 1]
    hess[..., 1, 0] = c[1, 1]
    hess[..., 1, 1] = 2.0 * c[0, 2]
    third = np.stack([6.0 * c[3, 0], 2.0 * c[2, 1], 2.0 * c[1, 2], 6.0 * c[0, 3]],
                     axis=-1).reshape(n + (4,) if n else (1, 4))
    fourth = np.stack([24.0 * c[4, 0], 6.0 * c[3, 1], 4.0 * c[2, 2], 6.0 * c[1, 3],
                       24.0 * c[0, 4]], axis=-1).reshape(n + (5,) if n else (1, 5))
    return FieldJet(value, grad, hess, third, fourth)


class ScalarField:
    """Real field on chart coordinates with derivatives up to order 4.

    ``radial`` marks fields that depend only on the chart's radial
    coordinate (|z| on conformal charts, t on warped ones); several level-set
    operations have exact fast paths for those.
    """

    def __init__(self, jet_fn: Callable[[np.ndarray], FieldJet], *,
                 source: str = CLOSED_FORM, radial: bool = False,
                 singular_points: Sequence = ()):
        self._jet_fn = jet_fn
        self.derivative_source = source
        self.radial = radial
        self.singular_points = tuple(np.asarray(q, dtype=float) for q in singular_points)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_expression(cls, expr: Callable[[Taylor2, Taylor2], Taylor2], *,
                        radial: bool = False, singular_points: Sequence = ()):
        def jet_fn(pts: np.ndarray) -> FieldJet:
            x, y = Taylor2.seeds(pts[:, 0], pts[:, 1])
            out = expr(x, y)
            if not isinstance(out, Taylor2):  # constant expressions
                out = Taylor2.constant(np.broadcast_to(out, pts[:, 0].shape), x)
            return _jet_from_taylor(out)

        return cls(jet_fn, source=CLOSED_FORM, radial=radial,
                   singular_points=singular_points)

    @classmethod
    def from_holomorphic_sum(cls, terms, constant: float = 0.0, *,
                             radial: bool = False, singular_points: Sequence = ()):
        """Field ``constant + sum_k weight_k * part_k(f_k)``.

        ``terms`` is a sequence of ``(coeff_fn, part, weight)`` where
        ``coeff_fn(z0)`` returns complex Taylor coefficients of a holomorphic
        function and ``part`` is ``"re"`` or ``"im"``.
        """
        terms = tuple(terms)

        def jet_fn(pts: np.ndarray) -> FieldJet:
            z0 = pts[:, 0] + 1j * pts[:, 1]
            acc = None
            for coeff_fn, part, weight in terms:
                t = jets.holomorphic_jet(coeff_fn(z0), part)
                acc = t * weight if acc is None else acc + t * weight
            acc = acc + constant
            return _jet_from_taylor(acc)

        return cls(jet_fn, source=CLOSED_FORM, radial=radial,
                   singular_points=singular_points)

    @classmethod
    def from_callable(cls, f: Callable[[np.ndarray], np.ndarray], *,
                      step: float | None = None, diameter: float = 1.0,
                      radial: bool = False, singular_points: Sequence = ()):
        """Black-box field; derivatives by nested central differences.

        The base step defaults to 1e-3 times the domain diameter and every
        derivative level applies one Richardson extrapolation.
        """
        h = 1e-3 * diameter if step is None else step

        def fd(g, axis):
            e = np.zeros(2)
            e[axis] = 1.0

            def d(pts):
                def delta(s):
                    return (g(pts + s * e) - g(pts - s * e)) / (2.0 * s)
                return (4.0 * delta(h / 2.0) - delta(h)) / 3.0

            return d

        def vec(pts):
            return np.asarray(f(pts), dtype=float)

        dx, dy = fd(vec, 0), fd(vec, 1)
        dxx, dxy, dyy = fd(dx, 0), fd(dx, 1), fd(dy, 1)
        d3 = [fd(dxx, 0), fd(dxx, 1), fd(dxy, 1), fd(dyy, 1)]
        d4 = [fd(d3[0], 0), fd(d3[0], 1), fd(d3[1], 1), fd(d3[2], 1), fd(d3[3], 1)]

        def jet_fn(pts: np.ndarray) -> FieldJet:
            value = vec(pts)
            grad = np.stack([dx(pts), dy(pts)], axis=-1)
            hess = np.empty(pts.shape[:1] + (2, 2))
            hess[:, 0, 0] = dxx(pts)
            hess[:, 0, 1] = hess[:, 1, 0] = dxy(pts)
            hess[:, 1, 1] = dyy(pts)
            third = np.stack([d(pts) for d in d3], axis=-1)
            fourth = np.stack([d(pts) for d in d4], axis=-1)
            return FieldJet(value, grad, hess, third, fourth)

        return cls(jet_fn, source=FINITE_DIFFERENCE, radial=radial,
                   singular_points=singular_points)

    # -- evaluation ----------------------------------------------------------

    def jet(self, p) -> FieldJet:
        pts, _ = as_points(p)
        return self._jet_fn(pts)

    def value(self, p):
        pts, single = as_points(p)
        v = self._jet_fn(pts).value
        return float(v[0]) if single else v

    def gradient(self, p):
        pts, single = as_points(p)
        g = self._jet_fn(pts).grad
        return g[0] if single else g

    def hessian(self, p):
        pts, single = as_points(p)
        h = self._jet_fn(pts).hess
        return h[0] if single else h

    def laplacian(self, p):
        pts, single = as_points(p)
        lap = self._jet_fn(pts).laplacian()
        return float(lap[0]) if single else lap


# -- generic factor/field constructors ---------------------------------------

def constant_field(value: float) -> ScalarField:
    return ScalarField.from_expression(lambda x, y: x * 0.0 + value, radial=True)


def radial_log_field(a: float, b: float, c: float) -> ScalarField:
    """phi(x, y) = a + b * ln(1 + c * (x^2 + y^2))."""

    def expr(x, y):
        return a + b * jets.log((x * x + y * y) * c + 1.0)

    return ScalarField.from_expression(expr, radial=True)


def half_plane_factor() -> ScalarField:
    """phi = -ln y, the hyperbolic upper half-plane factor (K = -1)."""
    return ScalarField.from_expression(lambda x, y: -jets.log(y))


def log_modulus_field(weight: float = 1.0, center=(0.0, 0.0)) -> ScalarField:
    """u = weight * ln|z - center| with closed-form derivatives."""
    cx, cy = float(center[0]), float(center[1])
    zc = cx + 1j * cy

    def coeffs(z0):
        return jets.log_z_coeffs(z0 - zc)

    singular = [(cx, cy)]
    return ScalarField.from_holomorphic_sum(
        [(coeffs, "re", weight)], radial=(cx == 0.0 and cy == 0.0),
        singular_points=singular)

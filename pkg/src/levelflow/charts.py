"""Coordinate charts, metric data and curvature.

Two chart kinds cover everything in the package:

* :class:`ConformalChart` -- planar coordinates with metric
  ``exp(2*phi) * (dx^2 + dy^2)``; the Gaussian curvature is
  ``K = -exp(-2*phi) * lap0(phi)`` and the Christoffel symbols are built
  from first derivatives of the factor.
* :class:`WarpedChart` -- cylinder coordinates (t, theta) with metric
  ``dt^2 + w(t)^2 dtheta^2`` and curvature ``K = -w''(t)/w(t)``; scalar
  fields on it are restricted to radial ones (functions of t), for which
  the Laplacian is exactly ``f'' + (w'/w) f'``.

All objects are immutable after construction and evaluation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import jets
from .errors import DomainError, SingularPointError
from .fields import ScalarField, as_points, constant_field, radial_log_field

SINGULAR_EXCLUSION = 1e-9


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class MetricPointData:
    """Pointwise metric package: conformal weight, curvature and Christoffels.

    ``christoffels`` holds (G^x_xx, G^x_xy, G^x_yy, G^y_xx, G^y_xy, G^y_yy).
    """

    conf: float
    K: float
    gradK: np.ndarray
    christoffels: np.ndarray


class ConformalChart:
    """Annulus (or punctured-disc / unbounded) chart with factor ``phi``.

    ``inner_radius``/``outer_radius`` bound the annulus ``r_in < |z| < r_out``
    centred at the origin; ``outer_radius=None`` disables the bounds check so
    the chart can be used for pointwise identity checks on other domains
    (half-plane factors and the like).
    """

    kind = "conformal"

    def __init__(self, factor: ScalarField, inner_radius: float = 1.0,
                 outer_radius: float | None = None):
        if outer_radius is not None:
            if inner_radius < 0 or outer_radius <= inner_radius:
                raise DomainError(
                    f"need 0 <= inner_radius < outer_radius, got "
                    f"({inner_radius}, {outer_radius})")
        self.factor = factor
        self.inner_radius = float(inner_radius)
        self.outer_radius = None if outer_radius is None else float(outer_radius)
        self.singular_points = factor.singular_points

    # -- domain handling ----------------------------------------------------

    def check_points(self, p) -> np.ndarray:
        pts, _ = as_points(p)
        for q in self.singular_points:
            d = np.hypot(pts[:, 0] - q[0], pts[:, 1] - q[1])
            if np.any(d < SINGULAR_EXCLUSION):
                raise SingularPointError(
                    f"evaluation within {SINGULAR_EXCLUSION:g} of singular point "
                    f"({q[0]:g}, {q[1]:g})")
        if self.outer_radius is not None:
            r = np.hypot(pts[:, 0], pts[:, 1])
            eps = 1e-12 * max(1.0, self.outer_radius)
            if np.any(r < self.inner_radius - eps) or np.any(r > self.outer_radius + eps):
                raise DomainError("point outside the chart annulus")
        return pts

    # -- metric data ---------------------------------------------------------

    def conf(self, p):
        pts, single = as_points(p)
        v = np.exp(2.0 * self.factor.jet(pts).value)
        return float(v[0]) if single else v

    def gauss_curvature(self, p):
        pts = self.check_points(p)
        _, single = as_points(p)
        j = self.factor.jet(pts)
        K = -np.exp(-2.0 * j.value) * j.laplacian()
        return float(K[0]) if single else K

    def grad_gauss_curvature(self, p):
        pts = self.check_points(p)
        _, single = as_points(p)
        j = self.factor.jet(pts)
        lap = j.laplacian()
        # d_i lap(phi) from third derivatives: (f_xxx + f_xyy, f_xxy + f_yyy)
        dlap = np.stack([j.third[:, 0] + j.third[:, 2],
                         j.third[:, 1] + j.third[:, 3]], axis=-1)
        g = np.exp(-2.0 * j.value)[:, None] * (2.0 * j.grad * lap[:, None] - dlap)
        return g[0] if single else g

    def christoffels(self, p):
        pts = self.check_points(p)
        _, single = as_points(p)
        g = self.factor.jet(pts).grad
        px, py = g[:, 0], g[:, 1]
        out = np.stack([px, py, -px, -py, px, py], axis=-1)
        return out[0] if single else out

    def point_data(self, p) -> MetricPointData:
        pts = self.check_points(p)
        if pts.shape[0] != 1:
            raise ValueError("point_data takes a single point")
        return MetricPointData(
            conf=float(np.exp(2.0 * self.factor.jet(pts).value)[0]),
            K=float(self.gauss_curvature(pts)[0]),
            gradK=self.grad_gauss_curvature(pts)[0],
            christoffels=self.christoffels(pts)[0],
        )


class WarpedChart:
    """Cylinder chart (t, theta) with metric dt^2 + w(t)^2 dtheta^2.

    ``w(t) = circumference_scale * shape(t)``; the shape is a radial
    :class:`ScalarField` evaluated at points (t, .), so its derivative table
    provides w', w'', w''' in closed form.
    """

    kind = "warped"

    def __init__(self, t_min: float, t_max: float, circumference_scale: float,
                 shape: ScalarField):
        if t_max <= t_min:
            raise DomainError("need t_min < t_max")
        if circumference_scale <= 0:
            raise DomainError("circumference scale must be positive")
        self.t_min = float(t_min)
        self.t_max = float(t_max)
        self.circumference_scale = float(circumference_scale)
        self.shape = shape
        self.singular_points = ()
        w, _, _, _, _ = self.warp_jet(np.linspace(t_min, t_max, 33))
        if np.any(w <= 0):
            raise DomainError("warp function must be positive on [t_min, t_max]")

    @classmethod
    def cosh_cylinder(cls, scale: float, t_min: float, t_max: float) -> "WarpedChart":
        """w(t) = scale * cosh t, the constant-curvature (K = -1) cylinder."""
        shape = ScalarField.from_expression(lambda t, _th: jets.cosh(t), radial=True)
        return cls(t_min, t_max, scale, shape)

    def check_points(self, p) -> np.ndarray:
        pts, _ = as_points(p)
        eps = 1e-12 * max(1.0, abs(self.t_min), abs(self.t_max))
        if np.any(pts[:, 0] < self.t_min - eps) or np.any(pts[:, 0] > self.t_max + eps):
            raise DomainError("t outside [t_min, t_max]")
        return pts

    def warp_jet(self, t):
        """w and its first four t-derivatives at t (arrays)."""
        t = np.asarray(t, dtype=float)
        pts = np.stack([t, np.zeros_like(t)], axis=-1)
        j = self.shape.jet(pts)
        s = self.circumference_scale
        return (s * j.value, s * j.grad[:, 0], s * j.hess[:, 0, 0],
                s * j.third[:, 0], s * j.fourth[:, 0])

    def gauss_curvature(self, p):
        pts = self.check_points(p)
        _, single = as_points(p)
        w, _, w2, _, _ = self.warp_jet(pts[:, 0])
        K = -w2 / w
        return float(K[0]) if single else K

    def grad_gauss_curvature(self, p):
        pts = self.check_points(p)
        _, single = as_points(p)
        w, w1, w2, w3, _ = self.warp_jet(pts[:, 0])
        dK = -(w3 * w - w2 * w1) / w**2
        out = np.stack([dK, np.zeros_like(dK)], axis=-1)
        return out[0] if single else out

    def christoffels(self, p):
        # (G^t_tt, G^t_ttheta, G^t_thetatheta, G^theta_tt, G^theta_ttheta, G^theta_thetatheta)
        pts = self.check_points(p)
        _, single = as_points(p)
        w, w1, _, _, _ = self.warp_jet(pts[:, 0])
        zero = np.zeros_like(w)
        out = np.stack([zero, zero, -w * w1, zero, w1 / w, zero], axis=-1)
        return out[0] if single else out

    def point_data(self, p) -> MetricPointData:
        pts = self.check_points(p)
        return MetricPointData(
            conf=1.0,
            K=float(self.gauss_curvature(pts)[0]),
            gradK=self.grad_gauss_curvature(pts)[0],
            christoffels=self.christoffels(pts)[0],
        )


# -- named factors ------------------------------------------------------------

def flat_factor() -> ScalarField:
    """phi = 0: the Euclidean annulus."""
    return constant_field(0.0)


def sphere_cap_factor(c: float = 0.1) -> ScalarField:
    """phi = ln(1 - c r^2): curvature 4c/(1 - c r^2)^4, positive for c > 0."""
    return radial_log_field(0.0, 1.0, -c)


def stereographic_sphere_factor() -> ScalarField:
    """phi = ln(2 / (1 + r^2)): the round unit sphere, K = 1."""
    return radial_log_field(np.log(2.0), -1.0, 1.0)


# -- chart-dispatched operations ----------------------------------------------

def gauss_curvature(chart, p):
    """Gaussian curvature at p (conformal: -e^{-2 phi} lap phi; warped: -w''/w)."""
    return chart.gauss_curvature(p)


def grad_gauss_curvature(chart, p):
    """Coordinate gradient of the Gaussian curvature at p."""
    return chart.grad_gauss_curvature(p)


def metric_gradient_norm(u, chart, p):
    """|grad u| in the surface metric.

    Conformal charts: e^{-phi} |grad_0 u|; warped charts (radial u): |u'(t)|.
    """
    pts = chart.check_points(p)
    _, single = as_points(p)
    if chart.kind == "conformal":
        phi = chart.factor.jet(pts).value
        g = u.jet(pts).grad
        out = np.exp(-phi) * np.hypot(g[:, 0], g[:, 1])
    else:
        _require_radial(u)
        out = np.abs(u.jet(pts).grad[:, 0])
    return float(out[0]) if single else out


def _require_radial(u):
    if not getattr(u, "radial", False):
        raise DomainError("warped charts support radial fields (functions of t) only")

"""Truncated bivariate Taylor arithmetic (degree 4).

Every closed-form scalar field in this package is written once as an
ordinary formula and evaluated on jet seeds; all coordinate derivatives up
to fourth order then fall out exactly (up to roundoff), which is what the
pointwise identity checks need.  A jet stores the scaled coefficients

    c[i, j] = d^(i+j) f / (dx^i dy^j) / (i! j!),        i + j <= 4,

in an array of shape ``(5, 5)`` or ``(5, 5, n)`` so that one jet carries a
whole batch of evaluation points in its trailing axis.  Entries with
``i + j > 4`` are kept at zero.

Holomorphic building blocks (``Re ln(z - a)``, ``Re z^n``, ...) get a
dedicated constructor that turns complex Taylor coefficients into real
jets, which is both faster and less noisy than composing the equivalent
real formula.
"""

from __future__ import annotations

import math

import numpy as np

DEG = 4

# (i, j) pairs with i + j <= DEG, and for each the (a, b) <= (i, j) splits
# used by truncated multiplication.
_PAIRS = [(i, j) for i in range(DEG + 1) for j in range(DEG + 1 - i)]
_MUL_TERMS = {
    (i, j): [(a, b) for a in range(i + 1) for b in range(j + 1)]
    for (i, j) in _PAIRS
}


class Taylor2:
    """Degree-4 Taylor expansion of a scalar function of two variables."""

    __slots__ = ("c",)

    def __init__(self, c: np.ndarray):
        self.c = c

    # -- seeding -----------------------------------------------------------

    @staticmethod
    def seeds(x0, y0) -> tuple["Taylor2", "Taylor2"]:
        """Jets of the coordinate functions at (x0, y0); inputs may be arrays."""
        x0 = np.asarray(x0, dtype=float)
        y0 = np.asarray(y0, dtype=float)
        shape = (DEG + 1, DEG + 1) + np.broadcast_shapes(x0.shape, y0.shape)
        cx = np.zeros(shape)
        cy = np.zeros(shape)
        cx[0, 0] = x0
        cx[1, 0] = 1.0
        cy[0, 0] = y0
        cy[0, 1] = 1.0
        return Taylor2(cx), Taylor2(cy)

    @staticmethod
    def constant(value, like: "Taylor2") -> "Taylor2":
        c = np.zeros_like(like.c)
        c[0, 0] = value
        return Taylor2(c)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Taylor2):
            return Taylor2(self.c + other.c)
        c = self.c.copy()
        c[0, 0] = c[0, 0] + other
        return Taylor2(c)

    __radd__ = __add__

    def __neg__(self):
        return Taylor2(-self.c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Taylor2) else -np.asarray(other, float))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Taylor2):
            return Taylor2(self.c * other)
        a, b = self.c, other.c
        out = np.zeros_like(a if a.ndim >= b.ndim else b)
        for (i, j), terms in _MUL_TERMS.items():
            acc = 0.0
            for (p, q) in terms:
                acc = acc + a[p, q] * b[i - p, j - q]
            out[i, j] = acc
        return Taylor2(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Taylor2):
            return self * other._compose(_recip_series(other.c[0, 0]))
        return Taylor2(self.c / other)

    def __rtruediv__(self, other):
        return self._compose(_recip_series(self.c[0, 0])) * other

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("integer power >= 0 expected; use powf for real exponents")
        out = Taylor2.constant(1.0, self)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- composition with a univariate function -----------------------------

    def _compose(self, series: np.ndarray) -> "Taylor2":
        """Plug ``self`` into g given g's scaled derivatives at self's value.

        ``series[k] = g^(k)(u0) / k!`` for k = 0..4, with u0 = self.c[0, 0].
        """
        d = Taylor2(self.c.copy())
        d.c[0, 0] = 0.0
        out = Taylor2.constant(series[DEG], self)
        for k in range(DEG - 1, -1, -1):
            out = out * d
            out.c[0, 0] = out.c[0, 0] + series[k]
        return out


def _recip_series(u0):
    g = np.empty((DEG + 1,) + np.shape(u0))
    inv = 1.0 / u0
    acc = inv
    for k in range(DEG + 1):
        g[k] = acc
        acc = -acc * inv
    return g


def log(u: Taylor2) -> Taylor2:
    u0 = u.c[0, 0]
    g = np.empty((DEG + 1,) + np.shape(u0))
    g[0] = np.log(u0)
    inv = 1.0 / u0
    acc = inv
    for k in range(1, DEG + 1):
        g[k] = acc / k if k % 2 else -acc / k
        acc = acc * inv
    # sign pattern: d^k log = (-1)^(k-1) (k-1)!/u^k  ->  g[k] = (-1)^(k-1)/(k u^k)
    return u._compose(g)


def exp(u: Taylor2) -> Taylor2:
    u0 = u.c[0, 0]
    e = np.exp(u0)
    g = np.array([e / math.factorial(k) for k in range(DEG + 1)])
    return u._compose(g)


def powf(u: Taylor2, p: float) -> Taylor2:
    u0 = u.c[0, 0]
    g = np.empty((DEG + 1,) + np.shape(u0))
    coeff = 1.0
    for k in range(DEG + 1):
        g[k] = coeff * u0 ** (p - k)
        coeff *= (p - k) / (k + 1)
    return u._compose(g)


def sqrt(u: Taylor2) -> Taylor2:
    return powf(u, 0.5)


def atan(u: Taylor2) -> Taylor2:
    x = u.c[0, 0]
    q = 1.0 + x * x
    g = np.empty((DEG + 1,) + np.shape(x))
    g[0] = np.arctan(x)
    g[1] = 1.0 / q
    g[2] = -x / q**2
    g[3] = (3.0 * x * x - 1.0) / (3.0 * q**3)
    g[4] = x * (1.0 - x * x) / q**4
    return u._compose(g)


def sin(u: Taylor2) -> Taylor2:
    u0 = u.c[0, 0]
    s, c = np.sin(u0), np.cos(u0)
    g = np.array([s, c, -s / 2.0, -c / 6.0, s / 24.0])
    return u._compose(g)


def cos(u: Taylor2) -> Taylor2:
    u0 = u.c[0, 0]
    s, c = np.sin(u0), np.cos(u0)
    g = np.array([c, -s, -c / 2.0, s / 6.0, c / 24.0])
    return u._compose(g)


def cosh(u: Taylor2) -> Taylor2:
    return (exp(u) + exp(-u)) * 0.5


def sinh(u: Taylor2) -> Taylor2:
    return (exp(u) - exp(-u)) * 0.5


_BINOM = [[math.comb(k, j) for j in range(k + 1)] for k in range(DEG + 1)]
_I_POW = [1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j, 1.0 + 0.0j]


def holomorphic_jet(coeffs: np.ndarray, part: str) -> Taylor2:
    """Jet of Re f or Im f from complex Taylor coefficients of holomorphic f.

    ``coeffs[k] = f^(k)(z0) / k!`` for k = 0..4, batched along trailing axes.
    Uses (dx + i dy)^k = sum_j C(k,j) i^j dx^(k-j) dy^j.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    out = np.zeros((DEG + 1, DEG + 1) + coeffs.shape[1:])
    take = np.real if part == "re" else np.imag
    for k in range(DEG + 1):
        for j in range(k + 1):
            out[k - j, j] = take(coeffs[k] * (_BINOM[k][j] * _I_POW[j]))
    return Taylor2(out)


def log_z_coeffs(z0: np.ndarray) -> np.ndarray:
    """Complex Taylor coefficients of ln z at z0 (principal branch value)."""
    z0 = np.asarray(z0, dtype=complex)
    out = np.empty((DEG + 1,) + z0.shape, dtype=complex)
    out[0] = np.log(np.abs(z0)) + 1j * np.arctan2(z0.imag, z0.real)
    inv = 1.0 / z0
    acc = inv
    for k in range(1, DEG + 1):
        out[k] = acc / k if k % 2 else -acc / k
        acc = acc * inv
    return out


def monomial_coeffs(z0: np.ndarray, n: int) -> np.ndarray:
    """Complex Taylor coefficients of z^n at z0."""
    z0 = np.asarray(z0, dtype=complex)
    out = np.zeros((DEG + 1,) + z0.shape, dtype=complex)
    for k in range(min(n, DEG) + 1):
        out[k] = math.comb(n, k) * z0 ** (n - k)
    return out


def inverse_coeffs(z0: np.ndarray) -> np.ndarray:
    """Complex Taylor coefficients of 1/z at z0."""
    z0 = np.asarray(z0, dtype=complex)
    out = np.empty((DEG + 1,) + z0.shape, dtype=complex)
    inv = 1.0 / z0
    acc = inv
    for k in range(DEG + 1):
        out[k] = acc
        acc = -acc * inv
    return out

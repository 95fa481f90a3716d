"""Ricci operator, ``H0^2`` and the generalized Ricci flow vector field.

Two independent routes to the flow are provided:

* :func:`grf_rhs_assembled` builds ``-2 Ric + 1/2 H0^2`` block by block from
  the Ricci operator and the ``H_Q^2`` formulas;
* :func:`grf_rhs_closed` evaluates the three rational functions of the
  reduced ODE system directly, grouped for accuracy near ``c1 = 1``.

They share no code, so agreement between them is a transcription check.
The ``*_kernel`` functions are unguarded and broadcast over numpy arrays;
the integrator calls them at trial points that may leave the positive cone.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .space import AlignedParams, CartanCoefficients, DiagonalMetric, check_positive, h0_coefficients


class RicciDiag(NamedTuple):
    """Eigenvalues of the Ricci operator on ``p1, p2, p3``."""
    r1: float
    r2: float
    r3: float


class H2Diag(NamedTuple):
    """Coefficients of ``(H0)^2_g`` relative to ``g_kil`` on each block."""
    h1: float
    h2: float
    h3: float


class FlowField(NamedTuple):
    """Time derivatives ``(x1', x2', x3')``."""
    f1: float
    f2: float
    f3: float

    def as_array(self) -> np.ndarray:
        return np.array(self)


def _coords(g):
    if isinstance(g, DiagonalMetric):
        return g.x1, g.x2, g.x3
    x = np.asarray(g, dtype=float).reshape(3)
    check_positive(x)
    return float(x[0]), float(x[1]), float(x[2])


# --- assembled route ---------------------------------------------------------

def ricci_kernel(c1, lam, k1, k2, x1, x2, x3):
    c2 = c1 / (c1 - 1.0)
    A3 = -c2 / c1
    B3 = 1.0 / c1 + A3 ** 2 / c2

    r1 = 1.0 / (4 * x1) + k1 / (2 * x1) * (1.0 - x3 / (x1 * c1 * B3))
    r2 = 1.0 / (4 * x2) + k2 / (2 * x2) * (1.0 - x3 / (x2 * c2 * B3) * A3 ** 2)

    u1 = (2 * x1 ** 2 - x3 ** 2) / x1 ** 2
    u2 = (2 * x2 ** 2 - x3 ** 2) * A3 ** 2 / x2 ** 2
    lam_group = lam / (4 * x3 * B3) * (
        u1 + u2 - (1.0 + A3) / B3 * (1.0 / c1 + A3 ** 3 / c2))
    c_group = 1.0 / (4 * x3 * B3) * (
        2 * (1.0 / c1 + A3 ** 2 / c2) - u1 / c1 - u2 / c2)
    return r1, r2, lam_group + c_group


def h2_kernel(c1, lam, k1, k2, x1, x2, x3, y1, y2):
    c2 = c1 / (c1 - 1.0)
    A3 = -c2 / c1
    B3 = 1.0 / c1 + A3 ** 2 / c2
    B4 = 1.0 / c1 + 1.0 / c2
    C3 = y1 / c1 + A3 * y2 / c2
    w1 = (y1 + C3 / B4) ** 2
    w2 = (A3 * y2 + C3 / B4) ** 2
    S1 = w1 / (x3 * B3)
    S2 = w2 / (x3 * B3)

    h1 = (2 * S1 / (x1 * c1) - 2 * y1 ** 2 / x1 ** 2) * k1 + y1 ** 2 / x1 ** 2
    h2 = (2 * S2 / (x2 * c2) - 2 * y2 ** 2 / x2 ** 2) * k2 + y2 ** 2 / x2 ** 2
    h3 = (w1 / (x1 ** 2 * B3) * (1.0 - c1 * lam) / c1
          + w2 / (x2 ** 2 * B3) * (1.0 - c2 * lam) / c2
          + lam / (x3 ** 2 * B3 ** 3) * (
              y1 / c1 + A3 ** 3 * y2 / c2 + 3 * C3 / B4 * (1.0 / c1 + A3 ** 2 / c2)) ** 2)
    return h1, h2, h3


def assembled_kernel(c1, lam, k1, k2, x1, x2, x3):
    r1, r2, r3 = ricci_kernel(c1, lam, k1, k2, x1, x2, x3)
    h1, h2, h3 = h2_kernel(c1, lam, k1, k2, x1, x2, x3, 1.0, -1.0 / (c1 - 1.0))
    # Ric on block i is x_i * r_i * g_kil; H^2 is already in g_kil units
    return (-2 * x1 * r1 + 0.5 * h1,
            -2 * x2 * r2 + 0.5 * h2,
            -2 * x3 * r3 + 0.5 * h3)


def ricci_diag(params: AlignedParams, g) -> RicciDiag:
    """Ricci operator eigenvalues ``(r1, r2, r3)`` at ``g``.

    The operator acts as ``r_i * Id`` on block ``p_i``; the Ricci tensor
    there is ``x_i * r_i * g_kil``.
    """
    x1, x2, x3 = _coords(g)
    p = params
    return RicciDiag(*(float(v) for v in ricci_kernel(p.c1, p.lam, p.kappa1, p.kappa2, x1, x2, x3)))


def h2_diag(params: AlignedParams, q: CartanCoefficients, g) -> H2Diag:
    """``(H_Q)^2_g`` block coefficients for an admissible ``Q``."""
    x1, x2, x3 = _coords(g)
    p = params
    vals = h2_kernel(p.c1, p.lam, p.kappa1, p.kappa2, x1, x2, x3, q.y1, q.y2)
    return H2Diag(*(float(v) for v in vals))


def grf_rhs_assembled(params: AlignedParams, g) -> FlowField:
    """``-2 Ric + 1/2 H0^2`` assembled from the block formulas."""
    x1, x2, x3 = _coords(g)
    p = params
    r = ricci_diag(p, (x1, x2, x3))
    h = h2_diag(p, h0_coefficients(p), (x1, x2, x3))
    return FlowField(-2 * x1 * r.r1 + 0.5 * h.h1,
                     -2 * x2 * r.r2 + 0.5 * h.h2,
                     -2 * x3 * r.r3 + 0.5 * h.h3)


# --- closed route --------------------------------------------------------------

def closed_kernel(c1, lam, k1, k2, x1, x2, x3):
    # The reduced system, grouped in e = c1 - 1 so that the factors vanishing
    # at the BRF metric (e x3 - c1, e x2 - 1, c1 x2 - x3) are formed directly.
    # The expanded numerators lose a factor of about e**-3 in accuracy as c1 -> 1.
    e = c1 - 1
    f1 = ((1 - x1 ** 2) / (2 * x1 ** 2)
          + k1 * ((c1 - e * x3) ** 2 / (e * c1 * x1 * x3) - (x1 - 1) ** 2 / x1 ** 2))
    f2 = (-(e * x2 - 1) * (e * x2 + 1) / (2 * e ** 2 * x2 ** 2)
          - k2 * (c1 * x2 - x3) * (e ** 2 * x2 * x3 - c1) / (e ** 2 * c1 * x2 ** 2 * x3))
    p = (-e * x3 ** 2 * (x1 ** 2 + e * x2 ** 2)
         + lam * c1 * (x3 ** 2 * (x1 ** 2 + e ** 2 * x2 ** 2) - c1 ** 2 * x1 ** 2 * x2 ** 2))
    f3 = (e * x3 - c1) * (e * x3 + c1) * p / (2 * e ** 3 * c1 * x1 ** 2 * x2 ** 2 * x3 ** 2)
    return f1, f2, f3


def closed_kernel_expanded(c1, lam, k1, k2, x1, x2, x3):
    """The reduced system with its numerators fully expanded.

    Kept as a transcription reference; :func:`closed_kernel` is the same
    rational function (exactly, for Fraction inputs) with better rounding.
    """
    f1 = (2 * k1 * x1 * x3 ** 2
          + c1 * x3 * (-1 + x1 ** 2 + 2 * k1 * (1 + x1 ** 2 - 2 * x1 * x3))
          + c1 ** 2 * (x3 - x1 ** 2 * x3 - 2 * k1 * (x3 + x1 ** 2 * x3 - x1 * (1 + x3 ** 2)))
          ) / (2 * (c1 - 1) * c1 * x1 ** 2 * x3)
    f2 = -(c1 ** 3 * (1 + 2 * k2) * x2 ** 2 * x3
           - 2 * k2 * x2 * x3 ** 2
           + c1 * x3 * (-1 + x2 ** 2 + 2 * k2 * (1 + x2 ** 2 + 2 * x2 * x3))
           - 2 * c1 ** 2 * x2 * (x2 * x3 + k2 * (1 + 2 * x2 * x3 + x3 ** 2))
           ) / (2 * (c1 - 1) ** 2 * c1 * x2 ** 2 * x3)
    f3 = ((x3 ** 2 - 2 * c1 * x3 ** 2 + c1 ** 2 * (x3 ** 2 - 1))
          * (-c1 ** 2 * (1 + 2 * lam) * x2 ** 2 * x3 ** 2
             + (x1 ** 2 - x2 ** 2) * x3 ** 2
             + c1 * ((lam - 1) * x1 ** 2 + (2 + lam) * x2 ** 2) * x3 ** 2
             + c1 ** 3 * lam * x2 ** 2 * (x3 ** 2 - x1 ** 2))
          ) / (2 * (c1 - 1) ** 3 * c1 * x1 ** 2 * x2 ** 2 * x3 ** 2)
    return f1, f2, f3


def grf_rhs_closed(params: AlignedParams, g) -> FlowField:
    """The reduced flow ``(x1', x2', x3')`` in closed rational form."""
    x1, x2, x3 = _coords(g)
    p = params
    return FlowField(*(float(v) for v in closed_kernel(p.c1, p.lam, p.kappa1, p.kappa2, x1, x2, x3)))


def rhs_function(params: AlignedParams):
    """Unguarded ``f(x) -> ndarray`` for the integrator."""
    c1, lam, k1, k2 = params.c1, params.lam, params.kappa1, params.kappa2

    def f(x):
        return np.array(closed_kernel(c1, lam, k1, k2, x[0], x[1], x[2]))

    return f

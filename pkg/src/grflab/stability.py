"""Linear stability at the BRF metric and the Lyapunov analysis for ``c1 = 2``.

For ``c1 = 2`` and ``kappa1 = kappa2 = kappa`` the function

    V = (lam/10 (x1 - 1)^2 + lam/10 (x2 - 1)^2 + (x3 - 2)^2) / 2

decreases along the flow.  Its derivative ``F`` factors through a two-variable
polynomial ``g(x, y)``, and the sign of ``g`` is argued by splitting it into
the pieces ``h1..h4``, ``g1``, ``g2`` and a quartic ``q``.  Every piece is
exposed here so that each identity can be checked numerically.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .curvature import closed_kernel
from .space import AlignedParams, DiagonalMetric, DomainError, brf_fixed_point, check_positive


class StabilityVerdict(str, enum.Enum):
    STABLE = "AsymptoticallyStable"
    UNSTABLE = "Unstable"
    NON_HYPERBOLIC = "NonHyperbolic"


class PreconditionError(ValueError):
    """Raised when an operation is requested outside its hypotheses."""


# --- Jacobians and spectra ---------------------------------------------------

def _as_point(g) -> np.ndarray:
    if isinstance(g, DiagonalMetric):
        return g.as_array()
    x = np.asarray(g, dtype=float).reshape(3)
    check_positive(x)
    return x


def jacobian_fd(params: AlignedParams, g, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of the closed-form flow at ``g``."""
    if not 1e-8 <= h <= 1e-4:
        raise PreconditionError(f"step h must lie in [1e-8, 1e-4], got {h}")
    x = _as_point(g)
    p = params
    jac = np.empty((3, 3))
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        lo, hi = x - e, x + e
        if lo[j] <= 0:
            raise DomainError(f"perturbed coordinate x{j + 1} = {lo[j]} is not positive")
        fp = np.array(closed_kernel(p.c1, p.lam, p.kappa1, p.kappa2, *hi))
        fm = np.array(closed_kernel(p.c1, p.lam, p.kappa1, p.kappa2, *lo))
        jac[:, j] = (fp - fm) / (2 * h)
    return jac


def jacobian_analytic_at_fixed_point(params: AlignedParams) -> tuple[float, float, float]:
    """Diagonal of ``Df`` at the BRF metric: ``(-1, 1 - c1, c1 (lam - 1))``."""
    c1, lam = params.c1, params.lam
    return (-1.0, 1.0 - c1, c1 * (lam - 1.0))


def _cubic_roots(b: float, c: float, d: float) -> list[complex]:
    # roots of t^3 + b t^2 + c t + d
    shift = -b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if p == 0.0 and q == 0.0:
        us = [0.0, 0.0, 0.0]
    elif disc <= 0.0:
        # three real roots, trigonometric form (p < 0 here)
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)
        phi = math.acos(max(-1.0, min(1.0, arg)))
        us = [r * math.cos((phi - 2.0 * math.pi * k) / 3.0) for k in range(3)]
    else:
        s = math.sqrt(disc)
        a = -math.copysign(abs(q) / 2.0 + s, q)
        a = math.copysign(abs(a) ** (1.0 / 3.0), a)
        bb = -p / (3.0 * a) if a != 0.0 else 0.0
        re = -(a + bb) / 2.0
        im = math.sqrt(3.0) / 2.0 * (a - bb)
        us = [a + bb, complex(re, im), complex(re, -im)]
    return [complex(u) + shift for u in us]


def _polish(z: complex, b: float, c: float, d: float) -> complex:
    for _ in range(3):
        val = ((z + b) * z + c) * z + d
        der = (3.0 * z + 2.0 * b) * z + c
        if der == 0:
            break
        z_new = z - val / der
        if abs(((z_new + b) * z_new + c) * z_new + d) >= abs(val):
            break
        z = z_new
    return z


def eigen3(m) -> np.ndarray:
    """Eigenvalues of a real 3x3 matrix from its characteristic cubic.

    The matrix is scaled by its largest entry before forming the cubic; the
    roots are solved in closed form and refined by a Newton step.  Returned
    sorted by real part, then imaginary part.
    """
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3) or not np.all(np.isfinite(a)):
        raise ValueError("expected a finite 3x3 matrix")
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return np.zeros(3, dtype=complex)
    a = a / scale
    tr = a[0, 0] + a[1, 1] + a[2, 2]
    minors = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
              + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
              + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
    det = (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
           - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
           + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    b, c, d = -tr, minors, -det
    roots = [_polish(z, b, c, d) for z in _cubic_roots(b, c, d)]
    roots = [complex(z.real, 0.0) if abs(z.imag) <= 1e-14 * max(1.0, abs(z)) else z for z in roots]
    roots.sort(key=lambda z: (z.real, z.imag))
    return np.array(roots) * scale


def classify(eigenvalues, zero_tol: float = 1e-7) -> StabilityVerdict:
    re = np.real(np.asarray(eigenvalues))
    if np.any(np.abs(re) <= zero_tol):
        return StabilityVerdict.NON_HYPERBOLIC
    if np.all(re < 0):
        return StabilityVerdict.STABLE
    return StabilityVerdict.UNSTABLE


@dataclass
class SpectrumReport:
    jacobian: np.ndarray
    eigenvalues: np.ndarray
    analytic_eigenvalues: Optional[tuple[float, float, float]]
    hyperbolic: bool
    verdict: StabilityVerdict

    def as_dict(self) -> dict:
        return {
            "jacobian": self.jacobian.tolist(),
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "analytic_eigenvalues": None if self.analytic_eigenvalues is None
            else list(self.analytic_eigenvalues),
            "hyperbolic": self.hyperbolic,
            "verdict": self.verdict.value,
        }


def spectrum_report(params: AlignedParams, g=None, h: float = 1e-6,
                    zero_tol: float = 1e-7) -> SpectrumReport:
    """Finite-difference Jacobian and its spectrum at ``g`` (default: BRF metric).

    At the BRF metric the analytic diagonal is attached and decides the
    verdict; elsewhere the numerical eigenvalues do.
    """
    g0 = brf_fixed_point(params)
    at_fixed_point = g is None or np.allclose(_as_point(g), g0.as_array(), rtol=0, atol=1e-14)
    point = g0 if g is None else g
    jac = jacobian_fd(params, point, h)
    eigs = eigen3(jac)
    analytic = jacobian_analytic_at_fixed_point(params) if at_fixed_point else None
    verdict = classify(analytic if analytic is not None else eigs, zero_tol)
    return SpectrumReport(jac, eigs, analytic, verdict != StabilityVerdict.NON_HYPERBOLIC, verdict)


# --- Lyapunov function -------------------------------------------------------

def lyapunov_value(lam: float, g) -> float:
    if not lam > 0:
        raise PreconditionError(f"V is positive definite only for lambda > 0, got {lam}")
    x1, x2, x3 = np.asarray(g.as_array() if isinstance(g, DiagonalMetric) else g, dtype=float)
    return float((lam / 10 * (x1 - 1) ** 2 + lam / 10 * (x2 - 1) ** 2 + (x3 - 2) ** 2) / 2)


def lyapunov_gradient(lam: float, g) -> np.ndarray:
    x1, x2, x3 = _as_point(g)
    return np.array([lam / 10 * (x1 - 1), lam / 10 * (x2 - 1), x3 - 2])


def check_global_hypotheses(params: AlignedParams) -> None:
    """Refuse parameters outside ``c1 = 2``, ``kappa1 = kappa2``, ``0 < lam``."""
    if params.c1 != 2.0:
        raise PreconditionError(f"c1 = {params.c1}: outside theorem hypotheses (needs c1 = 2)")
    if not params.equal_kappa:
        raise PreconditionError("kappa1 != kappa2: outside theorem hypotheses")
    if not params.lam > 0:
        raise PreconditionError(f"lambda = {params.lam}: outside theorem hypotheses (needs lambda > 0)")


def lyapunov_derivative(params: AlignedParams, g) -> float:
    """``F = grad V . f`` along the closed-form flow."""
    check_global_hypotheses(params)
    x = _as_point(g)
    p = params
    f = np.array(closed_kernel(p.c1, p.lam, p.kappa1, p.kappa2, *x))
    return float(lyapunov_gradient(p.lam, x) @ f)


def lyapunov_derivative_factored(lam, kappa, x1, x2, x3):
    """``F`` written through ``g``: ``-(x1^2 g(x2,x3) + x2^2 g(x1,x3)) / (4 x1^2 x2^2 x3^2)``."""
    return -(x1 ** 2 * g_polynomial(lam, kappa, x2, x3)
             + x2 ** 2 * g_polynomial(lam, kappa, x1, x3)) / (4 * x1 ** 2 * x2 ** 2 * x3 ** 2)


# --- the polynomial g and its pieces -------------------------------------------

def g_polynomial(lam, kappa, x, y):
    """``g(x, y)`` term by term as expanded, broadcasting over arrays.

    Fraction inputs give an exact result.
    """
    lk = lam * kappa
    return (32 * lam * x ** 2 + 4 * lk * x * y / 5 - 4 * lk * x ** 2 * y / 5 - 16 * lam * x ** 2 * y
            + lam * y ** 2 / 5 + 8 * y ** 2 - 2 * lk * y ** 2 / 5 - 16 * lam * y ** 2
            - lam * x * y ** 2 / 5 + 2 * lk * x * y ** 2 / 5 - lam * x ** 2 * y ** 2 / 5
            - 2 * lk * x ** 2 * y ** 2 / 5 - 8 * lam * x ** 2 * y ** 2 + lam * x ** 3 * y ** 2 / 5
            + 2 * lk * x ** 3 * y ** 2 / 5
            - 4 * y ** 3 + 8 * lam * y ** 3 + lk * x * y ** 3 / 5 - lk * x ** 2 * y ** 3 / 5
            + 4 * lam * x ** 2 * y ** 3 - 2 * y ** 4 + 4 * lam * y ** 4 + y ** 5 - 2 * lam * y ** 5)


def h1_poly(x, y):
    return 2 * y ** 2 - 2 * x * y ** 2 - 2 * x ** 2 * y ** 2 + 2 * x ** 3 * y ** 2


def h2_poly(x, y):
    return 8 * y ** 2 - 4 * y ** 3 - 2 * y ** 4 + y ** 5


def h3_poly(x, y):
    return (4 * x * y - 4 * x ** 2 * y - 2 * y ** 2 + 2 * x * y ** 2 - 2 * x ** 2 * y ** 2
            + 2 * x ** 3 * y ** 2 + x * y ** 3 - x ** 2 * y ** 3)


def h4_poly(x, y):
    return (16 * x ** 2 - 8 * x ** 2 * y - 8 * y ** 2 - 4 * x ** 2 * y ** 2 + 4 * y ** 3
            + 2 * x ** 2 * y ** 3 + 2 * y ** 4 - y ** 5)


class Case(str, enum.Enum):
    CASE1 = "case1"  # g1 < 0, g2 < 0
    CASE2 = "case2"  # g1 < 0, g2 >= 0
    CASE3 = "case3"  # g1 >= 0, g2 < 0
    BOTH_POSITIVE = "both_positive"


def case_of(g1, g2) -> np.ndarray:
    """Case labels (as strings) from the signs of ``g1`` and ``g2``."""
    g1, g2 = np.asarray(g1), np.asarray(g2)
    return np.where(g1 < 0,
                    np.where(g2 < 0, Case.CASE1.value, Case.CASE2.value),
                    np.where(g2 < 0, Case.CASE3.value, Case.BOTH_POSITIVE.value))


class GBreakdown(NamedTuple):
    h1: np.ndarray
    h2: np.ndarray
    h3: np.ndarray
    h4: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    case: np.ndarray


def g_function(lam, kappa, x, y):
    """``g(x, y)`` together with its pieces and case label.

    Returns
    -------
    g : float or ndarray
    parts : GBreakdown
        ``h1..h4`` (expanded forms), ``g1 = h4 + h1/20``, ``g2 = h3/20``
        and the sign case of ``(g1, g2)``.
    """
    h1, h2, h3, h4 = h1_poly(x, y), h2_poly(x, y), h3_poly(x, y), h4_poly(x, y)
    g1 = h4 + h1 / 20
    g2 = h3 / 20
    return g_polynomial(lam, kappa, x, y), GBreakdown(h1, h2, h3, h4, g1, g2, case_of(g1, g2))


@dataclass
class LyapunovBreakdown:
    """Lyapunov data at one metric."""
    V: float
    F: float
    g_x2x3: float
    g_x1x3: float
    parts_x2x3: GBreakdown
    parts_x1x3: GBreakdown


def lyapunov_breakdown(params: AlignedParams, g) -> LyapunovBreakdown:
    check_global_hypotheses(params)
    x1, x2, x3 = _as_point(g)
    lam, kappa = params.lam, params.kappa1
    ga, pa = g_function(lam, kappa, x2, x3)
    gb, pb = g_function(lam, kappa, x1, x3)
    return LyapunovBreakdown(lyapunov_value(lam, (x1, x2, x3)),
                             lyapunov_derivative(params, (x1, x2, x3)),
                             float(ga), float(gb), pa, pb)


# --- case 1 machinery -------------------------------------------------------------

Q_COEFFS = (1521, -484, -13756, -640, 25600)  # highest degree first


def q_polynomial(y):
    """``q(y) = 25600 - 640 y - 13756 y^2 - 484 y^3 + 1521 y^4``.

    Integer or Fraction input gives an exact result.
    """
    acc = 0
    for c in Q_COEFFS:
        acc = acc * y + c
    return acc


def interval_I() -> tuple[float, float]:
    """Range of ``y`` where the critical point of ``p`` is positive."""
    r = math.sqrt(321.0)
    return ((81.0 - r) / 39.0, (81.0 + r) / 39.0)


def p_poly(x, y):
    """Quadratic in ``x`` with ``h2 + g1 + g2 = x p(x)``."""
    return y * (4 + y ** 2) / 20 + x * (320 - 164 * y - 84 * y ** 2 + 39 * y ** 3) / 20 + x ** 2 * y ** 2 / 5


def p_critical_point(y):
    return (21 * y ** 2 / 2 - 40 + 41 * y / 2 - 39 * y ** 3 / 8) / y ** 2


def p_at_critical_point(y):
    return -(y - 2) ** 2 * q_polynomial(y) / (320 * y ** 2)


def _mixed_rel(a, b):
    return np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))


# --- sampling -------------------------------------------------------------------

EXCLUSION_RADIUS = 1e-3


def scan_points(samples: int, rng: np.random.Generator, box=((0.0, 10.0), (0.0, 10.0)),
                lattice_step: float = 0.05):
    """Sample points of a half-open box ``(lo, hi]^2``.

    The set is a lattice with nodes at multiples of ``lattice_step`` (so
    ``(1, 2)`` is a node when the step divides both), a boundary-biased layer
    of log-spaced coordinates hugging ``lo`` and ``hi`` on each axis, and
    uniform Monte-Carlo points for the remaining budget.  Returns ``(x, y)``
    arrays of length ``samples`` (the structured part is truncated if it
    alone exceeds the budget).
    """
    (xlo, xhi), (ylo, yhi) = box
    inv = round(1.0 / lattice_step)

    def axis(lo, hi):
        k = np.arange(math.floor(lo * inv) + 1, math.floor(hi * inv) + 1)
        return k / inv

    ax, ay = axis(xlo, xhi), axis(ylo, yhi)

    def edge(lo, hi):
        width = hi - lo
        near = lo + width * np.geomspace(1e-7, 0.05, 25)
        far = hi - width * np.geomspace(1e-7, 0.05, 25)
        return np.concatenate([near, far, [hi]])

    ex, ey = edge(xlo, xhi), edge(ylo, yhi)
    lx, ly = np.meshgrid(ax, ay, indexing="ij")
    bx1, by1 = np.meshgrid(ex, ay, indexing="ij")
    bx2, by2 = np.meshgrid(ax, ey, indexing="ij")
    bx3, by3 = np.meshgrid(ex, ey, indexing="ij")
    sx = np.concatenate([lx.ravel(), bx1.ravel(), bx2.ravel(), bx3.ravel()])
    sy = np.concatenate([ly.ravel(), by1.ravel(), by2.ravel(), by3.ravel()])
    n_mc = max(samples - sx.size, 0)
    # 1 - U maps [0, 1) onto (0, 1]: the box is open at lo
    mx = xhi - (xhi - xlo) * rng.random(n_mc)
    my = yhi - (yhi - ylo) * rng.random(n_mc)
    return np.concatenate([sx, mx])[:samples], np.concatenate([sy, my])[:samples]


@dataclass
class ScanReport:
    min: float
    argmin: tuple[float, float]
    samples: int
    case_tallies: dict
    max_identity_residual: float
    min_outside_exclusion: float
    nonpositive_outside_exclusion: int
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.min >= 0 and self.nonpositive_outside_exclusion == 0
                and math.dist(self.argmin, (1.0, 2.0)) <= 1e-2)

    def as_dict(self) -> dict:
        return {
            "min": self.min,
            "argmin": list(self.argmin),
            "samples": self.samples,
            "case_tallies": dict(self.case_tallies),
            "max_identity_residual": self.max_identity_residual,
            "min_outside_exclusion": self.min_outside_exclusion,
            "nonpositive_outside_exclusion": self.nonpositive_outside_exclusion,
            "params": dict(self.params),
            "notes": list(self.notes),
            "pass": self.passed,
        }


def global_positivity_scan(lam: float, kappa: float, box=((0.0, 10.0), (0.0, 10.0)),
                           samples: int = 10 ** 6, seed: int = 0,
                           chunk: int = 250_000) -> ScanReport:
    """Sample ``g`` over a box and summarize its sign.

    ``lam`` must lie in ``(0, 1/2)`` and ``kappa`` in ``(0, 1/2]``.  The
    minimum is reduced chunk by chunk; case tallies follow the signs of
    ``(g1, g2)``.  Strict positivity is asserted only outside a radius of
    ``EXCLUSION_RADIUS`` around ``(1, 2)``.
    """
    if not 0 < lam < 0.5:
        raise PreconditionError(f"lambda must lie in (0, 1/2), got {lam}")
    if not 0 < kappa <= 0.5:
        raise PreconditionError(f"kappa must lie in (0, 1/2], got {kappa}")
    rng = np.random.default_rng(seed)
    xs, ys = scan_points(samples, rng, box)

    best, best_at = math.inf, (math.nan, math.nan)
    best_out = math.inf
    bad = 0
    resid = 0.0
    tallies = {c.value: 0 for c in Case}
    for start in range(0, xs.size, chunk):
        x, y = xs[start:start + chunk], ys[start:start + chunk]
        g, parts = g_function(lam, kappa, x, y)
        i = int(np.argmin(g))
        if g[i] < best:
            best, best_at = float(g[i]), (float(x[i]), float(y[i]))
        outside = np.hypot(x - 1.0, y - 2.0) > EXCLUSION_RADIUS
        if np.any(outside):
            best_out = min(best_out, float(np.min(g[outside])))
            bad += int(np.count_nonzero(g[outside] <= 0))
        split = parts.h2 + 2 * lam * parts.g1 + 4 * kappa * lam * parts.g2
        resid = max(resid, float(np.max(_mixed_rel(g, split))))
        labels, counts = np.unique(parts.case, return_counts=True)
        for label, count in zip(labels, counts):
            tallies[str(label)] += int(count)
    return ScanReport(best, best_at, int(xs.size), tallies, resid, best_out, bad,
                      params={"lambda": lam, "kappa": kappa, "box": [list(b) for b in box],
                              "seed": seed})


@dataclass
class Case1Report:
    samples: int
    max_xp_residual: float
    max_critical_point_residual: float
    max_p_min_residual: float
    max_p0_residual: float
    min_p0: float
    min_value: float
    argmin: tuple[float, float]
    min_outside_exclusion: float
    negative_count: int

    @property
    def passed(self) -> bool:
        return (max(self.max_xp_residual, self.max_critical_point_residual,
                    self.max_p_min_residual, self.max_p0_residual) <= 1e-9
                and self.min_p0 > 0 and self.negative_count == 0
                and self.min_outside_exclusion > 0)

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["argmin"] = list(self.argmin)
        d["pass"] = self.passed
        return d


def case1_certificate(samples: int = 10 ** 5, seed: int = 0) -> Case1Report:
    """Check the identities behind the first sign case at sampled points.

    * ``h2 + g1 + g2 = x p(x)`` with ``p`` quadratic in ``x``;
    * ``p'(xbar) = 0`` at ``xbar = (21 y^2/2 - 40 + 41 y/2 - 39 y^3/8) / y^2``;
    * ``p(xbar) = -(y - 2)^2 q(y) / (320 y^2)``;
    * ``p(0) = y (4 + y^2) / 20 > 0``;

    and that ``h2 + g1 + g2 >= 0`` on every sample.
    """
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    x, y = scan_points(samples, rng)
    _, parts = g_function(0.25, 0.5, x, y)  # the pieces do not depend on lam, kappa
    s = parts.h2 + parts.g1 + parts.g2
    xp = x * p_poly(x, y)
    xbar = p_critical_point(y)
    # p'(x) = (320 - 164 y - 84 y^2 + 39 y^3)/20 + 2 x y^2/5
    lin = (320 - 164 * y - 84 * y ** 2 + 39 * y ** 3) / 20
    dp = lin + 2 * xbar * y ** 2 / 5
    pmin = p_poly(xbar, y)
    p0 = p_poly(0.0, y)
    i = int(np.argmin(s))
    outside = np.hypot(x - 1.0, y - 2.0) > EXCLUSION_RADIUS
    return Case1Report(
        samples=int(x.size),
        max_xp_residual=float(np.max(_mixed_rel(s, xp))),
        max_critical_point_residual=float(np.max(np.abs(dp) / np.maximum(1.0, np.abs(lin)))),
        max_p_min_residual=float(np.max(_mixed_rel(pmin, p_at_critical_point(y)))),
        max_p0_residual=float(np.max(_mixed_rel(p0, y * (4 + y ** 2) / 20))),
        min_p0=float(np.min(p0)),
        min_value=float(s[i]),
        argmin=(float(x[i]), float(y[i])),
        min_outside_exclusion=float(np.min(s[outside])) if np.any(outside) else math.inf,
        negative_count=int(np.count_nonzero(s < 0)),
    )


def q_sign_suite(n_interval: int = 200) -> dict:
    """Exact sign checks of ``q`` and a dense sign check on ``I``."""
    from fractions import Fraction as Fr

    exact = {label: q_polynomial(v) for label, v in
             (("7/5", Fr(7, 5)), ("3/2", Fr(3, 2)), ("13/5", Fr(13, 5)), ("3", Fr(3)))}
    lo, hi = interval_I()
    ys = np.linspace(lo, hi, n_interval + 2)[1:-1]
    q_on_i = q_polynomial(ys)
    signs_ok = exact["7/5"] > 0 and exact["3/2"] < 0 and exact["13/5"] < 0 and exact["3"] > 0
    q2 = q_polynomial(2)
    return {
        "q(2)": q2,
        "values": {k: str(v) for k, v in exact.items()},
        "sign_pattern_ok": bool(signs_ok),
        "interval_I": [lo, hi],
        "max_q_on_I": float(np.max(q_on_i)),
        "q_negative_on_I": bool(np.all(q_on_i < 0)),
        "pass": bool(signs_ok and q2 == -10240 and np.all(q_on_i < 0)),
    }

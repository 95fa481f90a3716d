"""Flow engine for the reduced system: trajectories, invariant planes, portraits."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .curvature import closed_kernel, rhs_function
from .integrator import IntegratorConfig, Trajectory, Verdict, run_flow
from .space import AlignedParams, DiagonalMetric, brf_fixed_point
from .stability import PreconditionError, lyapunov_value


class Plane(str, enum.Enum):
    X3_FIXED = "X3Fixed"      # x3 = c1/(c1-1), coordinates (x1, x2)
    X1_PROP_X2 = "X1PropX2"   # x1 = (c1-1) x2, coordinates (x2, x3)

    @classmethod
    def parse(cls, text: str) -> "Plane":
        key = text.replace("_", "").replace("-", "").lower()
        for plane in cls:
            if plane.value.lower() == key:
                return plane
        raise ValueError(f"unknown plane {text!r}; expected one of {[p.value for p in cls]}")


def lyapunov_applies(params: AlignedParams) -> bool:
    return params.c1 == 2.0 and params.equal_kappa and params.lam > 0


def integrate(params: AlignedParams, g0, cfg: IntegratorConfig | None = None) -> Trajectory:
    """Run the flow from ``g0`` towards the BRF metric of ``params``.

    The Lyapunov column is filled when ``c1 = 2``, ``kappa1 = kappa2`` and
    ``lambda > 0``.
    """
    cfg = cfg or IntegratorConfig()
    x0 = g0.as_array() if isinstance(g0, DiagonalMetric) else np.asarray(g0, dtype=float)
    lyap = None
    if lyapunov_applies(params):
        lam = params.lam
        lyap = lambda x: lyapunov_value(lam, x)  # noqa: E731
    return run_flow(rhs_function(params), x0, cfg,
                    target=brf_fixed_point(params).as_array(), lyapunov=lyap)


# --- invariant planes ----------------------------------------------------------------

def _require_invariant(params: AlignedParams, plane: Plane) -> None:
    if plane is Plane.X1_PROP_X2 and not params.equal_kappa:
        raise PreconditionError("the plane x1 = (c1-1) x2 is invariant only when kappa1 = kappa2")


def embed(params: AlignedParams, plane: Plane, u, v):
    """Map in-plane coordinates ``(u, v)`` to ``(x1, x2, x3)``."""
    c1 = params.c1
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    if plane is Plane.X3_FIXED:
        return u, v, np.full_like(u, c1 / (c1 - 1.0))
    return (c1 - 1.0) * u, u, v


def project(plane: Plane, x):
    x = np.asarray(x)
    if plane is Plane.X3_FIXED:
        return x[..., 0], x[..., 1]
    return x[..., 1], x[..., 2]


def in_plane_fixed_point(params: AlignedParams, plane: Plane) -> tuple[float, float]:
    u, v = project(plane, brf_fixed_point(params).as_array())
    return float(u), float(v)


def tangency_residual(params: AlignedParams, plane: Plane, u, v):
    """Normal component of the field on the plane (zero when invariant)."""
    p = params
    x1, x2, x3 = embed(p, plane, u, v)
    f1, f2, f3 = closed_kernel(p.c1, p.lam, p.kappa1, p.kappa2, x1, x2, x3)
    if plane is Plane.X3_FIXED:
        return f3, (f1, f2, f3)
    return f1 - (p.c1 - 1.0) * f2, (f1, f2, f3)


@dataclass
class InvarianceReport:
    plane: Plane
    samples: int
    max_residual: float
    max_relative_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_relative_residual <= self.tol


def check_invariant_subspace(params: AlignedParams, plane: Plane, samples: int = 1000,
                             tol: float = 1e-11, seed: int = 0,
                             coord_range=(0.1, 10.0)) -> InvarianceReport:
    """Evaluate the normal component of the flow at random points of ``plane``.

    The relative residual divides by ``1 + |f|_inf`` at each point; ``tol``
    applies to it.
    """
    plane = Plane(plane)
    _require_invariant(params, plane)
    rng = np.random.default_rng(seed)
    lo, hi = coord_range
    u = rng.uniform(lo, hi, samples)
    v = rng.uniform(lo, hi, samples)
    res, f = tangency_residual(params, plane, u, v)
    scale = 1.0 + np.max(np.abs(np.array(f)), axis=0)
    res = np.abs(res)
    return InvarianceReport(plane, samples,
                            float(res.max()) if samples else 0.0,
                            float((res / scale).max()) if samples else 0.0, tol)


def _tangency_summary(params: AlignedParams, plane: Plane) -> dict:
    rep = check_invariant_subspace(params, plane)
    return {"invariant": rep.passed, "max_relative_residual": rep.max_relative_residual}


# --- portraits -----------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    u_range: tuple[float, float] = (0.2, 4.0)
    v_range: tuple[float, float] = (0.2, 4.0)
    resolution: int = 12
    streamlines: bool = True

    def nodes(self):
        if self.resolution <= 0:
            return np.empty(0), np.empty(0)
        us = np.linspace(*self.u_range, self.resolution)
        vs = np.linspace(*self.v_range, self.resolution)
        uu, vv = np.meshgrid(us, vs, indexing="ij")
        return uu.ravel(), vv.ravel()


@dataclass
class PortraitGrid:
    """Normalized in-plane flow directions on a grid, with optional streamlines."""
    plane: Plane
    grid: GridSpec
    fixed_point: tuple[float, float]
    points: np.ndarray       # (N, 2)
    directions: np.ndarray   # (N, 2), unit length or zero
    streamlines: list = field(default_factory=list)    # list of (M_i, 2) arrays
    verdicts: list = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def metadata(self, params: AlignedParams) -> dict:
        c1 = params.c1
        return {
            "plane": self.plane.value,
            "coordinates": ["x1", "x2"] if self.plane is Plane.X3_FIXED else ["x2", "x3"],
            "constraint": (f"x3 = {c1 / (c1 - 1.0)!r}" if self.plane is Plane.X3_FIXED
                           else f"x1 = {c1 - 1.0!r} * x2"),
            "fixed_point": list(self.fixed_point),
            "grid": {"u_range": list(self.grid.u_range), "v_range": list(self.grid.v_range),
                     "resolution": self.grid.resolution, "streamlines": self.grid.streamlines},
            "points": len(self.points),
            "tangency": _tangency_summary(params, self.plane),
            "params": params.as_dict(),
        }


def in_plane_field(params: AlignedParams, plane: Plane):
    """In-plane components of the flow, as a function of ``(u, v)``.

    On a plane the flow is tangent to, this is the restricted dynamics.  The
    plane ``x1 = (c1-1) x2`` is tangent only for ``c1 = 2``; elsewhere this
    is the projection of the field onto the plane coordinates ``(x2, x3)``.
    """
    p = params
    i, j = (0, 1) if plane is Plane.X3_FIXED else (1, 2)

    def f(uv):
        x = embed(p, plane, uv[0], uv[1])
        full = closed_kernel(p.c1, p.lam, p.kappa1, p.kappa2, *x)
        return np.array([full[i], full[j]])

    return f


def portrait(params: AlignedParams, plane: Plane, grid: GridSpec | None = None,
             cfg: IntegratorConfig | None = None) -> PortraitGrid:
    """Sample the in-plane field on ``grid``; trace streamlines if asked.

    Streamlines integrate the two-dimensional in-plane field from each node.
    """
    plane = Plane(plane)
    grid = grid or GridSpec()
    _require_invariant(params, plane)
    u, v = grid.nodes()
    fp = in_plane_fixed_point(params, plane)
    if u.size == 0:
        return PortraitGrid(plane, grid, fp, np.empty((0, 2)), np.empty((0, 2)))

    field2d = in_plane_field(params, plane)
    du, dv = field2d(np.array([u, v]))
    norm = np.hypot(du, dv)
    safe = np.where(norm > 0, norm, 1.0)
    directions = np.column_stack([du / safe, dv / safe])
    directions[norm == 0] = 0.0

    lines, verdicts = [], []
    if grid.streamlines:
        cfg = cfg or IntegratorConfig()
        for start in zip(u, v):
            traj = run_flow(field2d, start, cfg, target=np.array(fp))
            lines.append(traj.x)
            verdicts.append(traj.verdict)
    return PortraitGrid(plane, grid, fp, np.column_stack([u, v]), directions, lines, verdicts)


@dataclass
class SinkCheck:
    passed: bool
    checked: int
    failures: list
    shrink: float
    floor: float

    def as_dict(self) -> dict:
        return {"pass": self.passed, "checked": self.checked, "failures": self.failures,
                "shrink": self.shrink, "floor": self.floor}


def sink_check(grid: PortraitGrid, box=((0.2, 4.0), (0.2, 4.0)), shrink: float = 0.9,
               floor: float = 1e-6) -> SinkCheck:
    """Check that every streamline from a box node enters nested balls.

    For a start at distance ``r0`` from the in-plane fixed point the balls
    have radii ``r0 * shrink**m`` down to ``floor``; the streamline must enter
    each of them in turn.
    """
    if grid.points.size and not grid.streamlines:
        raise ValueError("sink check needs traced streamlines")
    (ulo, uhi), (vlo, vhi) = box
    fp = np.array(grid.fixed_point)
    failures, checked = [], 0
    for start, line, verdict in zip(grid.points, grid.streamlines, grid.verdicts):
        if not (ulo <= start[0] <= uhi and vlo <= start[1] <= vhi):
            continue
        checked += 1
        dist = np.hypot(*(line - fp).T)
        r0 = dist[0]
        if r0 <= floor:
            continue
        levels = int(math.ceil(math.log(floor / r0) / math.log(shrink)))
        radii = r0 * shrink ** np.arange(1, levels + 1)
        # first sample index inside each ball, or -1
        entered = [int(np.argmax(dist <= r)) if np.any(dist <= r) else -1 for r in radii]
        ok = verdict is Verdict.CONVERGED and all(i >= 0 for i in entered) and entered == sorted(entered)
        if not ok:
            failures.append({"start": start.tolist(), "verdict": verdict.value,
                             "final_distance": float(dist[-1])})
    return SinkCheck(not failures, checked, failures, shrink, floor)

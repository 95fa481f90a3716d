"""Adaptive integration of autonomous flows with convergence verdicts.

Steps are taken one at a time with scipy's Dormand-Prince 5(4) pair so that
every accepted step can be inspected: positivity, proximity to the target
fixed point, stalling of the vector field, time budget and step size.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import RK45
from scipy.optimize import brentq

from .space import check_positive


class Verdict(str, enum.Enum):
    CONVERGED = "ConvergedToBRF"
    ESCAPED_POSITIVITY = "EscapedPositivity"
    MAX_TIME = "MaxTimeReached"
    STEP_UNDERFLOW = "StepUnderflow"


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_time: float = 500.0
    min_step: float = 1e-12
    positivity_floor: float = 1e-8
    convergence_radius: float = 1e-9
    stall_rhs_norm: float = 1e-12
    # keeps h*|eig| inside the stability region near the fixed point, where
    # the error estimate alone would let the step grow until errors stop decaying
    max_step: float = 1.0

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if not self.min_step < 1:
            raise ValueError("min_step must be < 1")


@dataclass
class Trajectory:
    """Samples at accepted steps.

    Attributes
    ----------
    t : (N,) array
        Strictly increasing times, ``t[0] = 0``.
    x : (N, d) array
        Metric coefficients.
    rhs_norm : (N,) array
        Sup-norm of the vector field at each sample.
    lyapunov : (N,) array or None
        Lyapunov value when one applies to the run.
    verdict : Verdict
    """

    t: np.ndarray
    x: np.ndarray
    rhs_norm: np.ndarray
    lyapunov: Optional[np.ndarray]
    verdict: Verdict

    def __len__(self):
        return len(self.t)

    @property
    def final(self) -> np.ndarray:
        return self.x[-1]

    def thinned(self, max_samples: int = 10_000) -> "Trajectory":
        """Evenly subsampled copy, keeping the first and last samples."""
        n = len(self.t)
        if n <= max_samples:
            return self
        idx = np.unique(np.linspace(0, n - 1, max_samples).round().astype(int))
        lyap = None if self.lyapunov is None else self.lyapunov[idx]
        return Trajectory(self.t[idx], self.x[idx], self.rhs_norm[idx], lyap, self.verdict)


def run_flow(f: Callable[[np.ndarray], np.ndarray], x0, cfg: IntegratorConfig,
             target=None, lyapunov: Callable[[np.ndarray], float] | None = None) -> Trajectory:
    """Integrate ``x' = f(x)`` from ``x0`` until the first applicable verdict.

    Convergence means ``|x - target|_inf <= cfg.convergence_radius`` or
    ``|f(x)|_inf <= cfg.stall_rhs_norm``.  Leaving the region
    ``x > cfg.positivity_floor`` ends the run; the crossing is located on the
    dense output of the last step and recorded as the final sample.
    """
    x0 = np.asarray(x0, dtype=float).copy()
    check_positive(x0)
    target = None if target is None else np.asarray(target, dtype=float)

    ts, xs, norms = [0.0], [x0], [float(np.max(np.abs(f(x0))))]

    def converged(x, norm):
        if norm <= cfg.stall_rhs_norm:
            return True
        return target is not None and np.max(np.abs(x - target)) <= cfg.convergence_radius

    def finish(verdict):
        x = np.array(xs)
        lyap = None if lyapunov is None else np.array([lyapunov(v) for v in x])
        return Trajectory(np.array(ts), x, np.array(norms), lyap, verdict)

    if converged(x0, norms[0]):
        return finish(Verdict.CONVERGED)

    solver = RK45(lambda t, x: f(x), 0.0, x0, cfg.max_time,
                  rtol=cfg.rel_tol, atol=cfg.abs_tol, max_step=cfg.max_step)
    while True:
        solver.step()
        if solver.status == "failed":
            return finish(Verdict.STEP_UNDERFLOW)
        x = solver.y.copy()
        if np.min(x) <= cfg.positivity_floor or not np.all(np.isfinite(x)):
            t_cross, x_cross = _positivity_crossing(solver, cfg.positivity_floor)
            if t_cross > ts[-1] and np.all(np.isfinite(x_cross)):
                ts.append(t_cross)
                xs.append(x_cross)
                norms.append(float(np.max(np.abs(f(x_cross)))))
            return finish(Verdict.ESCAPED_POSITIVITY)
        norm = float(np.max(np.abs(f(x))))
        ts.append(solver.t)
        xs.append(x)
        norms.append(norm)
        if converged(x, norm):
            return finish(Verdict.CONVERGED)
        if solver.status == "finished":
            return finish(Verdict.MAX_TIME)
        if solver.step_size is not None and solver.step_size < cfg.min_step:
            return finish(Verdict.STEP_UNDERFLOW)


def _positivity_crossing(solver, floor):
    sol = solver.dense_output()
    t0, t1 = solver.t_old, solver.t

    def margin(t):
        return float(np.min(sol(t))) - floor

    try:
        t_cross = brentq(margin, t0, t1, xtol=1e-14)
    except ValueError:
        t_cross = t1
    return t_cross, sol(t_cross)

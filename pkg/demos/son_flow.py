"""Diagonal flow on SO(n) with the 3-form built from the bracket.

The Killing metric is a fixed point with Jacobian equal to minus the identity.
Perturbed starts relax back to it; the time to do so grows mildly with n.
"""
import numpy as np

from grflab import IntegratorConfig, build_nice_basis, son_integrate, son_jacobian_at_killing
from grflab.son import harmonicity_residual

rng = np.random.default_rng(11)
cfg = IntegratorConfig(max_time=300)
for n in range(3, 9):
    basis = build_nice_basis(n)
    jac = son_jacobian_at_killing(basis)
    x0 = rng.uniform(0.7, 1.4, basis.dim)
    traj = son_integrate(basis, x0, cfg)
    print(f"n={n}  dim={basis.dim:3d}  jac diag={np.unique(np.round(jac, 12))}  "
          f"harmonic residual={harmonicity_residual(basis, x0):.1e}  "
          f"t_end={traj.t[-1]:7.2f}  dist={np.max(np.abs(traj.final - 1)):.1e}  {traj.verdict.value}"
          + (f"  {basis.diagnostics}" if basis.diagnostics else ""))

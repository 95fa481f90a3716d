"""Integrate the flow from a few starting metrics and watch the Lyapunov function.

With c1 = 2 and kappa1 = kappa2 the Lyapunov function is available and should
decrease monotonically along every trajectory.
"""
import numpy as np

from grflab import IntegratorConfig, integrate, make_params

p = make_params(2, 0.25, 0.5)
cfg = IntegratorConfig(max_time=500)
rng = np.random.default_rng(3)

for x0 in [(1.5, 0.7, 3.0), (0.3, 4.0, 0.5), *rng.uniform(0.2, 8.0, (3, 3))]:
    traj = integrate(p, x0, cfg)
    dv = np.diff(traj.lyapunov)
    print(f"x0={np.round(x0, 3)}  t_end={traj.t[-1]:8.2f}  steps={len(traj):5d}  "
          f"final={np.round(traj.final, 8)}  max dV={dv.max():.1e}  {traj.verdict.value}")

# the catalog space has no Lyapunov function, but the fixed point still attracts
q = make_params("10/7", 0.25, 0.5)
traj = integrate(q, (1.2, 2.0, 3.0), cfg)
print("\nc1 = 10/7:", np.round(traj.final, 8), traj.verdict.value)

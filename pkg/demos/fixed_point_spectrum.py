"""Fixed point and linear stability across a sweep of c1.

For each c1 the BRF metric is computed in closed form, the residual of the
reduced vector field is evaluated there, and the finite-difference spectrum is
compared with the analytic eigenvalues.
"""
import numpy as np

from grflab import brf_fixed_point, grf_rhs_closed, make_params, spectrum_report

lam, kappa = 0.25, 0.5
print(f"{'c1':>8} {'x2':>10} {'x3':>10} {'|f(g0)|':>10}  eigenvalues")
for c1 in (1.0005, 1.01, 1.2, 10 / 7, 1.5, 1.8, 2.0):
    p = make_params(c1, lam, kappa)
    g0 = brf_fixed_point(p)
    res = np.max(np.abs(grf_rhs_closed(p, g0)))
    rep = spectrum_report(p)
    ev = np.sort(rep.eigenvalues.real)
    print(f"{c1:8.4f} {g0.x2:10.4f} {g0.x3:10.4f} {res:10.2e}  {np.round(ev, 6)}  {rep.verdict.value}")

# lambda = 1 makes the third eigenvalue vanish
rep = spectrum_report(make_params(2, 1.0, kappa))
print("\nlambda = 1:", np.round(rep.eigenvalues.real, 8), rep.verdict.value)

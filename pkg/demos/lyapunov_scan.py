"""Numerical evidence for the global Lyapunov inequality.

Samples the positivity of g(x, y) over (0, 10]^2, then checks the sign pattern
of the quartic q on and around the interval I with exact rationals.
"""
from fractions import Fraction

import numpy as np

from grflab import case1_certificate, global_positivity_scan, q_polynomial
from grflab.stability import interval_I

for lam in (0.1, 0.25, 0.45):
    rep = global_positivity_scan(lam, 0.5, samples=200_000)
    print(f"lambda={lam:4}  min g={rep.min:.3e} at {np.round(rep.argmin, 4)}  "
          f"pass={rep.passed}  {rep.case_tallies}")

lo, hi = interval_I()
print(f"\nI = ({lo:.6f}, {hi:.6f})")
for y in (Fraction(7, 5), lo, Fraction(3, 2), 2, Fraction(13, 5), hi, 3):
    print(f"q({float(y):.4f}) = {float(q_polynomial(y)):12.3f}")

cert = case1_certificate(samples=50_000)
print("\ncase 1 certificate:", cert.passed, f"min p0 = {cert.min_p0:.4f}")

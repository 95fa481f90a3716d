"""Generalized Ricci flow of diagonal invariant metrics on aligned spaces and SO(n)."""
from .curvature import grf_rhs_assembled, grf_rhs_closed, h2_diag, ricci_diag
from .flow import GridSpec, Plane, check_invariant_subspace, integrate, portrait, sink_check
from .integrator import IntegratorConfig, Trajectory, Verdict, run_flow
from .son import build_nice_basis, harmonicity_residual, son_integrate, son_jacobian_at_killing, son_rhs
from .space import (AlignedParams, DiagonalMetric, DomainError, ParameterError, brf_fixed_point,
                    h0_coefficients, lookup, make_params)
from .stability import (PreconditionError, case1_certificate, eigen3, global_positivity_scan,
                        lyapunov_breakdown, q_polynomial, spectrum_report)

__version__ = "0.1.0"

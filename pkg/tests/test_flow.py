import numpy as np
import pytest

from grflab.flow import (GridSpec, Plane, check_invariant_subspace, embed, in_plane_fixed_point,
                         integrate, portrait, sink_check)
from grflab.integrator import IntegratorConfig, Trajectory, Verdict, run_flow
from grflab.space import DomainError, brf_fixed_point, make_params
from grflab.stability import PreconditionError, lyapunov_value


@pytest.fixture
def c12():
    return make_params(2, "1/4", "1/2")


def test_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(rel_tol=0)
    with pytest.raises(ValueError):
        IntegratorConfig(min_step=2.0)


def test_linear_decay_matches_exponential():
    cfg = IntegratorConfig(max_time=5.0)
    traj = run_flow(lambda x: -x, [1.0, 2.0], cfg)
    assert traj.verdict is Verdict.MAX_TIME
    np.testing.assert_allclose(traj.final, np.exp(-traj.t[-1]) * np.array([1.0, 2.0]), rtol=1e-7)
    assert np.all(np.diff(traj.t) > 0) and traj.t[0] == 0.0


def test_positivity_escape_located():
    cfg = IntegratorConfig()
    traj = run_flow(lambda x: np.array([-1.0, 0.0]), [1.0, 1.0], cfg)
    assert traj.verdict is Verdict.ESCAPED_POSITIVITY
    assert traj.t[-1] == pytest.approx(1.0 - cfg.positivity_floor, abs=1e-9)


def test_thinning_keeps_endpoints():
    n = 25_000
    t = np.linspace(0, 1, n)
    tr = Trajectory(t, np.ones((n, 3)), np.zeros(n), None, Verdict.CONVERGED)
    th = tr.thinned()
    assert len(th) <= 10_000 and th.t[0] == 0 and th.t[-1] == 1


def test_c12_start_converges_with_decreasing_v(c12):
    traj = integrate(c12, (1.1, 0.9, 2.2))
    assert traj.verdict is Verdict.CONVERGED
    np.testing.assert_allclose(traj.final, (1, 1, 2), atol=1e-6)
    assert np.all(np.diff(traj.lyapunov) <= 1e-9)
    far = np.max(np.abs(traj.x[:-1] - (1, 1, 2)), axis=1) > 1e-6
    assert np.all(np.diff(traj.lyapunov)[far] < 0)


def test_start_at_fixed_point(c12):
    traj = integrate(c12, brf_fixed_point(c12))
    assert traj.verdict is Verdict.CONVERGED and len(traj) == 1


def test_catalog_perturbed_start():
    p = make_params("10/7", "1/4", "1/2")
    g0 = brf_fixed_point(p).as_array()
    traj = integrate(p, g0 + 0.01 * np.array([1, -1, 1]))
    assert traj.verdict is Verdict.CONVERGED
    np.testing.assert_allclose(traj.final, g0, atol=1e-6)
    assert traj.lyapunov is None


def test_converged_final_sample_criterion(c12, rng):
    cfg = IntegratorConfig()
    for _ in range(10):
        traj = integrate(c12, rng.uniform(0.2, 6, 3), cfg)
        assert traj.verdict is Verdict.CONVERGED
        near = np.max(np.abs(traj.final - (1, 1, 2))) <= cfg.convergence_radius
        assert near or traj.rhs_norm[-1] <= cfg.stall_rhs_norm


def test_rel_tol_halving_is_consistent(c12):
    a = integrate(c12, (3.0, 0.5, 5.0), IntegratorConfig(rel_tol=1e-8))
    b = integrate(c12, (3.0, 0.5, 5.0), IntegratorConfig(rel_tol=5e-9))
    assert np.max(np.abs(a.final - b.final)) < 1e-7


def test_invalid_start(c12):
    with pytest.raises(DomainError):
        integrate(c12, (1.0, -1.0, 2.0))


def test_time_budget(c12):
    traj = integrate(c12, (5.0, 5.0, 5.0), IntegratorConfig(max_time=0.5))
    assert traj.verdict is Verdict.MAX_TIME and traj.t[-1] == pytest.approx(0.5)


@pytest.mark.parametrize("c1", ["10/7", "3/2", 2])
def test_x3_plane_is_invariant(c1):
    rep = check_invariant_subspace(make_params(c1, 0.3, 0.2, 0.4), Plane.X3_FIXED)
    assert rep.passed and rep.max_residual <= 1e-11


def test_proportional_plane(c12):
    assert check_invariant_subspace(c12, Plane.X1_PROP_X2).passed
    rep = check_invariant_subspace(make_params("10/7", "1/4", "1/2"), Plane.X1_PROP_X2)
    assert not rep.passed and rep.max_relative_residual > 0.1
    with pytest.raises(PreconditionError):
        check_invariant_subspace(make_params(2, 0.25, 0.5, 0.3), Plane.X1_PROP_X2)


@pytest.mark.parametrize("plane", list(Plane))
def test_trajectory_stays_in_invariant_plane(c12, plane):
    x0 = np.array(embed(c12, plane, 0.6, 3.1), dtype=float)
    traj = integrate(c12, x0)
    if plane is Plane.X3_FIXED:
        drift = np.abs(traj.x[:, 2] - 2.0)
    else:
        drift = np.abs(traj.x[:, 0] - traj.x[:, 1])
    assert drift.max() <= 1e-6


def test_plane_parse():
    assert Plane.parse("x3fixed") is Plane.X3_FIXED
    assert Plane.parse("X1_PROP_X2") is Plane.X1_PROP_X2
    with pytest.raises(ValueError):
        Plane.parse("x2fixed")


def test_portrait_figure_planes():
    p = make_params("10/7", "1/4", "1/2")
    assert in_plane_fixed_point(p, Plane.X3_FIXED) == pytest.approx((1, 7 / 3))
    assert in_plane_fixed_point(p, Plane.X1_PROP_X2) == pytest.approx((7 / 3, 10 / 3))
    pg = portrait(p, Plane.X3_FIXED, GridSpec(resolution=5, streamlines=False))
    assert len(pg) == 25
    norms = np.hypot(*pg.directions.T)
    np.testing.assert_allclose(norms[norms > 0], 1.0)
    meta = pg.metadata(p)
    assert meta["tangency"]["invariant"] and meta["coordinates"] == ["x1", "x2"]
    meta = portrait(p, Plane.X1_PROP_X2, GridSpec(resolution=2, streamlines=False)).metadata(p)
    assert not meta["tangency"]["invariant"]


def test_portrait_empty_grid():
    p = make_params("10/7", "1/4", "1/2")
    pg = portrait(p, Plane.X3_FIXED, GridSpec(resolution=0))
    assert len(pg) == 0 and pg.streamlines == []


def test_sink_check_small_grid():
    p = make_params("10/7", "1/4", "1/2")
    pg = portrait(p, Plane.X3_FIXED, GridSpec(resolution=4))
    check = sink_check(pg)
    assert check.passed and check.checked == 16
    with pytest.raises(ValueError):
        sink_check(portrait(p, Plane.X3_FIXED, GridSpec(resolution=2, streamlines=False)))


def test_lyapunov_value_requires_positive_lambda():
    with pytest.raises(PreconditionError):
        lyapunov_value(0.0, (1, 1, 2))
    assert lyapunov_value(0.25, (1, 1, 2)) == 0.0

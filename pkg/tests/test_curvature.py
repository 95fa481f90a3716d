from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grflab.curvature import (assembled_kernel, closed_kernel, closed_kernel_expanded, grf_rhs_assembled,
                              grf_rhs_closed, h2_diag, ricci_diag)
from grflab.space import DomainError, brf_fixed_point, h0_coefficients, make_params

pos = st.floats(min_value=0.1, max_value=10.0)
c1s = st.floats(min_value=1.05, max_value=2.0)
kap = st.floats(min_value=1e-3, max_value=0.5)


def test_ricci_and_h2_at_c1_two():
    p = make_params(2, 0.3, 0.5)
    r = ricci_diag(p, (1, 1, 2))
    h = h2_diag(p, h0_coefficients(p), (1, 1, 2))
    assert r.r1 == pytest.approx(0.25, abs=1e-15)
    assert r.r2 == pytest.approx(0.25, abs=1e-15)
    assert h.h1 == pytest.approx(1.0, abs=1e-15)
    assert h.h2 == pytest.approx(1.0, abs=1e-15)


@given(c1s, st.floats(min_value=0.0, max_value=1.0), kap, kap)
def test_brf_condition_at_fixed_point(c1, lam, k1, k2):
    # Ric = H^2/4 at g0; the tensor coefficient on block i is x_i r_i
    p = make_params(c1, lam, k1, k2)
    g0 = brf_fixed_point(p).as_array()
    r = np.array(ricci_diag(p, g0))
    h = np.array(h2_diag(p, h0_coefficients(p), g0))
    np.testing.assert_allclose(4 * g0 * r, h, rtol=1e-10, atol=1e-12)


def test_catalog_fixed_point_is_zero():
    p = make_params("10/7", "1/4", "1/2")
    for rhs in (grf_rhs_closed, grf_rhs_assembled):
        assert np.max(np.abs(rhs(p, (1, 7 / 3, 10 / 3)).as_array())) <= 1e-12


@settings(max_examples=200)
@given(c1s, st.floats(min_value=0.0, max_value=1.0), kap, kap, pos, pos, pos)
def test_dual_formula(c1, lam, k1, k2, x1, x2, x3):
    p = make_params(c1, lam, k1, k2)
    a = grf_rhs_assembled(p, (x1, x2, x3)).as_array()
    b = grf_rhs_closed(p, (x1, x2, x3)).as_array()
    assert np.all(np.abs(a - b) <= 1e-10 * np.maximum(np.abs(a), np.abs(b)) + 1e-13)


def test_dual_formula_vectorized(rng):
    # stated band: lambda < (c1-1)/c1, |closed - assembled| <= 1e-9 (1 + |closed|)
    n = 10_000
    c1 = rng.uniform(1.0, 2.0, n)
    c1[c1 == 1.0] = 1.5
    lam = rng.uniform(0, 1, n) * (c1 - 1) / c1
    k1, k2 = rng.uniform(1e-3, 0.5, (2, n))
    x = rng.uniform(0.1, 10, (3, n))
    a = np.array(assembled_kernel(c1, lam, k1, k2, *x))
    b = np.array(closed_kernel(c1, lam, k1, k2, *x))
    assert np.all(np.abs(a - b) <= 1e-9 * (1 + np.abs(b)))


def test_grouped_form_equals_expanded_exactly(rng):
    for _ in range(200):
        c1 = Fraction(int(rng.integers(101, 200)), 100)
        lam, k1, k2 = (Fraction(int(v), 97) for v in rng.integers(1, 49, 3))
        x = [Fraction(int(v), 13) for v in rng.integers(1, 130, 3)]
        assert closed_kernel(c1, lam, k1, k2, *x) == closed_kernel_expanded(c1, lam, k1, k2, *x)


def test_grouped_form_accuracy_near_c1_one():
    p = make_params(1.0005, 0.3, 0.4, 0.2)
    g0 = brf_fixed_point(p).as_array()
    assert np.max(np.abs(closed_kernel(p.c1, p.lam, p.kappa1, p.kappa2, *g0))) <= 1e-12


def test_c1_two_specialization(rng):
    # the c1 = 2, kappa1 = kappa2 = k system written out
    for _ in range(100):
        lam, k = rng.uniform(0, 0.5), rng.uniform(0.01, 0.5)
        x1, x2, x3 = rng.uniform(0.2, 5, 3)
        f = closed_kernel(2.0, lam, k, k, x1, x2, x3)
        e1 = (x3 - x1 ** 2 * x3 + k * (-2 * x3 - 2 * x1 ** 2 * x3 + x1 * (4 + x3 ** 2))) / (2 * x1 ** 2 * x3)
        e2 = (x3 - x2 ** 2 * x3 + k * (-2 * x3 - 2 * x2 ** 2 * x3 + x2 * (4 + x3 ** 2))) / (2 * x2 ** 2 * x3)
        e3 = -((x3 ** 2 - 4) * ((x1 ** 2 + x2 ** 2) * x3 ** 2
                                - 2 * lam * (x2 ** 2 * x3 ** 2 + x1 ** 2 * (-4 * x2 ** 2 + x3 ** 2)))
               / (4 * x1 ** 2 * x2 ** 2 * x3 ** 2))
        np.testing.assert_allclose(f, [e1, e2, e3], rtol=1e-12, atol=1e-13)


@given(c1s, st.floats(min_value=0.0, max_value=1.0), kap, kap, pos, pos)
def test_plane_x3_fixed_and_lines(c1, lam, k1, k2, u, v):
    p = make_params(c1, lam, k1, k2)
    x3 = p.c1 / (p.c1 - 1)
    _, _, f3 = grf_rhs_closed(p, (u, v, x3))
    assert abs(f3) <= 1e-11
    f1, _, _ = grf_rhs_closed(p, (1.0, v, x3))
    assert abs(f1) <= 1e-11
    _, f2, _ = grf_rhs_closed(p, (u, 1 / (p.c1 - 1), x3))
    assert abs(f2) <= 1e-11


@given(st.floats(min_value=0.0, max_value=1.0), kap, pos, pos)
def test_proportional_plane_invariant_for_c1_two(lam, k, v, w):
    p = make_params(2, lam, k)
    f1, f2, _ = grf_rhs_closed(p, (v, v, w))
    assert abs(f1 - f2) <= 1e-11 * (1 + max(abs(f1), abs(f2)))


def _proportional_plane_residual(c1, k, x2, x3):
    # f1 - (c1-1) f2 on x1 = (c1-1) x2 with kappa1 = kappa2 = k, factored by hand
    n = (2 * c1 ** 3 * k * x2 ** 2 * x3 + c1 ** 3 * x2 ** 2 * x3 - 4 * c1 ** 2 * k * x2 ** 2 * x3
         - 2 * c1 ** 2 * k * x2 * x3 ** 2 - 2 * c1 ** 2 * k * x2 - 2 * c1 ** 2 * x2 ** 2 * x3
         + 2 * c1 * k * x2 ** 2 * x3 + 4 * c1 * k * x2 * x3 ** 2 + 2 * c1 * k * x3
         + c1 * x2 ** 2 * x3 - c1 * x3 - 2 * k * x2 * x3 ** 2)
    return (c1 - 2) * n / (2 * c1 * x2 ** 2 * x3 * (c1 - 1) ** 2)


@given(c1s, kap, pos, pos)
def test_proportional_plane_residual_has_c1_minus_two_factor(c1, k, v, w):
    p = make_params(c1, 0.25, k)
    f1, f2, _ = grf_rhs_closed(p, ((p.c1 - 1) * v, v, w))
    ref = _proportional_plane_residual(p.c1, k, v, w)
    assert abs((f1 - (p.c1 - 1) * f2) - ref) <= 1e-10 * (1 + abs(ref) + abs(f1) + abs(f2))


def test_proportional_plane_not_invariant_for_catalog_space():
    p = make_params("10/7", "1/4", "1/2")
    c1 = p.c1
    f1, f2, _ = grf_rhs_closed(p, ((c1 - 1) * 2.0, 2.0, 3.0))
    assert abs(f1 - (c1 - 1) * f2) > 1e-3


@pytest.mark.parametrize("g", [(0, 1, 1), (1, -1, 1), (1, 1, 1e-12)])
def test_domain_errors(g):
    p = make_params(1.5, 0.2, 0.3)
    with pytest.raises(DomainError):
        grf_rhs_closed(p, g)
    with pytest.raises(DomainError):
        ricci_diag(p, g)


def test_h_blocks_nonnegative(rng):
    for _ in range(500):
        # a2 = lambda c2 < 1
        c1 = rng.uniform(1.01, 2)
        p = make_params(c1, rng.uniform(0, 1) * (c1 - 1) / c1, *rng.uniform(1e-3, 0.5, 2))
        h = h2_diag(p, h0_coefficients(p), rng.uniform(0.1, 10, 3))
        assert min(h) >= -1e-12

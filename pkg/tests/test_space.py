import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grflab.space import (BUILTIN_CATALOG, DiagonalMetric, DomainError, ParameterError,
                          brf_fixed_point, cartan_coefficients, h0_coefficients, load_catalog,
                          lookup, make_params, parse_real)

c1s = st.floats(min_value=1.0 + 1e-6, max_value=2.0)


def test_catalog_space_constants():
    p = make_params("10/7", "1/4", "1/2")
    assert p.c2 == pytest.approx(10 / 3, rel=1e-15)
    assert p.a1 == pytest.approx(5 / 14, rel=1e-15)
    assert p.a2 == pytest.approx(5 / 6, rel=1e-15)
    assert p.A3 == pytest.approx(-7 / 3, rel=1e-15)
    assert p.B3 == pytest.approx(7 / 3, rel=1e-15)
    assert p.B4 == 1.0
    assert p.kappa2 == p.kappa1 == 0.5
    assert p.diagnostics == ()


def test_c1_two():
    p = make_params(2, 0.25, 0.5)
    assert (p.c2, p.A3, p.B3) == (2.0, -1.0, 1.0)


@pytest.mark.parametrize("args,bound", [
    ((3, 0.25, 0.5), "c1"),
    ((1, 0.25, 0.5), "c1"),
    ((1.5, -0.1, 0.5), "lambda"),
    ((1.5, 0.1, 0.0), "kappa1"),
    ((1.5, 0.1, 0.6), "kappa1"),
    ((1.5, 0.1, 0.5, 0.7), "kappa2"),
    ((float("nan"), 0.1, 0.5), "c1"),
])
def test_validation_names_bound(args, bound):
    with pytest.raises(ParameterError, match=bound):
        make_params(*args)


def test_diagnostics():
    assert "abelian" in make_params(1.5, 0, 0.5).diagnostics[0]
    # lambda * c2 = 0.9 * 3 >= 1
    assert "a2" in make_params(1.5, 0.9, 0.5).diagnostics[0]


def test_parse_real():
    assert parse_real("10/7") == float(Fraction(10, 7))
    assert parse_real(" 3 ") == 3.0
    with pytest.raises(ParameterError):
        parse_real("1/0")
    with pytest.raises(ParameterError):
        parse_real("abc")
    with pytest.raises(ParameterError):
        parse_real(True)


@pytest.mark.parametrize("c1,expected", [("10/7", (1, 7 / 3, 10 / 3)), (2, (1, 1, 2)),
                                         ("3/2", (1, 2, 3))])
def test_brf_fixed_point(c1, expected):
    g0 = brf_fixed_point(make_params(c1, 0.25, 0.5))
    np.testing.assert_allclose(g0.as_array(), expected, rtol=1e-15)


@given(c1s)
def test_fixed_point_proportions(c1):
    p = make_params(c1, 0.0, 0.5)
    g = brf_fixed_point(p)
    assert g.x3 == pytest.approx(p.c1 * g.x2, rel=1e-14)
    assert g.x1 == pytest.approx((p.c1 - 1) * g.x2, rel=1e-14)


def test_h0_coefficients_examples():
    h = h0_coefficients(make_params(2, 0.25, 0.5))
    assert (h.y1, h.y2, h.C3) == (1.0, -1.0, 1.0)
    assert h.S1(2.0) == pytest.approx(2.0) and h.S2(2.0) == pytest.approx(2.0)
    h = h0_coefficients(make_params("10/7", 0.25, 0.5))
    assert h.y2 == pytest.approx(-7 / 3) and h.C3 == pytest.approx(7 / 3)


@given(c1s, st.floats(min_value=0.1, max_value=10.0))
def test_h0_is_harmonic_and_matches_general_q(c1, x3):
    p = make_params(c1, 0.1, 0.5)
    h = h0_coefficients(p)
    assert abs(h.harmonicity_defect(p)) <= 1e-12 * max(1.0, abs(h.y2))
    q = cartan_coefficients(p, h.y1, h.y2)
    assert q.C3 == pytest.approx(h.C3, rel=1e-12)
    assert q.S1(x3) == pytest.approx(h.S1(x3), rel=1e-10)
    assert q.S2(x3) == pytest.approx(h.S2(x3), rel=1e-10)


def test_metric_positivity():
    with pytest.raises(DomainError):
        DiagonalMetric(1.0, 0.0, 2.0)
    with pytest.raises(DomainError):
        DiagonalMetric.from_array([1.0, 1.0, float("inf")])
    assert DiagonalMetric.from_array([1, 2, 3]).x3 == 3.0


def test_catalog(tmp_path):
    assert lookup("su7so8so7").c1 == pytest.approx(10 / 7)
    with pytest.raises(KeyError, match="unknown space"):
        lookup("nope")
    path = tmp_path / "cat.json"
    path.write_text(json.dumps([{"name": "c2", "c1": 2, "lambda": "1/4", "kappa1": 0.5}]))
    cat = load_catalog(path)
    assert set(cat) == set(BUILTIN_CATALOG) | {"c2"}
    assert lookup("c2", cat).kappa2 == 0.5
    path.write_text(json.dumps({"name": "x"}))
    with pytest.raises(ParameterError):
        load_catalog(path)

import json

import numpy as np

from grflab import io as gio
from grflab.flow import GridSpec, Plane, integrate, portrait
from grflab.integrator import Trajectory, Verdict
from grflab.son import build_nice_basis
from grflab.space import make_params


def test_trajectory_csv_roundtrip(tmp_path):
    p = make_params(2, 0.25, 0.5)
    traj = integrate(p, (1.5, 0.7, 3.0))
    path = gio.write_trajectory(tmp_path / "t.csv", traj)
    header, rows = gio.read_csv(path)
    assert header == ["t", "x1", "x2", "x3", "rhs_norm", "lyapunov"]
    data = np.array(rows, dtype=float)
    np.testing.assert_array_equal(data[:, 1:4], traj.x)   # 17 digits round-trip exactly
    np.testing.assert_array_equal(data[:, 5], traj.lyapunov)


def test_empty_lyapunov_column(tmp_path):
    p = make_params("10/7", 0.25, 0.5)
    traj = integrate(p, (1.01, 2.3, 3.3))
    _, rows = gio.read_csv(gio.write_trajectory(tmp_path / "t.csv", traj))
    assert all(r[-1] == "" for r in rows)


def test_thinning_to_row_cap(tmp_path):
    n = 12_345
    tr = Trajectory(np.arange(n, dtype=float), np.ones((n, 3)), np.zeros(n), None, Verdict.MAX_TIME)
    _, rows = gio.read_csv(gio.write_trajectory(tmp_path / "t.csv", tr))
    assert len(rows) <= 10_000 and rows[-1][0] == str(n - 1)


def test_son_trajectory_header(tmp_path):
    tr = Trajectory(np.zeros(1), np.ones((1, 6)), np.zeros(1), None, Verdict.CONVERGED)
    header, _ = gio.read_csv(gio.write_trajectory(tmp_path / "s.csv", tr, with_lyapunov=False))
    assert header == ["t", "x1", "x2", "x3", "x4", "x5", "x6", "rhs_norm"]


def test_portrait_files(tmp_path):
    p = make_params("10/7", 0.25, 0.5)
    pg = portrait(p, Plane.X3_FIXED, GridSpec(resolution=3))
    header, rows = gio.read_csv(gio.write_portrait(tmp_path / "p.csv", pg))
    assert header == ["u", "v", "du", "dv"] and len(rows) == 9
    header, rows = gio.read_csv(gio.write_streamlines(tmp_path / "s.csv", pg))
    assert header == ["line", "u", "v"] and {r[0] for r in rows} == {str(i) for i in range(9)}
    empty = portrait(p, Plane.X3_FIXED, GridSpec(resolution=0))
    assert gio.write_portrait(tmp_path / "e.csv", empty).read_text() == "u,v,du,dv\n"


def test_structure_constants_dump(tmp_path):
    basis = build_nice_basis(4)
    header, rows = gio.read_csv(gio.write_structure_constants(tmp_path / "c.csv", basis))
    assert header == ["i", "j", "k", "c"]
    c = basis.dense()
    assert len(rows) == np.count_nonzero(c)
    for i, j, k, v in rows:
        assert float(v) == c[int(i) - 1, int(j) - 1, int(k) - 1]


def test_json_is_deterministic_and_plain():
    obj = {"b": np.float64(1.5), "a": [np.int64(2), np.bool_(True)], "c": np.array([1.0, np.inf]),
           "v": Verdict.CONVERGED}
    text = gio.dumps(obj)
    assert text == gio.dumps(obj)
    back = json.loads(text)
    assert back == {"a": [2, True], "b": 1.5, "c": [1.0, "inf"], "v": "ConvergedToBRF"}

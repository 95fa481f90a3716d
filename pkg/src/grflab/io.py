"""CSV and JSON writers.  Floats are printed with 17 significant digits."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .flow import PortraitGrid
from .integrator import Trajectory

MAX_CSV_ROWS = 10_000


def fmt(v) -> str:
    return format(float(v), ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if hasattr(obj, "value"):   # enums
        return obj.value
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj))
    return path


def _write_rows(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def trajectory_rows(traj: Trajectory, max_rows: int = MAX_CSV_ROWS, with_lyapunov: bool = True):
    """Header and rows for a trajectory, thinned to ``max_rows``.

    Three-dimensional runs use ``t,x1,x2,x3,rhs_norm,lyapunov`` with an empty
    Lyapunov column when none applies; ``with_lyapunov=False`` drops it.
    """
    tr = traj.thinned(max_rows)
    d = tr.x.shape[1]
    header = ["t", *(f"x{i + 1}" for i in range(d)), "rhs_norm"]
    if with_lyapunov:
        header.append("lyapunov")
    rows = []
    for k in range(len(tr)):
        row = [fmt(tr.t[k]), *(fmt(v) for v in tr.x[k]), fmt(tr.rhs_norm[k])]
        if with_lyapunov:
            row.append("" if tr.lyapunov is None else fmt(tr.lyapunov[k]))
        rows.append(row)
    return header, rows


def write_trajectory(path, traj: Trajectory, max_rows: int = MAX_CSV_ROWS,
                     with_lyapunov: bool = True) -> Path:
    return _write_rows(path, *trajectory_rows(traj, max_rows, with_lyapunov))


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_portrait(path, grid: PortraitGrid) -> Path:
    rows = [[fmt(u), fmt(v), fmt(du), fmt(dv)]
            for (u, v), (du, dv) in zip(grid.points, grid.directions)]
    return _write_rows(path, ["u", "v", "du", "dv"], rows)


def write_streamlines(path, grid: PortraitGrid, max_rows_per_line: int = 400) -> Path:
    """Long-format streamlines: ``line,u,v`` with each line thinned."""
    rows = []
    for k, line in enumerate(grid.streamlines):
        idx = np.unique(np.linspace(0, len(line) - 1, min(len(line), max_rows_per_line))
                        .round().astype(int))
        rows.extend([str(k), fmt(u), fmt(v)] for u, v in line[idx])
    return _write_rows(path, ["line", "u", "v"], rows)


def write_structure_constants(path, basis) -> Path:
    """Nonzero ``c_ij^k`` over ordered pairs, 1-based indices."""
    c = basis.dense()
    i, j, k = np.nonzero(c)
    rows = [[str(a + 1), str(b + 1), str(m + 1), fmt(c[a, b, m])] for a, b, m in zip(i, j, k)]
    return _write_rows(path, ["i", "j", "k", "c"], rows)

"""Generalized Ricci flow of diagonal left-invariant metrics on SO(n).

The basis ``e_rs = E_rs - E_sr`` (``r < s``, lexicographic) is orthogonal
for the Killing metric ``g_kil(X, Y) = -(n - 2) tr(XY)`` with
``g_kil(e_rs, e_rs) = 2 (n - 2)``.  Structure constants are taken in the
normalized basis ``e_rs / sqrt(2 (n - 2))``.  Sums written over ``(i, j)``
run over all ordered pairs; the table stores ``i < j`` and doubles.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .integrator import IntegratorConfig, Trajectory, run_flow
from .space import DomainError, POSITIVITY_GUARD

MAX_INTEGRATION_N = 12


@dataclass(frozen=True)
class NiceBasis:
    """Structure constants of so(n) in a Killing-orthonormal basis.

    Attributes
    ----------
    n : int
    index_map : tuple of (r, s)
        0-based position ``k`` to the 1-based pair ``(r, s)``.
    norm_factor : float
        ``sqrt(2 (n - 2))``.
    table : (n_pairs, dim) array
        Row ``p`` holds ``c_{ij}^k`` for the ``p``-th pair ``i < j`` of
        ``pairs``.
    pairs : (n_pairs, 2) int array
    diagnostics : tuple of str
    """

    n: int
    index_map: tuple
    norm_factor: float
    table: np.ndarray
    pairs: np.ndarray
    diagnostics: tuple = ()

    @property
    def dim(self) -> int:
        return self.n * (self.n - 1) // 2

    def triples(self):
        """Nonzero ``(i, j, k, c)`` with ``i < j``, 0-based."""
        p, k = np.nonzero(self.table)
        return self.pairs[p, 0], self.pairs[p, 1], k, self.table[p, k]

    def dense(self) -> np.ndarray:
        """Full ``c[i, j, k]`` over ordered pairs."""
        c = np.zeros((self.dim,) * 3)
        i, j, k, v = self.triples()
        c[i, j, k] = v
        c[j, i, k] = -v
        return c

    def casimir(self) -> np.ndarray:
        """``sum_{i,j} (c_ij^k)^2`` for every ``k``."""
        return 2.0 * np.sum(self.table ** 2, axis=0)


def so_basis_matrices(n: int) -> tuple[list, np.ndarray]:
    pairs = [(r, s) for r in range(1, n + 1) for s in range(r + 1, n + 1)]
    mats = np.zeros((len(pairs), n, n))
    for k, (r, s) in enumerate(pairs):
        mats[k, r - 1, s - 1] = 1.0
        mats[k, s - 1, r - 1] = -1.0
    return pairs, mats


def killing_trace_factor(n: int) -> float:
    """Factor ``b`` with ``B(X, Y) = b tr(XY)``, from ``tr(ad X ad Y)``.

    Brute force over the adjoint representation; meant as a self-check for
    small ``n``.
    """
    pairs, mats = so_basis_matrices(n)
    index = {pq: k for k, pq in enumerate(pairs)}
    dim = len(pairs)

    def coords(m):
        return np.array([m[r - 1, s - 1] for r, s in pairs])

    def ad(x):
        return np.column_stack([coords(x @ mats[k] - mats[k] @ x) for k in range(dim)])

    x = mats[index[(1, 2)]]
    return float(np.trace(ad(x) @ ad(x)) / np.trace(x @ x))


def build_nice_basis(n: int) -> NiceBasis:
    """Structure constants of so(n) from explicit matrix commutators."""
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    n = int(n)
    pairs, mats = so_basis_matrices(n)
    dim = len(pairs)
    norm = math.sqrt(2.0 * (n - 2))
    rows = list(itertools.combinations(range(dim), 2))
    table = np.zeros((len(rows), dim))
    for p, (i, j) in enumerate(rows):
        br = mats[i] @ mats[j] - mats[j] @ mats[i]
        # e_rs has +1 at (r, s): that entry is the e_rs coordinate
        coef = np.array([br[r - 1, s - 1] for r, s in pairs])
        table[p] = coef / norm
    diagnostics = ("so(4) is not simple",) if n == 4 else ()
    return NiceBasis(n, tuple(pairs), norm, table, np.array(rows, dtype=int).reshape(-1, 2),
                     diagnostics)


def _check(x, dim):
    x = np.asarray(x, dtype=float)
    if x.shape != (dim,):
        raise ValueError(f"expected {dim} metric coefficients, got shape {x.shape}")
    if np.any(~np.isfinite(x)) or np.any(x <= POSITIVITY_GUARD):
        raise DomainError("metric coefficients must be strictly positive")
    return x


def h2_matrix(basis: NiceBasis, x) -> np.ndarray:
    """``(H_kil)^2_g(e_k, e_l) = sum_{i,j} c_ij^k c_ij^l / (x_i x_j)``."""
    w = 2.0 / (x[basis.pairs[:, 0]] * x[basis.pairs[:, 1]])
    return basis.table.T @ (w[:, None] * basis.table)


def harmonicity_residual(basis: NiceBasis, x) -> float:
    """Largest ``|H^2(e_k, e_l)|`` over ``k != l`` with ``x_k != x_l``."""
    x = _check(x, basis.dim)
    m = np.abs(h2_matrix(basis, x))
    mask = x[:, None] != x[None, :]
    return float(m[mask].max()) if np.any(mask) else 0.0


def _rhs_kernel(basis: NiceBasis):
    i, j, k, c = basis.triples()
    c2 = 2.0 * c ** 2  # both orderings of (i, j)
    casimir = np.bincount(k, weights=c2, minlength=basis.dim)
    dim = basis.dim

    def f(x):
        xi, xj, xk = x[i], x[j], x[k]
        terms = c2 * ((xi ** 2 + xj ** 2 - xk ** 2) + 1.0) / (xi * xj)
        return -casimir + 0.5 * np.bincount(k, weights=terms, minlength=dim)

    return f


def son_rhs(basis: NiceBasis, x) -> np.ndarray:
    """Flow of the diagonal coefficients ``x_k'``."""
    x = _check(x, basis.dim)
    return _rhs_kernel(basis)(x)


def son_ricci_and_h2(basis: NiceBasis, x):
    """Dense ``Ric(e_k, e_l)`` and ``H^2(e_k, e_l)`` from the general formulas.

    ``Ric_kl = 1/2 S_kl - 1/4 sum c_ij^k c_ij^l (x_i^2 + x_j^2 - x_k x_l) / (x_i x_j)``
    with ``S_kl = sum c_ij^k c_ij^l``, and ``H^2_kl = sum c_ij^k c_ij^l / (x_i x_j)``.
    Sums run over all ordered ``(i, j)`` of the dense table.
    """
    x = _check(x, basis.dim)
    c = basis.dense()
    inv = 1.0 / np.outer(x, x)
    sq = (x[:, None] ** 2 + x[None, :] ** 2) * inv
    s0 = np.einsum("ijk,ijl->kl", c, c)
    h2 = np.einsum("ijk,ijl,ij->kl", c, c, inv)
    a = np.einsum("ijk,ijl,ij->kl", c, c, sq)
    ric = 0.5 * s0 - 0.25 * (a - np.outer(x, x) * h2)
    return ric, h2


def son_rhs_assembled(basis: NiceBasis, x) -> np.ndarray:
    """Diagonal of ``-2 Ric + 1/2 H^2`` built from the dense formulas."""
    ric, h2 = son_ricci_and_h2(basis, x)
    return np.diag(-2.0 * ric + 0.5 * h2)


def son_jacobian_at_killing(basis: NiceBasis) -> np.ndarray:
    """Diagonal of the Jacobian at the Killing metric: ``-sum_{i,j} (c_ij^k)^2``."""
    return -basis.casimir()


def son_jacobian(basis: NiceBasis, x) -> np.ndarray:
    """Full Jacobian of :func:`son_rhs` from its partial derivatives.

    ``df_k/dx_k = -x_k sum_{i,j} (c_ij^k)^2 / (x_i x_j)`` and, for ``m != k``,
    ``df_k/dx_m = sum_j (c_mj^k)^2 (x_m^2 - x_j^2 + x_k^2 - 1) / (x_m^2 x_j)``,
    the second counting both slots in which ``m`` can appear.
    """
    x = _check(x, basis.dim)
    i, j, k, c = basis.triples()
    c2 = c ** 2
    jac = np.zeros((basis.dim, basis.dim))
    np.add.at(jac, (k, k), -x[k] * 2.0 * c2 / (x[i] * x[j]))
    for m, o in ((i, j), (j, i)):
        np.add.at(jac, (k, m), 2.0 * c2 * (x[m] ** 2 - x[o] ** 2 + x[k] ** 2 - 1.0) / (x[m] ** 2 * x[o]) / 2.0)
    return jac


def son_jacobian_fd(basis: NiceBasis, x, h: float = 1e-6) -> np.ndarray:
    x = _check(x, basis.dim)
    f = _rhs_kernel(basis)
    jac = np.empty((basis.dim, basis.dim))
    for m in range(basis.dim):
        e = np.zeros(basis.dim)
        e[m] = h
        jac[:, m] = (f(x + e) - f(x - e)) / (2 * h)
    return jac


def son_integrate(basis: NiceBasis, x0, cfg: IntegratorConfig | None = None,
                  max_n: int = MAX_INTEGRATION_N) -> Trajectory:
    """Run the SO(n) flow from ``x0`` towards the Killing metric."""
    if basis.n > max_n:
        raise ValueError(f"integration is capped at n = {max_n}; got n = {basis.n}")
    x0 = _check(x0, basis.dim)
    return run_flow(_rhs_kernel(basis), x0, cfg or IntegratorConfig(),
                    target=np.ones(basis.dim))

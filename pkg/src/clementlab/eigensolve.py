"""Numerical eigensolvers that stand in for a library ``eig()``.

* ``solve_unsymmetric``: Francis double-shift QR on the tridiagonal viewed as
  an upper Hessenberg matrix (fill-in above the superdiagonal is allowed).
* ``solve_symmetric``: implicit Wilkinson-shift QL for the symmetric form.
* ``sturm_count`` / ``bisection_eigenvalues``: a slow but independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .matgen import SymmetricTridiagonalMatrix
from .spectra import sort_spectrum

__all__ = [
    "ComputedSpectrum",
    "SolverConfig",
    "solve_unsymmetric",
    "solve_symmetric",
    "sturm_count",
    "sturm_counts",
    "bisection_eigenvalues",
    "bisection_spectrum",
]

EPS = float(np.finfo(float).eps)


@dataclass(frozen=True, eq=False)
class ComputedSpectrum:
    values: np.ndarray
    iterations: int
    deflations: int
    converged: bool
    solver: str = ""

    @property
    def order(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SolverConfig:
    max_sweeps_per_eigenvalue: int = 30
    deflation_tol_factor: float = EPS
    balance: bool = False

    def __post_init__(self):
        if self.max_sweeps_per_eigenvalue < 1:
            raise ValueError("max_sweeps_per_eigenvalue must be positive")
        if not self.deflation_tol_factor > 0:
            raise ValueError("deflation_tol_factor must be positive")


DEFAULT_CONFIG = SolverConfig()


def solve_unsymmetric(m, cfg: SolverConfig = DEFAULT_CONFIG) -> ComputedSpectrum:
    """Eigenvalues of a general zero-diagonal tridiagonal matrix.

    On non-convergence the eigenvalues isolated so far are returned with
    ``converged=False``.
    """
    if isinstance(m, SymmetricTridiagonalMatrix):
        m = m.as_tridiagonal()
    if m.order == 1:
        return ComputedSpectrum(np.zeros(1, dtype=complex), 0, 0, True, "unsymmetric")
    a = m.to_dense()
    if cfg.balance:
        _kernels.balance(a)
    wr, wi, found, sweeps, defl = _kernels.hqr(
        a, cfg.deflation_tol_factor, cfg.max_sweeps_per_eigenvalue
    )
    n = m.order
    vals = (wr + 1j * wi)[n - found:]
    return ComputedSpectrum(
        sort_spectrum(vals), int(sweeps), int(defl), bool(found == n), "unsymmetric"
    )


def solve_symmetric(m: SymmetricTridiagonalMatrix, cfg: SolverConfig = DEFAULT_CONFIG) -> ComputedSpectrum:
    n = m.order
    d = np.zeros(n)
    e = np.zeros(n)
    e[: n - 1] = m.offdiag
    ok, sweeps, defl = _kernels.tql(
        d, e, cfg.deflation_tol_factor, cfg.max_sweeps_per_eigenvalue
    )
    vals = np.sort(d) if ok else np.array([])
    return ComputedSpectrum(vals.astype(complex), int(sweeps), int(defl), bool(ok), "symmetric")


def _pivmin(e2):
    return np.finfo(float).tiny * max(1.0, float(e2.max(initial=0.0)))


def sturm_counts(m: SymmetricTridiagonalMatrix, ts) -> np.ndarray:
    """Number of eigenvalues strictly below each t (vectorized over ``ts``).

    Zero pivots are replaced by +pivmin, which amounts to nudging t downward
    and keeps the count strict.
    """
    ts = np.asarray(ts, dtype=float)
    e2 = m.as_array() ** 2
    pivmin = _pivmin(e2)
    q = -ts.copy()
    q[np.abs(q) < pivmin] = pivmin
    count = (q < 0).astype(int)
    for b2 in e2:
        q = -ts - b2 / q
        q[np.abs(q) < pivmin] = pivmin
        count += q < 0
    return count


def sturm_count(m: SymmetricTridiagonalMatrix, t: float) -> int:
    return int(sturm_counts(m, np.array([t]))[0])


def _bisect(m, tol, max_steps=200):
    n = m.order
    e = np.abs(m.as_array())
    rows = np.zeros(n)
    rows[:-1] += e
    rows[1:] += e
    bound = float(rows.max(initial=0.0))
    bound = bound * (1 + 4 * EPS) + np.finfo(float).tiny
    lo = np.full(n, -bound)
    hi = np.full(n, bound)
    idx = np.arange(n)
    steps = 0
    while steps < max_steps and np.max(hi - lo) > 2 * tol:
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        if stuck.all():
            break
        below = sturm_counts(m, mid) > idx
        hi = np.where(below & ~stuck, mid, hi)
        lo = np.where(~below & ~stuck, mid, lo)
        steps += 1
    return 0.5 * (lo + hi), steps


def bisection_eigenvalues(m: SymmetricTridiagonalMatrix, tol: float) -> np.ndarray:
    """All eigenvalues to absolute accuracy ``tol`` by Sturm-count bisection."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    return _bisect(m, tol)[0]


def bisection_spectrum(m: SymmetricTridiagonalMatrix, tol: float = 1e-13) -> ComputedSpectrum:
    vals, steps = _bisect(m, tol)
    return ComputedSpectrum(vals.astype(complex), steps, 0, True, "bisection")

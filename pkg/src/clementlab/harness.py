"""Accuracy metrics and parameter sweeps over the H_n(a, b) family."""
from __future__ import annotations

import csv
import enum
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .eigensolve import (
    ComputedSpectrum,
    SolverConfig,
    bisection_spectrum,
    solve_symmetric,
    solve_unsymmetric,
)
from .errors import ClementLabError
from .matgen import MatrixParams, clement, extended, symmetrize
from .spectra import clement_eigenvalues, exact_eigenvalues, sort_spectrum, special_eigenvalues

__all__ = [
    "Family",
    "SolverKind",
    "Grid",
    "SweepConfig",
    "SweepRecord",
    "CSV_HEADER",
    "relative_error",
    "max_imag",
    "sweep_points",
    "run_point",
    "run_sweep",
    "write_csv",
    "read_csv",
]

CSV_HEADER = ["n", "a", "b", "solver", "balance", "rel_error", "max_imag", "converged", "runtime_ms"]


class Family(enum.Enum):
    CLEMENT = "clement"
    EXTENDED = "extended"
    SPECIAL_A = "special-a"


class SolverKind(enum.Enum):
    UNSYMMETRIC = "unsymmetric"
    SYMMETRIC = "symmetric"
    BISECTION = "bisection"


@dataclass(frozen=True)
class Grid:
    """Arithmetic range; ``stop`` is included when within half a step."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be > 0, got {self.step!r}")
        if self.stop < self.start:
            raise ValueError(f"grid stop {self.stop!r} is below start {self.start!r}")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must look like start:stop:step, got {text!r}")
        return cls(*(float(p) for p in parts))

    def values(self) -> list:
        count = int(math.floor((self.stop - self.start) / self.step + 0.5)) + 1
        # computed from the index, not accumulated, so grids are reproducible
        return [self.start + i * self.step for i in range(count)]


BSpec = Union[Grid, float, str, None]


@dataclass(frozen=True)
class SweepConfig:
    n: int
    family: Family = Family.SPECIAL_A
    a_grid: Optional[Grid] = None
    b_grid: BSpec = None  # Grid, fixed value, or the locks "a" / "-a"
    solver: SolverKind = SolverKind.UNSYMMETRIC
    balance: bool = False
    max_sweeps: int = 30

    def __post_init__(self):
        MatrixParams(self.n)
        if self.family is not Family.CLEMENT and self.a_grid is None:
            raise ValueError(f"family {self.family.value} needs an a grid")
        if isinstance(self.b_grid, str) and self.b_grid not in ("a", "-a"):
            raise ValueError(f"b lock must be 'a' or '-a', got {self.b_grid!r}")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(max_sweeps_per_eigenvalue=self.max_sweeps, balance=self.balance)


@dataclass(frozen=True)
class SweepRecord:
    n: int
    a: float
    b: float
    solver: str
    balance: bool
    rel_error: float
    max_imag: float
    converged: bool
    runtime_ms: float = math.nan
    error: str = field(default="", compare=False)


def _values(s):
    return np.asarray(getattr(s, "values", s), dtype=complex)


def relative_error(exact, computed) -> float:
    """||x - x*||_inf / ||x||_inf with both lists sorted by (real, imag)."""
    x = sort_spectrum(_values(exact))
    y = sort_spectrum(_values(computed))
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {len(x)} exact vs {len(y)} computed")
    if len(x) == 0:
        return 0.0
    num = float(np.max(np.abs(x - y)))
    den = float(np.max(np.abs(x)))
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / den


def max_imag(computed) -> float:
    v = _values(computed)
    return float(np.max(np.abs(v.imag))) if len(v) else 0.0


def sweep_points(cfg: SweepConfig) -> list:
    if cfg.family is Family.CLEMENT:
        return [(0.0, 0.0)]
    pts = []
    for a in cfg.a_grid.values():
        if cfg.family is Family.SPECIAL_A:
            bs = [-a if cfg.n % 2 == 0 else a]
        elif isinstance(cfg.b_grid, Grid):
            bs = cfg.b_grid.values()
        elif cfg.b_grid == "a":
            bs = [a]
        elif cfg.b_grid == "-a":
            bs = [-a]
        else:
            bs = [0.0 if cfg.b_grid is None else float(cfg.b_grid)]
        pts.extend((a, b) for b in bs)
    return sorted(pts)


def _exact(cfg, a, b):
    if cfg.family is Family.CLEMENT:
        return clement_eigenvalues(cfg.n)
    if cfg.family is Family.SPECIAL_A:
        return special_eigenvalues(cfg.n, a)
    return exact_eigenvalues(cfg.n, a, b)


def _solve(kind, matrix, scfg) -> ComputedSpectrum:
    if kind is SolverKind.UNSYMMETRIC:
        return solve_unsymmetric(matrix, scfg)
    sym = symmetrize(matrix)
    if kind is SolverKind.SYMMETRIC:
        return solve_symmetric(sym, scfg)
    return bisection_spectrum(sym)


def run_point(cfg: SweepConfig, a: float, b: float) -> SweepRecord:
    """One grid point; domain failures are recorded, not raised."""
    base = dict(n=cfg.n, a=a, b=b, solver=cfg.solver.value, balance=cfg.balance)
    matrix = clement(cfg.n) if cfg.family is Family.CLEMENT else extended(cfg.n, a, b)
    t0 = time.perf_counter()
    try:
        comp = _solve(cfg.solver, matrix, cfg.solver_config())
    except ClementLabError as exc:
        ms = (time.perf_counter() - t0) * 1e3
        return SweepRecord(**base, rel_error=math.nan, max_imag=math.nan,
                           converged=False, runtime_ms=ms, error=str(exc))
    ms = (time.perf_counter() - t0) * 1e3
    exact = _exact(cfg, a, b)
    if comp.converged and comp.order == exact.order:
        err = relative_error(exact, comp)
    else:
        err = math.nan
    mi = max_imag(comp) if comp.order else math.nan
    return SweepRecord(**base, rel_error=err, max_imag=mi, converged=comp.converged,
                       runtime_ms=ms, error="" if comp.converged else "not converged")


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> list:
    """Evaluate every grid point; output order is lexicographic in (a, b)
    whatever the number of worker threads."""
    pts = sweep_points(cfg)
    if jobs <= 1 or len(pts) <= 1:
        return [run_point(cfg, a, b) for a, b in pts]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda ab: run_point(cfg, *ab), pts))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _row(r: SweepRecord, timing: bool) -> list:
    return [
        str(r.n), _fmt(r.a), _fmt(r.b), r.solver, str(r.balance).lower(),
        _fmt(r.rel_error), _fmt(r.max_imag), str(r.converged).lower(),
        _fmt(r.runtime_ms) if timing else "",
    ]


def write_csv(records, destination, timing: bool = True) -> None:
    """Write records under the fixed header.  With ``timing=False`` the
    runtime column is left empty so that repeated runs are byte-identical."""
    if hasattr(destination, "write"):
        _write(records, destination, timing)
        return
    path = Path(destination)
    try:
        with path.open("w", newline="") as fh:
            _write(records, fh, timing)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror}") from exc


def _write(records, fh, timing):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(_row(r, timing))


def read_csv(source) -> list:
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for row in reader:
        out.append(SweepRecord(
            n=int(row["n"]), a=float(row["a"]), b=float(row["b"]),
            solver=row["solver"], balance=row["balance"] == "true",
            rel_error=float(row["rel_error"]), max_imag=float(row["max_imag"]),
            converged=row["converged"] == "true",
            runtime_ms=float(row["runtime_ms"]) if row["runtime_ms"] else math.nan,
        ))
    return out

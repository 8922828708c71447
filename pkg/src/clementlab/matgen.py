"""Zero-diagonal tridiagonal test matrices: Clement, H_n(a, b) and relatives.

Storage is 0-based. With the 1-based index k = 1..n used in the formulas,

    superdiag[k - 1] = h_{k, k+1}
    subdiag[k - 1]   = h_{k+1, k}

and the diagonal is never stored (it is identically zero).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError, NonPositiveProductError

__all__ = [
    "TridiagonalMatrix",
    "SymmetricTridiagonalMatrix",
    "MatrixParams",
    "clement",
    "extended",
    "special",
    "scale",
    "symmetrize",
    "symmetric_extended",
    "format_matrix",
    "parse_matrix",
]


@dataclass(frozen=True)
class TridiagonalMatrix:
    superdiag: tuple
    subdiag: tuple
    label: str = ""

    def __post_init__(self):
        sup = tuple(float(v) for v in self.superdiag)
        sub = tuple(float(v) for v in self.subdiag)
        if len(sup) != len(sub):
            raise InvalidDimensionError(
                f"superdiag has {len(sup)} entries, subdiag has {len(sub)}"
            )
        if not all(math.isfinite(v) for v in sup + sub):
            raise ValueError("tridiagonal entries must be finite")
        object.__setattr__(self, "superdiag", sup)
        object.__setattr__(self, "subdiag", sub)

    @property
    def order(self) -> int:
        return len(self.superdiag) + 1

    def upper(self) -> np.ndarray:
        return np.array(self.superdiag, dtype=float)

    def lower(self) -> np.ndarray:
        return np.array(self.subdiag, dtype=float)

    def products(self) -> np.ndarray:
        """The pairwise products b_k c_k, which alone fix the spectrum."""
        return self.upper() * self.lower()

    def to_dense(self) -> np.ndarray:
        n = self.order
        out = np.zeros((n, n))
        idx = np.arange(n - 1)
        out[idx, idx + 1] = self.superdiag
        out[idx + 1, idx] = self.subdiag
        return out

    def norm_inf(self) -> float:
        rows = np.zeros(self.order)
        rows[:-1] += np.abs(self.upper())
        rows[1:] += np.abs(self.lower())
        return float(rows.max())


@dataclass(frozen=True)
class SymmetricTridiagonalMatrix:
    offdiag: tuple
    label: str = ""

    def __post_init__(self):
        off = tuple(float(v) for v in self.offdiag)
        for k, v in enumerate(off, start=1):
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"offdiag[{k}] = {v!r} must be finite and >= 0")
        object.__setattr__(self, "offdiag", off)

    @property
    def order(self) -> int:
        return len(self.offdiag) + 1

    def as_array(self) -> np.ndarray:
        return np.array(self.offdiag, dtype=float)

    def as_tridiagonal(self) -> TridiagonalMatrix:
        return TridiagonalMatrix(self.offdiag, self.offdiag, label=self.label)

    def to_dense(self) -> np.ndarray:
        return self.as_tridiagonal().to_dense()

    def norm_inf(self) -> float:
        return self.as_tridiagonal().norm_inf()

    def matvec(self, u) -> np.ndarray:
        e = self.as_array()
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        out[:-1] += e * u[1:]
        out[1:] += e * u[:-1]
        return out


@dataclass(frozen=True)
class MatrixParams:
    """Dimension parameter n (the matrix is (n+1) x (n+1)) and the two shifts."""

    n: int
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        _check_n(self.n)

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def even(self) -> bool:
        return self.n % 2 == 0


def _params(p, a, b) -> MatrixParams:
    if isinstance(p, MatrixParams):
        return p
    return MatrixParams(p, 0.0 if a is None else a, 0.0 if b is None else b)


def _check_n(n):
    if int(n) != n or n < 1:
        raise InvalidDimensionError(f"n must be an integer >= 1, got {n!r}")


def clement(n: int) -> TridiagonalMatrix:
    _check_n(n)
    sup = [float(k) for k in range(1, n + 1)]
    # c_{n+2-k, n+1-k} = k lands at subdiag[n-k]
    sub = [float(n - j) for j in range(n)]
    return TridiagonalMatrix(sup, sub, label=f"C_{n}")


def extended(p, a=None, b=None) -> TridiagonalMatrix:
    """H_n(a, b): add ``a`` to odd-k superdiagonal and ``b`` to odd-k subdiagonal
    entries of the Clement matrix (k counted from the respective corner)."""
    p = _params(p, a, b)
    n, a, b = p.n, float(p.a), float(p.b)
    sup = [0.0] * n
    sub = [0.0] * n
    for k in range(1, n + 1):
        sup[k - 1] = k if k % 2 == 0 else k + a
        sub[n - k] = k if k % 2 == 0 else k + b
    return TridiagonalMatrix(sup, sub, label=f"H_{n}({a!r},{b!r})")


def special(n: int, a: float) -> TridiagonalMatrix:
    """H_n(a): H_n(a, -a) for even n, H_n(a, a) for odd n."""
    _check_n(n)
    b = -a if n % 2 == 0 else a
    m = extended(MatrixParams(n, a, b))
    return TridiagonalMatrix(m.superdiag, m.subdiag, label=f"H_{n}({a!r})")


def scale(m: TridiagonalMatrix, s: float) -> TridiagonalMatrix:
    if not math.isfinite(s):
        raise ValueError(f"scale factor must be finite, got {s!r}")
    return TridiagonalMatrix(
        [s * v for v in m.superdiag],
        [s * v for v in m.subdiag],
        label=f"{s!r}*{m.label}" if m.label else f"{s!r}*",
    )


def symmetrize(m: TridiagonalMatrix) -> SymmetricTridiagonalMatrix:
    """Diagonal similarity to the symmetric form with entries sqrt(b_k c_k).

    Zero products are rejected as well as negative ones: they make the
    matrix reducible and the similarity singular.
    """
    off = []
    for k, (u, v) in enumerate(zip(m.superdiag, m.subdiag), start=1):
        prod = u * v
        if not prod > 0:
            raise NonPositiveProductError(k, prod)
        off.append(math.sqrt(prod))
    return SymmetricTridiagonalMatrix(off, label=f"sym({m.label})")


def symmetric_extended(p, a=None, b=None) -> SymmetricTridiagonalMatrix:
    """Symmetric form of H_n(a, b) built from the closed-form entries
    sqrt(k (n+1-k+b)) / sqrt((k+a)(n+1-k)) (even n) and
    sqrt(k (n+1-k)) / sqrt((k+a)(n+1-k+b)) (odd n)."""
    p = _params(p, a, b)
    n, a, b = p.n, float(p.a), float(p.b)
    off = []
    for k in range(1, n + 1):
        if n % 2 == 0:
            rad = k * (n + 1 - k + b) if k % 2 == 0 else (k + a) * (n + 1 - k)
        else:
            rad = k * (n + 1 - k) if k % 2 == 0 else (k + a) * (n + 1 - k + b)
        if not rad > 0:
            raise NonPositiveProductError(k, rad)
        off.append(math.sqrt(rad))
    return SymmetricTridiagonalMatrix(off, label=f"symH_{n}({a!r},{b!r})")


def format_matrix(m) -> str:
    """Plain-text serialization: ``tridiag <order>``, superdiag line, subdiag line."""
    if isinstance(m, SymmetricTridiagonalMatrix):
        m = m.as_tridiagonal()
    sup = " ".join(f"{v:.17g}" for v in m.superdiag)
    sub = " ".join(f"{v:.17g}" for v in m.subdiag)
    return f"tridiag {m.order}\n{sup}\n{sub}\n"


def parse_matrix(text: str, label: str = "") -> TridiagonalMatrix:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("tridiag"):
        raise ValueError("expected header line 'tridiag <order>'")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed header {lines[0]!r}")
    order = int(head[1])
    if order < 1:
        raise InvalidDimensionError(f"order must be >= 1, got {order}")
    body = lines[1:3] + [""] * (3 - len(lines))
    sup = [float(t) for t in body[0].split()]
    sub = [float(t) for t in body[1].split()]
    if len(sup) != order - 1 or len(sub) != order - 1:
        raise InvalidDimensionError(
            f"order {order} needs {order - 1} entries per off-diagonal, "
            f"got {len(sup)} and {len(sub)}"
        )
    return TridiagonalMatrix(sup, sub, label=label)

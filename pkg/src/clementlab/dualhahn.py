"""Dual Hahn polynomials, their orthonormal functions, and the eigenvectors
of the symmetrized H_n(a, b) built from them.

    R_n(lam(x); g, d, N) = 3F2(-n, -x, x+g+d+1; g+1, -N; 1),
    lam(x) = x (x + g + d + 1).

The alternating 3F2 sum loses most of its digits to cancellation once N is a
few dozen, so sums are carried out exactly.  A double is a dyadic rational:
with a common power-of-two denominator S we have g = G/S and d = D/S for
integers G, D.  Every factor of the term ratio is affine in (g, d), so the
S's cancel in pairs and the whole sum is a ratio of Python integers, rounded
once at the end.  Weights and norms are handled the same way.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    InvalidDimensionError,
    InvalidParameterError,
    PoleError,
    UnsupportedParityError,
)
from .matgen import SymmetricTridiagonalMatrix
from .spectra import ExactSpectrum, exact_eigenvalues

__all__ = [
    "DualHahnParams",
    "EigenvectorSet",
    "dual_hahn_R",
    "orthonormal_R",
    "orthonormal_table",
    "recurrence_residuals",
    "eigenvector_even",
    "eigenvector_odd",
    "eigenvalue_for",
    "eigenvector_set",
]


@dataclass(frozen=True)
class DualHahnParams:
    gamma: float
    delta: float
    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 0:
            raise InvalidDimensionError(f"N must be an integer >= 0, got {self.N!r}")
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "N", int(self.N))

    @property
    def valid(self) -> bool:
        """Inside the window gamma, delta > -1 where the weight is positive."""
        return self.gamma > -1 and self.delta > -1

    def lam(self, x) -> float:
        return x * (x + self.gamma + self.delta + 1)

    def shifted(self, dg: int, dd: int, dN: int = 0) -> "DualHahnParams":
        return DualHahnParams(self.gamma + dg, self.delta + dd, self.N + dN)


def _dyadic(p: DualHahnParams):
    fg, fd = Fraction(p.gamma), Fraction(p.delta)
    S = max(fg.denominator, fd.denominator)
    return S, int(fg * S), int(fd * S)


def _check_index(name, v, N):
    if int(v) != v or not 0 <= v <= N:
        raise InvalidDimensionError(f"{name}={v!r} outside 0..{N}")


def _series(n, x, S, G, D, N):
    """Exact 3F2 sum as an integer pair (P, Q), evaluated by nested Horner on
    the term ratio (-n+j)(-x+j)(x+g+d+1+j) / ((g+1+j)(-N+j)(j+1))."""
    P, Q = 1, 1
    for j in reversed(range(min(n, x))):
        num = (j - n) * (j - x) * ((x + 1 + j) * S + G + D)
        den = ((1 + j) * S + G) * (j - N) * (j + 1)
        if den == 0:
            raise PoleError(f"denominator parameter hits a pole at j={j}")
        P, Q = den * Q + num * P, den * Q
    return P, Q


def dual_hahn_R(n: int, x: int, p: DualHahnParams) -> float:
    _check_index("n", n, p.N)
    _check_index("x", x, p.N)
    P, Q = _series(int(n), int(x), *_dyadic(p), p.N)
    return P / Q


def _weight(x, S, G, D, N):
    """w(x) = (2x+g+d+1)(g+1)_x N!^2 / ((N-x)! (x+g+d+1)_{N+1} (d+1)_x x!)
    as an exact integer pair (numerator, denominator)."""
    num = math.factorial(N) ** 2 // math.factorial(N - x) * S ** N
    den = math.factorial(x)
    if x > 0:
        # the (2x+g+d+1)/(x+g+d+1) pair cancels exactly at x = 0
        num *= (2 * x + 1) * S + G + D
        den *= (x + 1) * S + G + D
    for i in range(1, N + 1):
        den *= (x + 1 + i) * S + G + D
    for i in range(x):
        num *= (1 + i) * S + G
        den *= (1 + i) * S + D
    return num, den


def _inv_norm(n, S, G, D, N):
    """1/h_n = binom(g+n, n) binom(d+N-n, N-n) as an exact integer pair."""
    num, den = 1, math.factorial(n) * math.factorial(N - n) * S ** N
    for i in range(n):
        num *= (1 + i) * S + G
    for i in range(N - n):
        num *= (1 + i) * S + D
    return num, den


def _require_valid(p: DualHahnParams):
    if not p.valid:
        raise InvalidParameterError(
            f"orthonormal dual Hahn functions need gamma, delta > -1; got {p}"
        )


def orthonormal_R(n: int, x: int, p: DualHahnParams) -> float:
    """R~_n(lam(x)) = sqrt(w(x) / h_n) R_n(lam(x)), sign fixed by R~_n(lam(0)) > 0."""
    _require_valid(p)
    _check_index("n", n, p.N)
    _check_index("x", x, p.N)
    S, G, D = _dyadic(p)
    P, Q = _series(int(n), int(x), S, G, D, p.N)
    wn, wd = _weight(int(x), S, G, D, p.N)
    hn, hd = _inv_norm(int(n), S, G, D, p.N)
    mag = math.sqrt((wn * hn * P * P) / (wd * hd * Q * Q))
    return mag if (P > 0) == (Q > 0) else -mag


def _div(num, den):
    return num / den


@functools.lru_cache(maxsize=512)
def _table(gamma, delta, N):
    p = DualHahnParams(gamma, delta, N)
    S, G, D = _dyadic(p)
    out = np.empty((N + 1, N + 1))
    sw = np.array([math.sqrt(_div(*_weight(x, S, G, D, N))) for x in range(N + 1)])
    sh = np.array([math.sqrt(_div(*_inv_norm(n, S, G, D, N))) for n in range(N + 1)])
    for x in range(N + 1):
        out[:, x] = _column(x, S, G, D, N)
    out *= sh[:, None] * sw[None, :]
    out.flags.writeable = False
    return out


def _column(x, S, G, D, N):
    """R_0..R_N at fixed x from the degree recurrence
    lam R_n = A_n R_{n+1} - (A_n + C_n) R_n + C_n R_{n-1},
    A_n = (n+g+1)(n-N), C_n = n(n-d-N-1), run in exact integers."""
    lam = x * ((x + 1) * S + G + D)
    col = [1.0]
    P_prev, P, Q = 0, 1, 1
    A_prev = 1
    for n in range(N):
        A = ((n + 1) * S + G) * (n - N)
        C = n * ((n - N - 1) * S - D)
        if A == 0:
            raise PoleError(f"recurrence coefficient A_{n} vanishes")
        P_prev, P, Q = P, (lam + A + C) * P - C * A_prev * P_prev, A * Q
        A_prev = A
        col.append(P / Q)
    return col


def orthonormal_table(p: DualHahnParams) -> np.ndarray:
    """Matrix T[n, x] = R~_n(lam(x)) for 0 <= n, x <= N (an orthogonal matrix)."""
    _require_valid(p)
    return _table(p.gamma, p.delta, p.N)


def _rt(n, x, p):
    # zero outside the lattice; callers multiply such terms by a vanishing factor
    if not (0 <= n <= p.N and 0 <= x <= p.N):
        return 0.0
    return orthonormal_R(n, x, p)


def recurrence_residuals(n: int, x: int, p: DualHahnParams):
    """|LHS - RHS| for the four contiguous relations linking (g, d, N) to
    (g+1, d+1, N-1) (first pair) and to (g+1, d-1, N) (second pair).

    The second pair needs the shifted family inside the orthonormal window
    (d > 0); otherwise its residuals are reported as nan.
    """
    _require_valid(p)
    N, g, d = p.N, p.gamma, p.delta
    if N < 1 or not (0 <= n <= N - 1) or not (0 <= x <= N):
        raise InvalidDimensionError(
            f"need N >= 1, 0 <= n <= N-1 and 0 <= x <= N; got n={n}, x={x}, N={N}"
        )
    s = math.sqrt
    up = p.shifted(1, 1, -1)
    rx = s(x * (x + g + d + 1))
    r1 = (
        s((n + 1 + g) * (N - n)) * _rt(n, x, p)
        - s((n + 1) * (N - n + d)) * _rt(n + 1, x, p)
        - rx * _rt(n, x - 1, up)
    )
    r2 = (
        -s((n + 1) * (N - n + d)) * _rt(n, x - 1, up)
        + s((n + 2 + g) * (N - n - 1)) * _rt(n + 1, x - 1, up)
        - rx * _rt(n + 1, x, p)
    )
    side = p.shifted(1, -1)
    if not side.valid:
        return abs(r1), abs(r2), math.nan, math.nan
    ry = s((x + g + 1) * (x + d))
    r3 = (
        s((n + 1 + g) * (N - n + d)) * _rt(n, x, p)
        - s((n + 1) * (N - n)) * _rt(n + 1, x, p)
        - ry * _rt(n, x, side)
    )
    r4 = (
        -s((n + 1) * (N - n)) * _rt(n, x, side)
        + s((n + 2 + g) * (N - n + d - 1)) * _rt(n + 1, x, side)
        - ry * _rt(n + 1, x, p)
    )
    return abs(r1), abs(r2), abs(r3), abs(r4)


@dataclass(frozen=True, eq=False)
class EigenvectorSet:
    order: int
    vectors: np.ndarray  # columns, unit 2-norm, aligned with eigenvalues
    eigenvalues: np.ndarray
    spectrum: ExactSpectrum

    def residuals(self, h: SymmetricTridiagonalMatrix) -> np.ndarray:
        """Scaled residuals ||H u - lam u||_inf / (||H||_inf ||u||_inf)."""
        hn = h.norm_inf()
        out = []
        for lam, u in zip(self.eigenvalues, self.vectors.T):
            r = np.abs(h.matvec(u) - lam * u).max()
            out.append(r / (hn * np.abs(u).max()))
        return np.array(out)


def _sign(sign) -> int:
    table = {"+": 1, "-": -1, "0": 0, 1: 1, -1: -1, 0: 0}
    if sign not in table:
        raise ValueError(f"sign must be +, - or 0; got {sign!r}")
    return table[sign]


def _check_window(a, b):
    if not (a > -1 and b > -1):
        raise InvalidParameterError(
            f"eigenvectors are constructed for a, b > -1 only; got a={a}, b={b}"
        )


def eigenvalue_for(n: int, a: float, b: float, k: int, sign) -> float:
    s = _sign(sign)
    if n % 2 == 0:
        return s * math.sqrt((2 * k) * (2 * k + a + b))
    return s * math.sqrt((2 * k + 1 + a) * (2 * k + 1 + b))


def eigenvector_even(n: int, a: float, b: float, k: int, sign) -> np.ndarray:
    """U_{+k}, U_{-k} or U_0 for the symmetric form of H_{2m}(a, b).

    Odd positions l = 2j+1 carry (-1)^j R~_j(lam(k); (a-1)/2, (b-1)/2, m);
    even positions l = 2j+2 carry +-(-1)^j R~_j(lam(k-1); (a+1)/2, (b+1)/2, m-1),
    or zero for U_0.
    """
    s = _sign(sign)
    if n % 2 or n < 2:
        raise UnsupportedParityError(f"eigenvector_even needs even n >= 2, got {n}")
    _check_window(a, b)
    m = n // 2
    if not 0 <= k <= m or (s == 0) != (k == 0):
        raise ValueError(f"invalid (k, sign) = ({k}, {sign}) for m = {m}")
    lower = orthonormal_table(DualHahnParams((a - 1) / 2, (b - 1) / 2, m))
    alt = (-1.0) ** np.arange(m + 1)
    u = np.zeros(n + 1)
    u[0::2] = alt * lower[:, k]
    if s:
        upper = orthonormal_table(DualHahnParams((a + 1) / 2, (b + 1) / 2, m - 1))
        u[1::2] = s * alt[:m] * upper[:, k - 1]
    return u


def eigenvector_odd(n: int, a: float, b: float, k: int, sign) -> np.ndarray:
    """Eigenvector of the symmetric form of H_{2m+1}(a, b) for
    lam = +-sqrt((2k+1+a)(2k+1+b)).

    Odd positions carry (-1)^j R~_j(lam(k); (a-1)/2, (b+1)/2, m), even positions
    +-(-1)^j R~_j(lam(k); (a+1)/2, (b-1)/2, m): the (g, d) -> (g+1, d-1)
    contiguous pair plays the role the (g+1, d+1, N-1) pair plays for even n.
    """
    s = _sign(sign)
    if n % 2 == 0:
        raise UnsupportedParityError(f"eigenvector_odd needs odd n, got {n}")
    _check_window(a, b)
    m = (n - 1) // 2
    if not 0 <= k <= m or s == 0:
        raise ValueError(f"invalid (k, sign) = ({k}, {sign}) for m = {m}")
    first = orthonormal_table(DualHahnParams((a - 1) / 2, (b + 1) / 2, m))
    second = orthonormal_table(DualHahnParams((a + 1) / 2, (b - 1) / 2, m))
    alt = (-1.0) ** np.arange(m + 1)
    u = np.empty(n + 1)
    u[0::2] = alt * first[:, k]
    u[1::2] = s * alt * second[:, k]
    return u


def eigenvector_set(n: int, a: float, b: float) -> EigenvectorSet:
    """All eigenpairs of the symmetric form, unit-normalized, sorted by eigenvalue."""
    if n % 2 == 0:
        pairs = [(0, 0)] + [(k, s) for k in range(1, n // 2 + 1) for s in (1, -1)]
        build = eigenvector_even
    else:
        pairs = [(k, s) for k in range((n - 1) // 2 + 1) for s in (1, -1)]
        build = eigenvector_odd
    lams, cols = [], []
    for k, s in pairs:
        u = build(n, a, b, k, s)
        lams.append(eigenvalue_for(n, a, b, k, s))
        cols.append(u / np.linalg.norm(u))
    order = np.argsort(lams, kind="stable")
    vectors = np.array(cols).T[:, order]
    return EigenvectorSet(n + 1, vectors, np.array(lams)[order], exact_eigenvalues(n, a, b))

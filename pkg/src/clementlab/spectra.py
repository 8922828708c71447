"""Closed-form spectra of the Clement family and a determinant oracle.

Every eigenvalue produced here has the shape ``sign * sqrt(radicand)``.  The
pair (sign, radicand) is also kept as an exact rational so that coincident
eigenvalues (double roots of H_n(a, a)) can be detected without relying on
floating-point ties.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import UnsupportedParityError
from .matgen import MatrixParams, SymmetricTridiagonalMatrix, _check_n, _params

__all__ = [
    "Source",
    "ExactSpectrum",
    "MultiplicityReport",
    "exact_eigenvalues",
    "clement_eigenvalues",
    "special_eigenvalues",
    "classify",
    "char_poly_eval",
    "product_form_coeffs",
    "product_form_eval",
    "sort_spectrum",
]


class Source(enum.Enum):
    CLEMENT = "ClementEq3"
    THEOREM_EVEN = "Theorem2"
    THEOREM_ODD = "Theorem3"
    SPECIAL_ODD = "SpecialOddEq17"


def sort_spectrum(values) -> np.ndarray:
    """Sort ascending by real part, ties by imaginary part."""
    v = np.asarray(values, dtype=complex)
    return v[np.lexsort((v.imag, v.real))]


@dataclass(frozen=True, eq=False)
class ExactSpectrum:
    values: np.ndarray
    source: Source
    keys: tuple = field(default=(), repr=False)

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0))

    @property
    def multiplicities(self) -> list:
        return classify(self, 0.0).distinct


@dataclass(frozen=True)
class MultiplicityReport:
    distinct: list
    max_multiplicity: int
    is_simple: bool

    @property
    def order(self) -> int:
        return sum(c for _, c in self.distinct)


def _root_pair(radicand: float):
    """Both square roots of a real radicand as a conjugate-closed pair."""
    if radicand >= 0:
        r = math.sqrt(radicand)
        return complex(r, 0.0), complex(-r, 0.0)
    r = math.sqrt(-radicand)
    return complex(0.0, r), complex(0.0, -r)


def _build(entries, source) -> ExactSpectrum:
    # entries: (value, key); order by (real, imag)
    entries = sorted(entries, key=lambda e: (e[0].real, e[0].imag))
    values = np.array([e[0] for e in entries], dtype=complex)
    return ExactSpectrum(values, source, tuple(e[1] for e in entries))


def _pairs(radicands, exact_radicands):
    out = []
    for r, rq in zip(radicands, exact_radicands):
        plus, minus = _root_pair(r)
        if rq == 0:
            # both roots are the same zero; one key so they group together
            out.append((0j, (0, rq)))
            out.append((0j, (0, rq)))
            continue
        out.append((plus, (1, rq)))
        out.append((minus, (-1, rq)))
    return out


def _dyadic(*xs):
    """Common power-of-two denominator S and integer numerators of doubles."""
    fs = [Fraction(x) for x in xs]
    S = max(f.denominator for f in fs)
    return (S, *(int(f * S) for f in fs))


def exact_eigenvalues(p, a=None, b=None) -> ExactSpectrum:
    """Eigenvalues of H_n(a, b).

    Even n = 2m: 0 and +-sqrt(2k (2k + a + b)), k = 1..m.
    Odd n = 2m+1: +-sqrt((2k+1+a)(2k+1+b)), k = 0..m.
    Negative radicands give the purely imaginary pair +-i sqrt(|r|).
    """
    p = _params(p, a, b)
    n, m = p.n, p.m
    af, bf = float(p.a), float(p.b)
    S, A, B = _dyadic(af, bf)
    # exact keys: radicands times S (even) or S^2 (odd) are integers
    if n % 2 == 0:
        ks = range(1, m + 1)
        rad = [(2 * k) * (2 * k + af + bf) for k in ks]
        exact = [(2 * k) * (2 * k * S + A + B) for k in ks]
        entries = [(complex(0.0, 0.0), (0, 0))] + _pairs(rad, exact)
        return _build(entries, Source.THEOREM_EVEN)
    ks = range(0, m + 1)
    rad = [(2 * k + 1 + af) * (2 * k + 1 + bf) for k in ks]
    exact = [((2 * k + 1) * S + A) * ((2 * k + 1) * S + B) for k in ks]
    return _build(_pairs(rad, exact), Source.THEOREM_ODD)


def clement_eigenvalues(n: int) -> ExactSpectrum:
    _check_n(n)
    entries = []
    for v in range(-n, n + 1, 2):
        sign = (v > 0) - (v < 0)
        entries.append((complex(float(v), 0.0), (sign, v * v)))
    return _build(entries, Source.CLEMENT)


def special_eigenvalues(n: int, a: float) -> ExactSpectrum:
    """Spectrum of H_n(a): the Clement spectrum for even n (independent of a),
    +-|2k+1+a| for odd n."""
    _check_n(n)
    if n % 2 == 0:
        return clement_eigenvalues(n)
    af = float(a)
    S, A = _dyadic(af)
    entries = []
    for k in range((n - 1) // 2 + 1):
        t = abs(2 * k + 1 + af)
        tq = ((2 * k + 1) * S + A) ** 2
        entries.append((complex(t, 0.0), (1 if t else 0, tq)))
        entries.append((complex(-t, 0.0), (-1 if t else 0, tq)))
    return _build(entries, Source.SPECIAL_ODD)


def classify(s, tol: float = 0.0) -> MultiplicityReport:
    """Group eigenvalues into clusters.

    With ``tol == 0`` and exact keys available, values are grouped by exact
    equality of (sign, radicand); otherwise consecutive sorted values within
    ``tol`` of a cluster's first member are merged.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    keys = getattr(s, "keys", ())
    groups: list = []
    if tol == 0 and isinstance(s, ExactSpectrum) and len(keys) == s.order:
        index = {}
        # ExactSpectrum stores keys aligned with its sorted values
        for v, key in zip(s.values, keys):
            if key in index:
                groups[index[key]][1] += 1
            else:
                index[key] = len(groups)
                groups.append([v, 1])
    else:
        for v in sort_spectrum(getattr(s, "values", s)):
            if groups and abs(v - groups[-1][0]) <= tol:
                groups[-1][1] += 1
            else:
                groups.append([v, 1])
    distinct = [(complex(v), c) for v, c in groups]
    top = max((c for _, c in distinct), default=0)
    return MultiplicityReport(distinct, top, top <= 1)


def _offdiagonals(m):
    if isinstance(m, SymmetricTridiagonalMatrix):
        e = m.as_array()
        return e, e
    return m.upper(), m.lower()


def _row_scales(sup, sub, lam_abs):
    d = np.full(len(sup) + 1, lam_abs)
    d[:-1] += np.abs(sup)
    d[1:] += np.abs(sub)
    d[d == 0] = 1.0
    return d


def char_poly_eval(m, lam, normalized: bool = False) -> complex:
    """det(M - lam I) by the zero-diagonal three-term recurrence.

    D_0 = 1, D_1 = -lam, D_j = -lam D_{j-1} - b_{j-1} c_{j-1} D_{j-2}.

    The scaled recurrence divides row j by d_j = |lam| + (absolute row sum of
    M in row j); by Hadamard's inequality the scaled determinant has modulus
    <= 1.  ``normalized=True`` returns that scaled value, otherwise the plain
    determinant (``inf`` on overflow).
    """
    sup, sub = _offdiagonals(m)
    beta = sup * sub
    lam = complex(lam)
    if not normalized:
        d_prev, d_cur = 1.0 + 0j, -lam
        with np.errstate(over="ignore", invalid="ignore"):
            for j in range(len(beta)):
                d_prev, d_cur = d_cur, -lam * d_cur - beta[j] * d_prev
        if cmath.isfinite(d_cur):
            return complex(d_cur)
    d = _row_scales(sup, sub, abs(lam))
    q_prev, q_cur = 1.0 + 0j, -lam / d[0]
    for j in range(len(beta)):
        q_prev, q_cur = q_cur, (-lam * q_cur - beta[j] * q_prev / d[j]) / d[j + 1]
    if normalized:
        return complex(q_cur)
    with np.errstate(over="ignore"):
        mag = float(np.exp(np.sum(np.log(d))))
    if q_cur == 0:
        return 0j
    return complex(q_cur * mag) if math.isfinite(mag) else complex(
        math.copysign(math.inf, q_cur.real) if q_cur.real else 0.0,
        math.copysign(math.inf, q_cur.imag) if q_cur.imag else 0.0,
    )


def product_form_coeffs(p, a=None, b=None) -> np.ndarray:
    """Roots of lam * prod_{k=1}^{m} (lam^2 - 2k(2k+a+b)), the factored
    characteristic polynomial of H_{2m}(a, b)."""
    p = _params(p, a, b)
    if p.n % 2:
        raise UnsupportedParityError("the product form is stated for even n only")
    roots = [0j]
    for k in range(1, p.m + 1):
        roots.extend(_root_pair((2 * k) * (2 * k + float(p.a) + float(p.b))))
    return sort_spectrum(roots)


def product_form_eval(p, lam, a=None, b=None) -> complex:
    """Evaluate the factored polynomial with the sign convention of det(M - lam I)."""
    p = _params(p, a, b)
    if p.n % 2:
        raise UnsupportedParityError("the product form is stated for even n only")
    lam = complex(lam)
    out = -lam
    for k in range(1, p.m + 1):
        out *= lam * lam - (2 * k) * (2 * k + float(p.a) + float(p.b))
    return out

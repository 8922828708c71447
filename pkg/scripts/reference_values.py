"""Relative errors at the reference points quoted for MATLAB eig(), next to
this package's QR (balanced and not) and numpy/LAPACK.

    python scripts/reference_values.py
"""
from __future__ import annotations

import numpy as np

from clementlab.eigensolve import SolverConfig, solve_unsymmetric
from clementlab.harness import relative_error
from clementlab.matgen import clement, special
from clementlab.spectra import clement_eigenvalues, special_eigenvalues

# (label, matrix, exact spectrum, MATLAB relative error or None)
CASES = [
    ("C_100", lambda: clement(100), lambda: clement_eigenvalues(100), 3.6612e-5),
    ("H_100(20)", lambda: special(100, 20), lambda: special_eigenvalues(100, 20), 1.1471e-3),
    ("H_100(20.97)", lambda: special(100, 20.97), lambda: special_eigenvalues(100, 20.97), 4.9444e-3),
    ("C_101", lambda: clement(101), lambda: clement_eigenvalues(101), 3.6881e-5),
    ("H_101(-1.75)", lambda: special(101, -1.75), lambda: special_eigenvalues(101, -1.75), 1.4840e-3),
] + [
    (f"H_11({a})", (lambda a=a: special(11, a)), (lambda a=a: special_eigenvalues(11, a)), None)
    for a in (-2, -3, -4, -5, -6, -8, 1)
]


def main() -> int:
    print(f"{'matrix':14s} {'MATLAB':>10s} {'QR':>10s} {'QR+bal':>10s} {'LAPACK':>10s}")
    for label, make, exact, ref in CASES:
        m, ex = make(), exact()
        ours = relative_error(ex, solve_unsymmetric(m))
        bal = relative_error(ex, solve_unsymmetric(m, SolverConfig(balance=True)))
        lap = relative_error(ex, np.linalg.eigvals(m.to_dense()))
        ref_s = f"{ref:.4e}" if ref is not None else "-"
        print(f"{label:14s} {ref_s:>10s} {ours:10.3e} {bal:10.3e} {lap:10.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

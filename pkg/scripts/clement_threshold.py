"""Find the smallest order at which the QR solver reports complex eigenvalues
for the (real-spectrum) Clement matrix C_n, with and without balancing.

    python scripts/clement_threshold.py [--max-n 200]
"""
from __future__ import annotations

import argparse

import numpy as np

from clementlab.eigensolve import SolverConfig, solve_unsymmetric
from clementlab.harness import max_imag, relative_error
from clementlab.matgen import clement
from clementlab.spectra import clement_eigenvalues


def scan(max_n: int, balance: bool):
    cfg = SolverConfig(balance=balance)
    first = None
    rows = []
    for n in range(1, max_n + 1):
        res = solve_unsymmetric(clement(n), cfg)
        mi = max_imag(res)
        rows.append((n, mi, relative_error(clement_eigenvalues(n), res)))
        if first is None and mi > 0:
            first = n
    return first, rows


def lapack_threshold(max_n: int):
    for n in range(1, max_n + 1):
        if np.abs(np.linalg.eigvals(clement(n).to_dense()).imag).max() > 0:
            return n
    return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=200)
    args = ap.parse_args(argv)
    for balance in (False, True):
        first, rows = scan(args.max_n, balance)
        label = "balanced  " if balance else "unbalanced"
        print(f"{label}: first n with imaginary parts = {first}")
        for n in (50, 100, 101, 116, 117, 150):
            if n <= args.max_n:
                _, mi, err = rows[n - 1]
                print(f"    n={n:3d}  rel_error={err:.3e}  max_imag={mi:.3e}")
    print(f"numpy/LAPACK (balanced geev): first n with imaginary parts = {lapack_threshold(args.max_n)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Regenerate the six accuracy-sweep figures as CSV + SVG pairs.

Each panel is one sweep; for every panel two plots are written: the largest
imaginary part of the computed eigenvalues and the relative error.

    python scripts/reproduce_figures.py --out figures [--balance] [--jobs 4]

Grid steps are chosen for desk-scale runtime (about a minute in total on one
core); they can be refined with --fine.
"""
from __future__ import annotations

import argparse
import math
import os
from dataclasses import dataclass
from pathlib import Path

from clementlab.harness import Family, Grid, SweepConfig, run_sweep, write_csv
from clementlab.plotting import render_svg


@dataclass(frozen=True)
class Panel:
    name: str
    n: int
    family: Family
    x_axis: str
    grid: Grid
    fixed: float = 0.0  # the non-axis parameter for two-parameter panels

    def config(self, balance: bool) -> SweepConfig:
        if self.family is Family.SPECIAL_A:
            return SweepConfig(self.n, self.family, self.grid, balance=balance)
        if self.x_axis == "a":
            return SweepConfig(self.n, Family.EXTENDED, self.grid, b_grid=self.fixed, balance=balance)
        return SweepConfig(self.n, Family.EXTENDED, Grid(self.fixed, self.fixed, 1.0),
                           b_grid=self.grid, balance=balance)


def panels(fine: bool) -> list:
    k = 0.5 if fine else 1.0
    return [
        Panel("fig1-2_n10", 10, Family.SPECIAL_A, "a", Grid(-20, 60, 0.5 * k)),
        Panel("fig1-2_n100", 100, Family.SPECIAL_A, "a", Grid(-20, 60, 0.5 * k)),
        Panel("fig3_n101", 101, Family.SPECIAL_A, "a", Grid(-110, 10, 0.5 * k)),
        Panel("fig4_a0", 100, Family.EXTENDED, "b", Grid(0, 150, 1.0 * k), fixed=0.0),
        Panel("fig4_a1", 100, Family.EXTENDED, "b", Grid(0, 150, 1.0 * k), fixed=1.0),
        Panel("fig4_a20", 100, Family.EXTENDED, "b", Grid(0, 150, 1.0 * k), fixed=20.0),
        Panel("fig5_b50", 100, Family.EXTENDED, "a", Grid(0, 100, 1.0 * k), fixed=50.0),
        Panel("fig5_b100", 100, Family.EXTENDED, "a", Grid(0, 100, 1.0 * k), fixed=100.0),
        Panel("fig6_a0", 101, Family.EXTENDED, "b", Grid(0, 150, 1.0 * k), fixed=0.0),
        Panel("fig6_a25", 101, Family.EXTENDED, "b", Grid(0, 150, 1.0 * k), fixed=25.0),
    ]


def runs(xs, flags):
    """Contiguous stretches of the grid where ``flags`` holds."""
    out, start, prev = [], None, None
    for x, f in zip(xs, flags):
        if f and start is None:
            start = x
        if not f and start is not None:
            out.append((start, prev))
            start = None
        prev = x
    if start is not None:
        out.append((start, prev))
    return out


def summarize(panel: Panel, records) -> str:
    xs = [getattr(r, panel.x_axis) for r in records]
    stretches = runs(xs, [r.max_imag > 0 for r in records])
    where = ", ".join(f"[{lo:g}, {hi:g}]" for lo, hi in stretches)
    where = f"{panel.x_axis} in {where}" if where else "none"
    errs = [r.rel_error for r in records if math.isfinite(r.rel_error)]
    return (f"{panel.name:12s} rel_error {min(errs):.1e} .. {max(errs):.1e}; "
            f"imaginary parts: {where}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--balance", action="store_true")
    ap.add_argument("--fine", action="store_true", help="halve every grid step")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for panel in panels(args.fine):
        records = run_sweep(panel.config(args.balance), jobs=args.jobs)
        write_csv(records, out / f"{panel.name}.csv", timing=False)
        render_svg(records, panel.x_axis, "max_imag", out / f"{panel.name}_imag.svg")
        render_svg(records, panel.x_axis, "rel_error", out / f"{panel.name}_relerr.svg")
        print(summarize(panel, records), flush=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Minimal standalone SVG line plots of sweep records.

Output depends only on the data, so identical sweeps give identical files.
"""
from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import InconsistentSweepError

__all__ = ["render_svg", "svg_text"]

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 80, 20, 40, 60


def _check_consistent(records, x_axis):
    fixed = {(r.n, r.solver, r.balance) for r in records}
    if len(fixed) > 1:
        raise InconsistentSweepError(f"records mix (n, solver, balance) settings: {sorted(fixed)}")
    if x_axis == "b":
        if len({r.a for r in records}) > 1:
            raise InconsistentSweepError("x axis is b but a varies between records")
        return f"a = {records[0].a:g}"
    bs = {r.b for r in records}
    if len(bs) <= 1:
        return f"b = {records[0].b:g}"
    if all(r.b == r.a for r in records):
        return "b = a"
    if all(r.b == -r.a for r in records):
        return "b = -a"
    raise InconsistentSweepError("x axis is a but b is neither fixed nor locked to a")


def _family(records, relation):
    if all(r.a == 0 and r.b == 0 for r in records):
        return f"C_{records[0].n}"
    n = records[0].n
    locked = "b = -a" if n % 2 == 0 else "b = a"
    if relation == locked:
        return f"H_{n}(a)"
    return f"H_{n}(a,b), {relation}"


def _nice_step(span, target=5):
    if span <= 0:
        return 1.0
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        if raw <= mult * mag:
            return mult * mag
    return 10 * mag


def _linear_ticks(lo, hi):
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t = first + len(ticks) * step
    return ticks


def _range(vals):
    lo, hi = min(vals), max(vals)
    if hi - lo <= 1e-9 * max(abs(lo), abs(hi)) or hi - lo < 1e-300:
        mid = 0.5 * (lo + hi)
        pad = abs(mid) * 0.5
        if pad < 1e-300:
            pad = 1.0
        return mid - pad, mid + pad
    return lo, hi


def svg_text(records, x_axis="a", y_axis="rel_error", log=None) -> str:
    if x_axis not in ("a", "b"):
        raise ValueError(f"x_axis must be 'a' or 'b', got {x_axis!r}")
    if y_axis not in ("rel_error", "max_imag"):
        raise ValueError(f"y_axis must be 'rel_error' or 'max_imag', got {y_axis!r}")
    records = list(records)
    if not records:
        raise InconsistentSweepError("no records to plot")
    relation = _check_consistent(records, x_axis)
    if log is None:
        log = y_axis == "rel_error"

    pts = [(getattr(r, x_axis), getattr(r, y_axis)) for r in records]
    pts = sorted((x, y) for x, y in pts if math.isfinite(y))
    note = ""
    if log:
        positive = [(x, y) for x, y in pts if y > 0]
        if not positive:
            log = False
            note = "log scale disabled: no positive values"
        elif len(positive) < len(pts):
            note = f"{len(pts) - len(positive)} non-positive value(s) omitted on log scale"
            pts = positive
        else:
            pts = positive

    xs = [x for x, _ in pts] or [getattr(r, x_axis) for r in records]
    x_lo, x_hi = _range(xs)
    if pts:
        ys = [math.log10(y) if log else y for _, y in pts]
        y_lo, y_hi = _range(ys)
    else:
        y_lo, y_hi = 0.0, 1.0
    if log:
        y_lo, y_hi = math.floor(y_lo), math.ceil(y_hi)
        if y_lo == y_hi:
            y_hi += 1

    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + (x - x_lo) / (x_hi - x_lo) * pw

    def sy(y):
        v = math.log10(y) if log else y
        return TOP + ph - (v - y_lo) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _linear_ticks(x_lo, x_hi):
        px = sx(t)
        out.append(f'<line x1="{px:.2f}" y1="{TOP + ph}" x2="{px:.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{TOP + ph + 18}" text-anchor="middle">{t:g}</text>')
    if log:
        # decades as integer exponents; 10**e itself may underflow
        stride = max(1, math.ceil((y_hi - y_lo) / 10))
        exps = range(int(y_lo), int(y_hi) + 1, stride)
        yticks = [(TOP + ph - (e - y_lo) / (y_hi - y_lo) * ph, f"1e{e}") for e in exps]
    else:
        yticks = [(sy(t), f"{t:g}") for t in _linear_ticks(y_lo, y_hi)]
    for py, lab in yticks:
        out.append(f'<line x1="{LEFT - 5}" y1="{py:.2f}" x2="{LEFT}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{py + 4:.2f}" text-anchor="end">{lab}</text>')

    r0 = records[0]
    title = f"{_family(records, relation)}, solver={r0.solver}, balance={str(r0.balance).lower()}"
    ylabel = {"rel_error": "relative error", "max_imag": "largest imaginary part"}[y_axis]
    out.append(f'<text x="{WIDTH / 2:.1f}" y="{TOP - 15}" text-anchor="middle">{escape(title)}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{x_axis}</text>')
    out.append(
        f'<text x="18" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + ph / 2:.1f})">{ylabel}{" (log)" if log else ""}</text>'
    )
    if len(pts) > 1:
        path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        out.append(f'<polyline points="{path}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
    for x, y in pts:
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="#1f4e9c"/>')
    if note:
        out.append(f'<text x="{LEFT + 8}" y="{TOP + 16}" fill="#a00">{escape(note)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(records, x_axis, y_axis, destination, log=None) -> None:
    text = svg_text(records, x_axis, y_axis, log)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    path = Path(destination)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc.strerror}") from exc

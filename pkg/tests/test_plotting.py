import io
import math
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clementlab.errors import InconsistentSweepError
from clementlab.harness import Family, Grid, SweepConfig, SweepRecord, run_sweep
from clementlab.plotting import render_svg, svg_text

NS = "{http://www.w3.org/2000/svg}"


def rec(a, b=None, err=1e-3, imag=0.0, n=10, solver="unsymmetric", balance=False):
    return SweepRecord(n, a, -a if b is None else b, solver, balance, err, imag, True, 1.0)


def parse(text):
    return ET.fromstring(text.encode())


def texts(root):
    return [t.text for t in root.iter(NS + "text")]


class TestRender:
    def test_two_figures_from_one_sweep(self, tmp_path):
        recs = run_sweep(SweepConfig(101, Family.SPECIAL_A, Grid(-3, 3, 0.5)))
        render_svg(recs, "a", "max_imag", tmp_path / "left.svg")
        render_svg(recs, "a", "rel_error", tmp_path / "right.svg")
        left = parse((tmp_path / "left.svg").read_text())
        right = parse((tmp_path / "right.svg").read_text())
        assert left.tag == NS + "svg" and left.get("version") == "1.1"
        assert any("H_101(a)" in t for t in texts(right))
        assert any("(log)" in t for t in texts(right))
        assert not any("(log)" in t for t in texts(left))

    def test_single_point(self):
        root = parse(svg_text([rec(1.0)], "a", "rel_error"))
        assert len(list(root.iter(NS + "circle"))) == 1
        assert not list(root.iter(NS + "polyline"))

    def test_all_zero_log_falls_back(self):
        recs = [rec(a, err=0.0) for a in (0.0, 1.0, 2.0)]
        root = parse(svg_text(recs, "a", "rel_error", log=True))
        labels = texts(root)
        assert any("log scale disabled" in t for t in labels)
        assert len(list(root.iter(NS + "circle"))) == 3

    def test_non_finite_points_skipped(self):
        recs = [rec(0.0), rec(1.0, err=math.nan), rec(2.0)]
        root = parse(svg_text(recs, "a", "rel_error"))
        assert len(list(root.iter(NS + "circle"))) == 2

    def test_labels_carry_settings(self):
        recs = [rec(a, b=0.5, solver="symmetric", n=12) for a in (0.0, 1.0)]
        title = texts(parse(svg_text(recs, "a", "rel_error")))
        joined = " ".join(title)
        assert "n" in joined and "H_12(a,b), b = 0.5" in joined and "symmetric" in joined

    def test_clement_label(self):
        recs = [SweepRecord(100, 0.0, 0.0, "unsymmetric", True, 1e-5, 0.0, True)]
        assert "C_100" in svg_text(recs, "a", "rel_error")

    def test_b_axis(self):
        recs = [rec(1.0, b=b) for b in (0.0, 0.5, 1.0)]
        assert "a = 1" in svg_text(recs, "b", "rel_error")

    def test_deterministic(self):
        recs = [rec(a, err=10.0 ** -a) for a in range(6)]
        assert svg_text(recs, "a", "rel_error") == svg_text(recs, "a", "rel_error")

    def test_stream_destination(self):
        buf = io.StringIO()
        render_svg([rec(0.0)], "a", "max_imag", buf)
        assert buf.getvalue().startswith("<?xml")

    @given(st.lists(st.tuples(st.floats(-50, 50), st.floats(0, 1e6)), min_size=1, max_size=40), st.booleans())
    def test_any_data_gives_valid_svg(self, pts, log):
        recs = [rec(a, err=y, imag=y) for a, y in pts]
        for y in ("rel_error", "max_imag"):
            parse(svg_text(recs, "a", y, log=log))


class TestConsistency:
    def test_mixed_n(self):
        with pytest.raises(InconsistentSweepError):
            svg_text([rec(0.0, n=10), rec(1.0, n=12)], "a", "rel_error")

    def test_mixed_solver(self):
        with pytest.raises(InconsistentSweepError):
            svg_text([rec(0.0), rec(1.0, solver="symmetric")], "a", "rel_error")

    def test_b_varies_freely(self):
        with pytest.raises(InconsistentSweepError):
            svg_text([rec(0.0, b=0.0), rec(1.0, b=3.0), rec(2.0, b=0.5)], "a", "rel_error")

    def test_a_varies_on_b_axis(self):
        with pytest.raises(InconsistentSweepError):
            svg_text([rec(0.0, b=1.0), rec(1.0, b=2.0)], "b", "rel_error")

    def test_empty(self):
        with pytest.raises(InconsistentSweepError):
            svg_text([], "a", "rel_error")

    def test_bad_axis(self):
        with pytest.raises(ValueError):
            svg_text([rec(0.0)], "n", "rel_error")
        with pytest.raises(ValueError):
            svg_text([rec(0.0)], "a", "runtime_ms")

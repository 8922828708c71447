import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from clementlab.dualhahn import (
    DualHahnParams,
    dual_hahn_R,
    eigenvalue_for,
    eigenvector_even,
    eigenvector_odd,
    eigenvector_set,
    orthonormal_R,
    orthonormal_table,
    recurrence_residuals,
)
from clementlab.errors import (
    InvalidDimensionError,
    InvalidParameterError,
    PoleError,
    UnsupportedParityError,
)
from clementlab.matgen import symmetric_extended

window = st.floats(-0.99, 5, allow_nan=False)
positive_delta = st.floats(1e-3, 5, allow_nan=False)


def poch(a, j):
    out = Fraction(1)
    for i in range(j):
        out *= a + i
    return out


def series_oracle(n, x, g, d, N):
    """Term-by-term 3F2 sum in rational arithmetic."""
    g, d = Fraction(g), Fraction(d)
    total = Fraction(0)
    for j in range(0, min(n, x) + 1):
        total += (
            poch(-n, j) * poch(-x, j) * poch(x + g + d + 1, j)
            / (poch(g + 1, j) * poch(-N, j) * math.factorial(j))
        )
    return total


class TestDualHahnR:
    @given(st.integers(0, 20), window, window)
    def test_degree_zero(self, x, g, d):
        N = 20
        assert dual_hahn_R(0, x, DualHahnParams(g, d, N)) == 1

    @given(st.integers(0, 20), window, window)
    def test_at_origin(self, n, g, d):
        assert dual_hahn_R(n, 0, DualHahnParams(g, d, 20)) == 1

    @given(st.integers(0, 15), window, window, st.integers(1, 15))
    def test_degree_one(self, x, g, d, N):
        assume(x <= N)
        got = dual_hahn_R(1, x, DualHahnParams(g, d, N))
        expected = 1 - x * (x + g + d + 1) / ((g + 1) * N)
        assert math.isclose(got, expected, rel_tol=1e-12, abs_tol=1e-12)

    @given(st.integers(0, 30), st.integers(0, 30), window, window, st.integers(0, 30))
    def test_matches_rational_oracle(self, n, x, g, d, N):
        assume(n <= N and x <= N)
        ref = float(series_oracle(n, x, g, d, N))
        got = dual_hahn_R(n, x, DualHahnParams(g, d, N))
        assert got == ref or math.isclose(got, ref, rel_tol=1e-15)

    @pytest.mark.parametrize("n", [0, 1, 2, 4, 6])
    def test_polynomial_of_degree_n_in_lambda(self, n):
        p = DualHahnParams(0.5, 0.25, 12)
        xs = list(range(n + 2))
        lam = [Fraction(p.lam(x)) for x in xs]
        vals = [series_oracle(n, x, p.gamma, p.delta, p.N) for x in xs]
        # the (n+1)-th divided difference of a degree-n polynomial vanishes
        dd = list(vals)
        for level in range(1, n + 2):
            dd = [(dd[i + 1] - dd[i]) / (lam[i + level] - lam[i]) for i in range(len(dd) - 1)]
        assert abs(float(dd[0])) <= 1e-10
        # and the library values follow the same polynomial
        fl = [dual_hahn_R(n, x, p) for x in xs]
        assert np.allclose(fl, [float(v) for v in vals], rtol=1e-14, atol=1e-14)

    def test_pole(self):
        with pytest.raises(PoleError):
            dual_hahn_R(2, 2, DualHahnParams(-2.0, 0.0, 4))

    def test_index_range(self):
        with pytest.raises(InvalidDimensionError):
            dual_hahn_R(5, 0, DualHahnParams(0, 0, 4))
        with pytest.raises(InvalidDimensionError):
            dual_hahn_R(0, -1, DualHahnParams(0, 0, 4))

    def test_params_validation(self):
        with pytest.raises(InvalidDimensionError):
            DualHahnParams(0, 0, -1)
        with pytest.raises(InvalidDimensionError):
            DualHahnParams(0, 0, 2.5)
        assert not DualHahnParams(-1, 0, 3).valid
        assert DualHahnParams(0.5, 0.25, 3).lam(2) == 2 * (2 + 0.5 + 0.25 + 1)


class TestOrthonormal:
    def test_pair_orthogonal(self):
        p = DualHahnParams(0.5, 0.25, 12)
        s = sum(orthonormal_R(2, x, p) * orthonormal_R(3, x, p) for x in range(13))
        assert abs(s) <= 1e-12

    @pytest.mark.parametrize("x", [0, 5, 12])
    def test_completeness(self, x):
        p = DualHahnParams(0.5, 0.25, 12)
        s = sum(orthonormal_R(n, x, p) ** 2 for n in range(13))
        assert abs(s - 1) <= 1e-12

    def test_trivial_size(self):
        assert orthonormal_R(0, 0, DualHahnParams(2.0, 3.0, 0)) == 1

    @given(window, window, st.integers(0, 60))
    def test_table_orthogonal(self, g, d, N):
        t = orthonormal_table(DualHahnParams(g, d, N))
        eye = np.eye(N + 1)
        assert np.max(np.abs(t @ t.T - eye)) <= 1e-12
        assert np.max(np.abs(t.T @ t - eye)) <= 1e-12

    @given(window, window, st.integers(0, 40))
    def test_positive_at_origin(self, g, d, N):
        t = orthonormal_table(DualHahnParams(g, d, N))
        assert np.all(t[:, 0] > 0)

    @given(window, window, st.integers(0, 25), st.data())
    def test_single_entry_matches_table(self, g, d, N, data):
        p = DualHahnParams(g, d, N)
        n = data.draw(st.integers(0, N))
        x = data.draw(st.integers(0, N))
        assert math.isclose(orthonormal_R(n, x, p), orthonormal_table(p)[n, x], rel_tol=1e-12, abs_tol=1e-15)

    def test_weights_by_least_squares(self):
        # weights recovered numerically from R^T W R = diag must agree with
        # the closed form hidden inside the orthonormal functions
        p = DualHahnParams(0.3, 1.7, 6)
        R = np.array([[float(series_oracle(n, x, p.gamma, p.delta, p.N)) for x in range(7)] for n in range(7)])
        t = orthonormal_table(p)
        ratio = t / R
        w_over_h = ratio ** 2
        # w(x)/h_n factorizes: every column ratio is constant across rows
        col = w_over_h / w_over_h[0:1, :]
        assert np.allclose(col, col[:, :1], rtol=1e-12)

    def test_table_is_read_only(self):
        t = orthonormal_table(DualHahnParams(0.0, 0.0, 3))
        with pytest.raises(ValueError):
            t[0, 0] = 2.0

    def test_outside_window(self):
        with pytest.raises(InvalidParameterError):
            orthonormal_R(0, 0, DualHahnParams(-1.5, 0, 3))
        with pytest.raises(InvalidParameterError):
            orthonormal_table(DualHahnParams(0, -1, 3))


class TestRecurrences:
    def test_example_tuple(self):
        res = recurrence_residuals(3, 2, DualHahnParams(0.5, 0.5, 10))
        assert max(res) <= 1e-12

    @pytest.mark.parametrize("n", range(0, 6))
    def test_annihilation_at_origin(self, n):
        res = recurrence_residuals(n, 0, DualHahnParams(0.7, 1.3, 6))
        assert res[0] <= 1e-13

    @given(window, positive_delta, st.integers(1, 40), st.data())
    def test_all_four_on_random_tuples(self, g, d, N, data):
        n = data.draw(st.integers(0, N - 1))
        x = data.draw(st.integers(0, N))
        res = recurrence_residuals(n, x, DualHahnParams(g, d, N))
        assert all(r <= 1e-11 for r in res)

    def test_second_pair_needs_positive_delta(self):
        res = recurrence_residuals(1, 1, DualHahnParams(0.2, -0.5, 5))
        assert res[0] <= 1e-12 and res[1] <= 1e-12
        assert math.isnan(res[2]) and math.isnan(res[3])

    def test_index_checks(self):
        p = DualHahnParams(0.5, 0.5, 4)
        with pytest.raises(InvalidDimensionError):
            recurrence_residuals(4, 0, p)
        with pytest.raises(InvalidDimensionError):
            recurrence_residuals(0, 5, p)
        with pytest.raises(InvalidDimensionError):
            recurrence_residuals(0, 0, DualHahnParams(0.5, 0.5, 0))


def residual(n, a, b, u, lam):
    h = symmetric_extended(n, a, b)
    return np.abs(h.matvec(u) - lam * u).max() / (h.norm_inf() * np.abs(u).max())


class TestEigenvectors:
    def test_even_zero_mode(self):
        u = eigenvector_even(2, 0, 0, 0, 0)
        assert u[1] == 0
        assert residual(2, 0, 0, u, 0.0) <= 1e-14

    def test_even_plus(self):
        u = eigenvector_even(4, 0.5, 1, 2, "+")
        lam = math.sqrt(4 * (4 + 1.5))
        assert eigenvalue_for(4, 0.5, 1, 2, "+") == lam
        assert residual(4, 0.5, 1, u, lam) <= 1e-12

    def test_even_set_orthogonal(self):
        es = eigenvector_set(6, 1, 2)
        assert np.max(np.abs(es.vectors.T @ es.vectors - np.eye(7))) <= 1e-11
        assert np.allclose(es.eigenvalues, es.spectrum.values.real, atol=1e-13)

    def test_odd_smallest(self):
        u = eigenvector_odd(1, 0, 0, 0, "+")
        assert math.isclose(u[0], u[1])
        assert residual(1, 0, 0, u, 1.0) == 0

    def test_odd_minus(self):
        u = eigenvector_odd(5, 1, 1, 2, "-")
        assert eigenvalue_for(5, 1, 1, 2, "-") == -6
        assert residual(5, 1, 1, u, -6.0) <= 1e-12

    def test_odd_asymmetric(self):
        u = eigenvector_odd(5, 0.3, 2, 0, "+")
        lam = math.sqrt(1.3 * 3)
        assert residual(5, 0.3, 2, u, lam) <= 1e-12

    @pytest.mark.parametrize("n", [2, 7, 20, 33])
    def test_set_residuals(self, n):
        for a, b in [(0, 0), (0.5, 3), (3, 1)]:
            es = eigenvector_set(n, a, b)
            assert es.residuals(symmetric_extended(n, a, b)).max() <= 1e-11
            assert np.all(np.isfinite(es.vectors))
            assert np.all(np.abs(es.vectors).max(axis=0) > 0)

    @given(st.integers(1, 40), st.floats(-0.95, 5), st.floats(-0.95, 5))
    def test_set_property(self, n, a, b):
        es = eigenvector_set(n, a, b)
        h = symmetric_extended(n, a, b)
        assert es.residuals(h).max() <= 1e-11
        # eigenvalues can nearly coincide, so orthogonality is checked only
        # when the spectrum is well separated
        gaps = np.diff(es.eigenvalues)
        if gaps.min() > 1e-3:
            assert np.max(np.abs(es.vectors.T @ es.vectors - np.eye(n + 1))) <= 1e-8

    def test_parity_errors(self):
        with pytest.raises(UnsupportedParityError):
            eigenvector_even(3, 0, 0, 1, "+")
        with pytest.raises(UnsupportedParityError):
            eigenvector_odd(4, 0, 0, 1, "+")

    def test_window_errors(self):
        with pytest.raises(InvalidParameterError):
            eigenvector_even(4, -1.5, 0, 1, "+")
        with pytest.raises(InvalidParameterError):
            eigenvector_odd(5, 0, -1, 1, "+")
        with pytest.raises(InvalidParameterError):
            eigenvector_set(5, -2, -2)

    @pytest.mark.parametrize("k, sign", [(0, "+"), (1, 0), (3, "+"), (-1, "-")])
    def test_index_errors(self, k, sign):
        with pytest.raises(ValueError):
            eigenvector_even(4, 0, 0, k, sign)

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            eigenvector_odd(3, 0, 0, 0, "x")

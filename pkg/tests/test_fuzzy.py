from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dngame.errors import EmptyInputError, InvalidFuzzyNumberError, LengthMismatchError, ZeroAreaError
from dngame.fuzzy import (
    TFN,
    PiecewiseLinearCurve,
    centroid_defuzzify,
    envelope,
    graded_mean,
    intersection_area,
    membership,
    non_exclusive_degree,
    union_area,
    weighted_sum,
)

from conftest import tfns

VP = TFN(0.0, 0.0, 0.25)
P = TFN(0.10, 0.25, 0.39)
M = TFN(0.39, 0.53, 0.68)
MG = TFN(0.53, 0.68, 0.86)
G = TFN(0.68, 0.86, 0.97)


def _grid_area(fn, lo, hi, n=200001):
    xs = np.linspace(lo, hi, n)
    return float(np.trapezoid([fn(x) for x in xs], xs))


class TestConstruction:
    def test_rejects_unordered(self):
        with pytest.raises(InvalidFuzzyNumberError):
            TFN(0.5, 0.2, 0.9)

    def test_rejects_nan(self):
        with pytest.raises(InvalidFuzzyNumberError):
            TFN(0.0, float("nan"), 1.0)

    def test_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            TFN(1, 0, 0)

    def test_crisp(self):
        assert TFN.crisp(0.3).as_tuple() == (0.3, 0.3, 0.3)
        assert TFN.crisp(0.3).area == 0.0


class TestMembership:
    def test_peak(self):
        assert membership(M, 0.53) == 1.0

    def test_outside_support(self):
        assert membership(P, 0.05) == 0.0
        assert membership(P, 0.40) == 0.0

    def test_right_leg(self):
        assert membership(VP, 0.15625) == pytest.approx(0.375)

    def test_jump_leg_peak_is_one(self):
        assert membership(VP, 0.0) == 1.0
        assert membership(TFN(0.86, 1.0, 1.0), 1.0) == 1.0

    def test_crisp_point(self):
        f = TFN.crisp(2.0)
        assert f(2.0) == 1.0 and f(2.0001) == 0.0


class TestCrispification:
    def test_graded_mean_values(self):
        assert graded_mean(TFN(0.53, 0.91, 1.00)) == pytest.approx(0.862, abs=5e-4)
        assert graded_mean(TFN(0.10, 0.41, 0.68)) == pytest.approx(0.403, abs=5e-4)

    def test_graded_mean_crisp(self):
        assert graded_mean(TFN.crisp(0.7)) == pytest.approx(0.7)

    def test_centroid_values(self):
        assert centroid_defuzzify(TFN(0.629, 0.791, 0.918)) == pytest.approx(0.779, abs=1e-3)
        assert centroid_defuzzify(TFN(0.0, 0.0, 3.0)) == pytest.approx(1.0)
        assert centroid_defuzzify(TFN.crisp(0.4)) == 0.4

    def test_centroid_against_quadrature(self):
        f = TFN(0.0, 0.0, 3.0)
        num = _grid_area(lambda x: x * f(x), 0, 3)
        den = _grid_area(f, 0, 3)
        assert centroid_defuzzify(f) == pytest.approx(num / den, abs=1e-6)

    @given(tfns())
    def test_both_inside_support(self, f):
        for v in (graded_mean(f), centroid_defuzzify(f)):
            assert f.a1 - 1e-12 <= v <= f.a3 + 1e-12


class TestWeightedSum:
    def test_identity(self):
        assert weighted_sum([M], [1.0]) == M

    def test_convex_fixed_point(self):
        out = weighted_sum([M, M], [0.5, 0.5])
        assert out.as_tuple() == pytest.approx(M.as_tuple())

    def test_errors(self):
        with pytest.raises(EmptyInputError):
            weighted_sum([], [])
        with pytest.raises(LengthMismatchError):
            weighted_sum([M], [0.5, 0.5])
        with pytest.raises(EmptyInputError):
            weighted_sum([M], [0.0])

    @given(st.lists(tfns(), min_size=1, max_size=5), st.data())
    def test_stays_in_envelope(self, fs, data):
        raw = data.draw(st.lists(st.floats(0.01, 1.0), min_size=len(fs), max_size=len(fs)))
        ws = [w / sum(raw) for w in raw]
        out = weighted_sum(fs, ws)
        for k in range(3):
            comp = [f.as_tuple()[k] for f in fs]
            assert min(comp) - 1e-9 <= out.as_tuple()[k] <= max(comp) + 1e-9


class TestAreas:
    def test_vp_p_intersection(self):
        # crossing of 1 - x/0.25 and (x - 0.1)/0.15 at x = 0.15625, height 0.375
        assert intersection_area(VP, P) == pytest.approx(0.5 * 0.15 * 0.375, abs=1e-15)
        assert intersection_area(VP, P) == pytest.approx(0.028125)

    def test_vp_p_against_sampling(self):
        got = intersection_area(VP, P)
        assert got == pytest.approx(_grid_area(lambda x: min(VP(x), P(x)), 0, 0.4), abs=1e-6)

    def test_union_against_sampling(self):
        got = union_area(MG, G)
        assert got == pytest.approx(_grid_area(lambda x: max(MG(x), G(x)), 0.5, 1.0), abs=1e-6)

    def test_identical(self):
        assert intersection_area(M, M) == pytest.approx(M.area)
        assert union_area(M, M) == pytest.approx(M.area)

    def test_disjoint(self):
        assert intersection_area(VP, M) == 0.0

    def test_crisp_union_raises(self):
        with pytest.raises(ZeroAreaError):
            union_area(TFN.crisp(0.1), TFN.crisp(0.1))

    def test_envelope_kind_checked(self):
        with pytest.raises(ValueError):
            envelope(VP, P, "mean")

    @settings(max_examples=300)
    @given(tfns(), tfns())
    def test_area_identity(self, a, b):
        if a.area == 0 and b.area == 0:
            return
        lhs = intersection_area(a, b) + union_area(a, b)
        assert abs(lhs - a.area - b.area) < 1e-12 * max(1.0, a.area + b.area)


class TestDegree:
    def test_scale_pairs(self):
        VG = TFN(0.86, 1.0, 1.0)
        assert non_exclusive_degree(VP, P) == pytest.approx(0.116, abs=5e-4)
        assert non_exclusive_degree(MG, G) == pytest.approx(0.170, abs=5e-4)
        assert non_exclusive_degree(VP, M) == 0.0
        assert non_exclusive_degree(G, VG) == pytest.approx(0.127, abs=5e-4)

    @given(tfns(), tfns())
    def test_symmetric_and_bounded(self, a, b):
        if a.area == 0 and b.area == 0:
            return
        d = non_exclusive_degree(a, b)
        assert d == non_exclusive_degree(b, a)
        assert 0.0 <= d <= 1.0

    @given(tfns())
    def test_self_degree_is_one(self, a):
        if a.area > 0:
            assert non_exclusive_degree(a, a) == pytest.approx(1.0)


class TestCurve:
    def test_jump_has_no_area(self):
        c = PiecewiseLinearCurve(((0.0, 0.0), (0.0, 1.0), (1.0, 0.0)))
        assert c.area() == pytest.approx(0.5)
        assert c(0.0) == 1.0

    def test_rejects_decreasing_x(self):
        with pytest.raises(ValueError):
            PiecewiseLinearCurve(((1.0, 0.0), (0.0, 1.0)))


def test_crossing_on_subnormal_interval():
    # regression: the crossing point used to round past the interval end
    a = TFN(-1.0, -1.0, 0.0)
    b = TFN(-1.0, -0.5, -1.401298464324817e-45)
    assert intersection_area(a, b) + union_area(a, b) == pytest.approx(a.area + b.area, abs=1e-12)

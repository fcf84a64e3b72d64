import math

import numpy as np
import pytest

from tilerank import Performance, PerfError, TileCoord, catalog_score
from tilerank.rocgeom import (
    RocPoint,
    iso_line,
    linear_value_axis,
    pencil_vertex,
    performance_from_roc,
    score_from_roc,
    vertex_zone,
)


def random_cases(seed, n):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        pt = RocPoint(rng.random(), rng.random())
        coord = TileCoord(rng.random(), rng.random())
        pn = rng.uniform(0.02, 0.98)
        yield pt, coord, (pn, 1 - pn)


class TestScoreFromRoc:
    def test_perfect_and_worst_points(self):
        for _, coord, priors in random_cases(263, 50):
            assert score_from_roc(RocPoint(0, 1), priors, coord) == pytest.approx(1.0, abs=1e-15)
            assert score_from_roc(RocPoint(1, 0), priors, coord) == pytest.approx(0.0, abs=1e-15)

    def test_reconstructs_skewed_toy_performance(self):
        p = performance_from_roc(RocPoint(0.3, 0.7), (0.8, 0.2))
        assert p.as_tuple() == pytest.approx((0.56, 0.24, 0.06, 0.14), abs=1e-12)
        v = score_from_roc(RocPoint(0.3, 0.7), (0.8, 0.2), TileCoord(0.5, 0.5))
        assert v == pytest.approx(catalog_score("A", p), abs=1e-12)
        assert v == pytest.approx(0.70, abs=1e-12)

    def test_round_trip_identity(self):
        for pt, _, priors in random_cases(269, 300):
            p = performance_from_roc(pt, priors)
            assert catalog_score("FPR", p) == pytest.approx(pt.fpr, abs=1e-12)
            assert catalog_score("TPR", p) == pytest.approx(pt.tpr, abs=1e-12)

    def test_priors_validation(self):
        with pytest.raises(PerfError):
            performance_from_roc(RocPoint(0.5, 0.5), (0.0, 1.0))
        with pytest.raises(PerfError):
            RocPoint(1.2, 0.5)


class TestIsoLine:
    def test_point_on_its_own_iso_line(self):
        for pt, coord, priors in random_cases(271, 1000):
            v = score_from_roc(pt, priors, coord)
            if v is None:
                continue
            line = iso_line(v, coord, priors)
            assert abs(line.residual(pt)) < 1e-9

    def test_normalization(self):
        for _, coord, priors in random_cases(277, 100):
            line = iso_line(0.42, coord, priors)
            assert math.hypot(line.u, line.v) == pytest.approx(1.0, abs=1e-12)

    def test_value_one_line_through_perfect_point(self):
        for b in (0.1, 0.5, 0.9):
            line = iso_line(1.0, TileCoord(0.4, b), (0.6, 0.4))
            assert abs(line.residual(RocPoint(0, 1))) < 1e-12

    def test_value_zero_line_through_worst_point(self):
        for a in (0.1, 0.5, 0.9):
            line = iso_line(0.0, TileCoord(a, 0.7), (0.6, 0.4))
            assert abs(line.residual(RocPoint(1, 0))) < 1e-12

    def test_limit_orientations(self):
        priors = (0.7, 0.3)
        # value-0 line: vertical at a=0, horizontal at a=1
        assert iso_line(0.0, TileCoord(0.0, 0.5), priors).v == 0.0
        assert iso_line(0.0, TileCoord(1.0, 0.5), priors).u == 0.0
        # value-1 line: vertical at b=0, horizontal at b=1
        assert iso_line(1.0, TileCoord(0.5, 0.0), priors).v == 0.0
        assert iso_line(1.0, TileCoord(0.5, 1.0), priors).u == 0.0

    def test_better_side_is_positive(self):
        # the perfect corner scores 1, the worst corner 0: for an interior
        # iso value the line must separate them with the right signs
        for _, coord, priors in random_cases(281, 300):
            line = iso_line(0.5, coord, priors)
            assert line.residual(RocPoint(0, 1)) >= -1e-12
            assert line.residual(RocPoint(1, 0)) <= 1e-12

    def test_accuracy_isometrics_slope(self):
        line = iso_line(0.7, TileCoord(0.5, 0.5), (0.5, 0.5))
        # slope 1 lines: u and v have equal magnitude, opposite signs
        assert line.u == pytest.approx(-line.v, abs=1e-12)


class TestPencilVertex:
    def test_parallel_pencil_at_equal_coordinates(self):
        for x in (0.0, 0.3, 0.5, 1.0):
            vert = pencil_vertex(TileCoord(x, x), (0.6, 0.4))
            assert vert.at_infinity
            assert vert.h == 0.0

    def test_zone_by_coordinate_sign(self):
        rng = np.random.default_rng(283)
        for _ in range(1000):
            a, b = rng.random(2)
            pn = rng.uniform(0.05, 0.95)
            zone = vertex_zone(TileCoord(a, b), (pn, 1 - pn))
            if a > b:
                assert zone == "bottom_left"
            elif a < b:
                assert zone == "upper_right"
            else:
                assert zone == "infinity"

    def test_vertex_outside_roc(self):
        rng = np.random.default_rng(293)
        for _ in range(300):
            a, b = rng.random(2)
            if a == b:
                continue
            pn = rng.uniform(0.05, 0.95)
            vert = pencil_vertex(TileCoord(a, b), (pn, 1 - pn))
            x, y = vert.to_cartesian()
            if a < b:
                assert x >= 1.0 - 1e-12 and y >= 1.0 - 1e-12
            else:
                assert x <= 1e-12 and y <= 1e-12

    def test_vertex_lies_on_both_defining_lines(self):
        for _, coord, priors in random_cases(307, 200):
            if coord.a == coord.b:
                continue
            vert = pencil_vertex(coord, priors)
            x, y = vert.to_cartesian()
            for value in (0.0, 1.0):
                line = iso_line(value, coord, priors)
                assert abs(line.u * x + line.v * y + line.w) < 1e-9

    def test_example_coordinate_bottom_left(self):
        # a > b puts the vertex left of and below ROC
        vert = pencil_vertex(TileCoord(0.95, 0.7), (0.8, 0.2))
        x, y = vert.to_cartesian()
        assert x < 0 and y < 0
        assert vertex_zone(TileCoord(0.95, 0.7), (0.8, 0.2)) == "bottom_left"


class TestLinearValueAxis:
    def test_slope(self):
        axis = linear_value_axis(TileCoord(0.3, 0.6), (0.8, 0.2), RocPoint(0.5, 0.5))
        assert axis.slope == pytest.approx(-4.0, abs=1e-12)

    def test_value_at_perfect_anchor(self):
        axis = linear_value_axis(TileCoord(0.9, 0.1), (0.4, 0.6), RocPoint(0, 1))
        assert axis.value_at_anchor == pytest.approx(1.0, abs=1e-15)

    def test_affine_variation(self):
        # the denominator is constant along the direction, so steps of t
        # change the score by exactly rate * t
        rng = np.random.default_rng(311)
        for _ in range(100):
            coord = TileCoord(rng.random(), rng.random())
            pn = rng.uniform(0.1, 0.9)
            anchor = RocPoint(rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7))
            axis = linear_value_axis(coord, (pn, 1 - pn), anchor)
            assert axis.rate is not None
            for t in (-0.05, 0.03, 0.08):
                pt = RocPoint(anchor.fpr + t * axis.direction[0], anchor.tpr + t * axis.direction[1])
                v = score_from_roc(pt, (pn, 1 - pn), coord)
                assert v == pytest.approx(axis.value_at_anchor + t * axis.rate, abs=1e-9)

    def test_balanced_accuracy_axis(self):
        axis = linear_value_axis(TileCoord(0.5, 0.5), (0.5, 0.5), RocPoint(0.5, 0.5))
        assert axis.slope == -1.0
        assert axis.value_at_anchor == pytest.approx(0.5, abs=1e-12)

    def test_undefined_along_line(self):
        axis = linear_value_axis(TileCoord(1.0, 0.0), (0.5, 0.5), RocPoint(0.0, 0.0))
        assert axis.rate is None and axis.value_at_anchor is None

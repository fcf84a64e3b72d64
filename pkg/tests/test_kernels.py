"""Kernel equivalence and correctness against a brute-force tau oracle."""

import math

import numpy as np
import pytest

from tilerank import Performance, canonical_score
from tilerank import _kernels
from tilerank._kernels import _fallback

try:
    from tilerank._kernels import _native
except ImportError:
    _native = None

IMPLS = [("fallback", _fallback)] + ([("native", _native)] if _native else [])


def tau_b_bruteforce(x, y):
    """O(n^2) pair counting with the tie-adjusted denominator."""
    n = len(x)
    if n < 2:
        return float("nan")
    con = dis = ties_x = ties_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            if dx == 0 and dy == 0:
                continue
            if dx == 0:
                ties_x += 1
            elif dy == 0:
                ties_y += 1
            elif dx * dy > 0:
                con += 1
            else:
                dis += 1
    denom = math.sqrt((con + dis + ties_x) * (con + dis + ties_y))
    if denom == 0:
        return float("nan")
    return (con - dis) / denom


@pytest.mark.parametrize("impl_name,impl", IMPLS)
class TestKendallTau:
    def test_hand_case(self, impl_name, impl):
        tau = impl.kendall_tau_b(np.array([1.0, 2, 3, 4]), np.array([2.0, 1, 4, 3]))
        assert tau == pytest.approx(1 / 3, abs=1e-12)

    def test_perfect_and_reversed(self, impl_name, impl):
        x = np.array([1.0, 2, 3])
        assert impl.kendall_tau_b(x, x) == pytest.approx(1.0, abs=0)
        assert impl.kendall_tau_b(x, -x) == pytest.approx(-1.0, abs=0)

    def test_matches_bruteforce_with_ties(self, impl_name, impl):
        rng = np.random.default_rng(131)
        for _ in range(150):
            n = int(rng.integers(2, 40))
            x = rng.integers(0, 5, n).astype(float)
            y = rng.integers(0, 5, n).astype(float)
            want = tau_b_bruteforce(x, y)
            got = impl.kendall_tau_b(x, y)
            assert math.isnan(got) == math.isnan(want)
            if not math.isnan(want):
                assert got == pytest.approx(want, abs=1e-12)

    def test_constant_input_undefined(self, impl_name, impl):
        assert math.isnan(impl.kendall_tau_b(np.ones(10), np.arange(10.0)))

    def test_tau_grid_matches_scalar_kernel(self, impl_name, impl):
        rng = np.random.default_rng(137)
        comps = rng.dirichlet((1, 1, 1, 1), 200)
        target = comps[:, 0] / (comps[:, 0] + comps[:, 1])  # TNR
        target[rng.random(200) < 0.05] = np.nan
        avals = np.array([0.0, 0.3, 1.0])
        bvals = np.array([0.0, 0.55, 1.0])
        grid = impl.tau_grid(target, comps[:, 0], comps[:, 1], comps[:, 2], comps[:, 3], avals, bvals)
        for i, a in enumerate(avals):
            for j, b in enumerate(bvals):
                num = (1 - a) * comps[:, 0] + a * comps[:, 3]
                den = num + (1 - b) * comps[:, 1] + b * comps[:, 2]
                ok = np.isfinite(target) & (den != 0)
                want = impl.kendall_tau_b(target[ok], num[ok] / den[ok])
                got = grid[i, j]
                assert math.isnan(got) == math.isnan(want)
                if not math.isnan(want):
                    assert got == pytest.approx(want, abs=1e-12)


@pytest.mark.skipif(_native is None, reason="native kernel not built")
def test_native_fallback_equivalence():
    rng = np.random.default_rng(139)
    for _ in range(100):
        n = int(rng.integers(2, 500))
        if rng.random() < 0.5:
            x = rng.integers(0, 8, n).astype(float)
            y = rng.integers(0, 8, n).astype(float)
        else:
            x = rng.standard_normal(n)
            y = x * rng.choice([-1, 1]) + rng.standard_normal(n) * rng.random()
        a = _fallback.kendall_tau_b(x, y)
        b = _native.kendall_tau_b(x, y)
        assert math.isnan(a) == math.isnan(b)
        if not math.isnan(a):
            assert b == pytest.approx(a, abs=1e-12)


def test_dispatch_filters_nan_pairs():
    x = np.array([1.0, np.nan, 2.0, 3.0, 4.0])
    y = np.array([2.0, 0.0, 1.0, 4.0, 3.0])
    assert _kernels.kendall_tau_b(x, y) == pytest.approx(1 / 3, abs=1e-12)
    assert math.isnan(_kernels.kendall_tau_b(np.array([1.0, np.nan]), np.array([np.nan, 2.0])))


def test_value_grid_matches_scalar_scores():
    p = Performance(0.3, 0.25, 0.35, 0.1)
    avals = np.linspace(0, 1, 7)
    bvals = np.linspace(0, 1, 5)
    grid = _kernels.value_grid(*p.as_tuple(), avals, bvals)
    for i, a in enumerate(avals):
        for j, b in enumerate(bvals):
            want = canonical_score(a, b, p)
            if want is None:
                assert math.isnan(grid[i, j])
            else:
                assert grid[i, j] == pytest.approx(want, abs=0)


def test_value_grid_undefined_cell():
    grid = _kernels.value_grid(1.0, 0.0, 0.0, 0.0, np.array([0.0, 1.0]), np.array([0.0, 1.0]))
    assert math.isnan(grid[1, 0])  # PPV corner of the constant-negative classifier
    assert grid[0, 0] == 1.0


def test_score_samples_matches_scalar():
    comps = np.random.default_rng(149).dirichlet((1, 1, 1, 1), 50)
    vals = _kernels.score_samples(0.3, 0.8, comps[:, 0], comps[:, 1], comps[:, 2], comps[:, 3])
    for k, row in enumerate(comps):
        want = canonical_score(0.3, 0.8, Performance(*row))
        assert vals[k] == pytest.approx(want, abs=0)


def test_threaded_tau_grid_matches_serial(monkeypatch):
    rng = np.random.default_rng(151)
    comps = rng.dirichlet((1, 1, 1, 1), 300)
    target = comps[:, 3]
    avals = np.linspace(0, 1, 9)
    bvals = np.linspace(0, 1, 4)
    serial = _kernels.tau_grid(target, comps[:, 0], comps[:, 1], comps[:, 2], comps[:, 3], avals, bvals)
    monkeypatch.setenv("TILE_RANK_THREADS", "4")
    threaded = _kernels.tau_grid(target, comps[:, 0], comps[:, 1], comps[:, 2], comps[:, 3], avals, bvals)
    np.testing.assert_array_equal(serial, threaded)

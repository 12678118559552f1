import math
import os

import oraclehull as oh


def test_polygon_area():
    square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    assert oh.polygon_area(square) == 1.0
    assert oh.polygon_area([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]) == 0.5


def test_convex_hull_drops_interior_points():
    pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]]
    hull = oh.convex_hull(pts)
    assert len(hull) == 4


def test_symmetric_difference():
    square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    half = [(0.0, 0.0), (0.5, 0.0), (0.5, 1.0), (0.0, 1.0)]
    assert abs(oh.symmetric_difference_area(square, half) - 0.5) < 1e-9
    assert oh.symmetric_difference_area(square, square) == 0.0


def test_generate_points_circle():
    pts = oh.generate_points("circle:4", d=2)
    assert pts[0] == [1.0, 0.5]
    assert len(pts) == 4


def test_run_trial_single_cell():
    rec = oh.run_trial("nao", 2, 4, "uniform:1", seed=3)
    assert rec["queries_used"] == 4
    assert abs(rec["error"] - 0.25) < 1e-9
    assert rec["error_std"] == 0.0


def test_run_trial_adaptive_beats_budget_shape():
    rec = oh.run_trial("ao", 2, 64, "circle:128", seed=1)
    assert rec["error"] >= 0.0
    assert rec["queries_used"] > 0


def test_sweep_and_fit(tmp_path):
    out = os.path.join(tmp_path, "sweep.csv")
    oh.sweep("nao", 2, [16, 64, 256], 2, "uniform:64", "simulated", 7, out)
    fit = oh.fit_slope(out, "q", "error")
    assert fit["x_points"] == 3
    assert fit["slope"] < 0.0


def test_adversary_roundtrip():
    rep = oh.adversary("nah", 16)
    assert rep["indistinguishable"] is True
    assert rep["hull_gap"] > 0.0
    assert rep["forced_error"] >= rep["hull_gap"] / 2 - 1e-9


def test_adversary_gap_scaling():
    gaps = [oh.adversary("nao", q)["hull_gap"] for q in (16, 64, 256)]
    slope = (math.log2(gaps[2]) - math.log2(gaps[0])) / 4.0
    assert -0.85 < slope < -0.15

import math

import numpy as np
import pytest

from pupilcover import (
    Infeasible,
    OptimizerConfig,
    Point,
    Pupil,
    PupilConfig,
    SearchSpaceTooLarge,
    decide,
    exhaustive_search,
    minimize_area,
    minimize_sum_radii,
    move_pupils,
    relocation_objective,
    relocation_targets,
)
from pupilcover.optimize import _solve_relocation
from tests.conftest import random_config


def test_minsum_single_pupil_reaches_half_radius():
    cfg = PupilConfig([Pupil(Point(0, 0), 0.1)], 1.0)
    trace = minimize_sum_radii(cfg)
    assert trace.final_config.radii[0] == pytest.approx(0.5, abs=1e-9)
    assert trace.iterations[-1].covered


def test_minsum_three_pupil_optimum_is_stable():
    cfg = PupilConfig(
        [
            Pupil(Point(0, 0), 0.5),
            Pupil(Point(0.6, 0.1), 0.0),
            Pupil(Point(-0.3, 0.4), 0.0),
        ],
        1.0,
    )
    trace = minimize_sum_radii(cfg)
    assert sum(trace.final_config.radii) == pytest.approx(0.5, abs=1e-9)
    assert trace.iterations[-1].covered


def test_minsum_random_configs_contract(rng):
    for _ in range(8):
        cfg = random_config(rng, int(rng.integers(1, 6)))
        trace = minimize_sum_radii(cfg)
        sums = [e.sum_of_radii for e in trace.iterations]
        for a, b in zip(sums[1:], sums[2:]):
            assert b <= a + 1e-9
        assert trace.iterations[-1].covered
        assert decide(trace.final_config)[0]


def test_minsum_infeasible_with_tiny_max_radius():
    cfg = PupilConfig([Pupil(Point(0, 0), 0.1), Pupil(Point(0.8, 0.0), 0.1)], 1.0)
    with pytest.raises(Infeasible):
        minimize_sum_radii(cfg, OptimizerConfig(max_radius=0.01))


def test_minsum_forbid_overlap_rows_hold(rng):
    # three far-apart pupils leave room for a non-overlapping cover
    cfg = PupilConfig(
        [
            Pupil(Point(0.0, 0.0), 0.3),
            Pupil(Point(1.4, 0.0), 0.1),
            Pupil(Point(0.0, 1.4), 0.1),
        ],
        1.0,
    )
    trace = minimize_sum_radii(cfg, OptimizerConfig(forbid_overlap=True))
    final = trace.final_config
    for i in range(final.n):
        for j in range(i + 1, final.n):
            gap = final.pupils[i].center.distance_to(final.pupils[j].center)
            assert final.radii[i] + final.radii[j] <= gap + 1e-9
    assert decide(final)[0]


def test_minarea_single_pupil():
    trace = minimize_area(PupilConfig([Pupil(Point(0, 0), 0.1)], 1.0))
    assert trace.final_config.radii[0] == pytest.approx(0.5, abs=1e-8)
    assert trace.iterations[-1].total_area == pytest.approx(math.pi / 4.0, abs=1e-7)


def test_minarea_symmetric_pair_stays_symmetric():
    cfg = PupilConfig([Pupil(Point(-0.4, 0), 0.15), Pupil(Point(0.4, 0), 0.15)], 1.0)
    trace = minimize_area(cfg)
    r1, r2 = trace.final_config.radii
    assert abs(r1 - r2) <= 1e-6
    assert trace.iterations[-1].covered


def test_minarea_area_non_increasing(rng):
    cfg = random_config(rng, 4)
    trace = minimize_area(cfg)
    areas = [e.total_area for e in trace.iterations]
    for a, b in zip(areas[1:], areas[2:]):
        assert b <= a + 1e-9
    assert trace.iterations[-1].covered


def test_move_single_pupil_unchanged():
    cfg = PupilConfig([Pupil(Point(0.3, 0.2), 0.4)], 1.0)
    trace = move_pupils(cfg)
    assert trace.final_config.centers == cfg.centers
    assert trace.warning is not None


def test_move_zero_residual_rows_fix_centers():
    cfg = PupilConfig(
        [Pupil(Point(0.0, 0.0), 0.2), Pupil(Point(0.5, 0.2), 0.2), Pupil(Point(-0.4, 0.3), 0.2)],
        1.0,
    )
    # synthetic rows whose targets equal the current center differences
    rows = [
        (i, j, Point(cfg.centers[i].x - cfg.centers[j].x, cfg.centers[i].y - cfg.centers[j].y))
        for i in range(3)
        for j in range(3)
        if i != j
    ]
    for gauge in ("fix_centroid", "fix_first_center"):
        moved = _solve_relocation(cfg, rows, gauge)
        for old, new in zip(cfg.centers, moved):
            assert old.distance_to(new) <= 1e-9


def test_move_decreases_leastsquares_objective():
    rng = np.random.default_rng(11)
    pupils = [
        Pupil(Point(float(t), float(0.05 * t * t)), 0.18)
        for t in np.linspace(-0.7, 0.7, 5)
    ]
    cfg = PupilConfig(pupils, 1.0)
    current = cfg
    for _ in range(4):
        rows = relocation_targets(current)
        assert rows
        before = relocation_objective(current, rows)
        moved = current.with_centers(_solve_relocation(current, rows, "fix_centroid"))
        after = relocation_objective(moved, rows)
        assert after <= before + 1e-9
        current = moved


def test_move_gauges_preserve_their_pins():
    cfg = PupilConfig(
        [Pupil(Point(-0.5, 0.0), 0.2), Pupil(Point(0.0, 0.1), 0.2), Pupil(Point(0.5, 0.0), 0.2)],
        1.0,
    )
    tr_centroid = move_pupils(cfg, OptimizerConfig(relocation_iterations=3))
    old = np.array([[c.x, c.y] for c in cfg.centers]).sum(axis=0)
    new = np.array([[c.x, c.y] for c in tr_centroid.final_config.centers]).sum(axis=0)
    assert np.allclose(old, new, atol=1e-8)

    tr_first = move_pupils(cfg, OptimizerConfig(relocation_iterations=3, gauge="fix_first_center"))
    assert tr_first.final_config.centers[0].distance_to(cfg.centers[0]) <= 1e-9


def test_move_trace_reports_coverage_per_iteration():
    cfg = PupilConfig(
        [Pupil(Point(float(x), 0.0), 0.16) for x in np.linspace(-0.6, 0.6, 5)], 1.0
    )
    trace = move_pupils(cfg, OptimizerConfig(relocation_iterations=5))
    assert len(trace.iterations) >= 2
    assert all(isinstance(e.covered, bool) for e in trace.iterations)


def test_exhaustive_single_pupil_grid_hits():
    cfg = exhaustive_search([Point(0, 0)], 1.0, OptimizerConfig(theta=0.1))
    assert cfg.radii == (pytest.approx(0.5),)
    cfg = exhaustive_search([Point(0, 0)], 1.0, OptimizerConfig(theta=0.15))
    assert cfg.radii == (pytest.approx(0.6),)  # first multiple of 0.15 at or past 0.5


def test_exhaustive_three_pupils_near_lower_bound(rng):
    centers = [
        Point(float(rng.uniform(-0.5, 0.5)), float(rng.uniform(-0.5, 0.5))) for _ in range(3)
    ]
    theta = 0.25
    best = exhaustive_search(centers, 1.0, OptimizerConfig(theta=theta))
    assert decide(best)[0]
    assert sum(best.radii) <= 0.5 + 3 * theta + 1e-9


def test_exhaustive_guard():
    centers = [Point(float(k), 0.0) for k in range(12)]
    with pytest.raises(SearchSpaceTooLarge):
        exhaustive_search(centers, 1.0, OptimizerConfig(theta=1e-3))


def test_exhaustive_lexicographic_tie_break():
    # both (0.5, 0) and (0, 0.5) cover at sum 0.5; the lexicographically
    # smallest vector wins
    best = exhaustive_search([Point(0, 0), Point(1, 0)], 1.0, OptimizerConfig(theta=0.25))
    assert best.radii == (0.0, pytest.approx(0.5))


def test_iteration_limit_carries_partial_trace():
    from pupilcover import IterationLimit

    cfg = PupilConfig(
        [
            Pupil(Point(-0.4, 0.1), 0.25),
            Pupil(Point(0.3, -0.2), 0.25),
            Pupil(Point(0.1, 0.45), 0.25),
        ],
        1.0,
    )
    with pytest.raises(IterationLimit) as err:
        minimize_sum_radii(cfg, OptimizerConfig(max_iterations=3))
    assert err.value.trace is not None
    assert len(err.value.trace.iterations) == 4  # initial entry plus three passes


def test_minsum_beats_exhaustive_minus_grid_slack(rng):
    centers = [
        Point(float(rng.uniform(-0.5, 0.5)), float(rng.uniform(-0.5, 0.5))) for _ in range(3)
    ]
    theta = 0.1
    grid_best = exhaustive_search(centers, 1.0, OptimizerConfig(theta=theta))
    start = PupilConfig([Pupil(c, 0.25) for c in centers], 1.0)
    heur = minimize_sum_radii(start)
    assert sum(heur.final_config.radii) >= sum(grid_best.radii) - 3 * theta - 1e-9
    assert decide(heur.final_config)[0] and decide(grid_best)[0]

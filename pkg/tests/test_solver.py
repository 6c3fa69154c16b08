import itertools
import math

import numpy as np
import pytest

from pupilcover import (
    Infeasible,
    LinearProgram,
    QuadraticProgram,
    Unbounded,
    solve_lp,
    solve_qp,
)


def test_lp_single_binding_constraint():
    x = solve_lp(LinearProgram([1.0], [(np.array([1.0]), 3.0)], [0.0]))
    assert x[0] == pytest.approx(3.0, abs=1e-9)


def test_lp_degenerate_optimum_objective_value():
    lp = LinearProgram([1.0, 1.0], [(np.array([1.0, 1.0]), 2.0)], [0.0, 0.0])
    x = solve_lp(lp)
    assert float(np.dot([1.0, 1.0], x)) == pytest.approx(2.0, abs=1e-9)


def test_lp_infeasible():
    lp = LinearProgram([1.0], [(np.array([1.0]), 1.0)], [0.0], [0.0])
    with pytest.raises(Infeasible):
        solve_lp(lp)


def test_lp_unbounded():
    lp = LinearProgram([-1.0], [(np.array([1.0]), 0.0)], [0.0])
    with pytest.raises(Unbounded):
        solve_lp(lp)


def test_lp_respects_bounds():
    lp = LinearProgram(
        [1.0, -1.0],
        [(np.array([1.0, 1.0]), 1.0)],
        [0.25, 0.0],
        [2.0, 0.75],
    )
    x = solve_lp(lp)
    assert x[0] >= 0.25 - 1e-9 and x[1] <= 0.75 + 1e-9
    assert float(np.array([1.0, 1.0]) @ x) >= 1.0 - 1e-9


def _enumerate_vertices(lp: LinearProgram) -> float:
    """Exhaustive basic-solution oracle: best objective over all feasible
    intersections of n active constraints (rows plus bound rows)."""
    n = lp.objective.shape[0]
    rows = [(np.asarray(a, float), float(b)) for a, b in lp.constraints]
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        rows.append((e.copy(), float(lp.lower_bounds[i])))
        if lp.upper_bounds is not None and math.isfinite(lp.upper_bounds[i]):
            rows.append((e.copy(), float(lp.upper_bounds[i])))
    best = math.inf
    for subset in itertools.combinations(range(len(rows)), n):
        a = np.array([rows[k][0] for k in subset])
        b = np.array([rows[k][1] for k in subset])
        if abs(np.linalg.det(a)) < 1e-12:
            continue
        x = np.linalg.solve(a, b)
        feasible = all(float(r @ x) >= bb - 1e-9 for r, bb in lp.constraints)
        feasible &= bool(np.all(x >= lp.lower_bounds - 1e-9))
        if lp.upper_bounds is not None:
            feasible &= bool(np.all(x <= lp.upper_bounds + 1e-9))
        if feasible:
            best = min(best, float(lp.objective @ x))
    return best


def test_lp_matches_vertex_enumeration(rng):
    """Random pair-sum structured instances against the exhaustive oracle."""
    for _ in range(40):
        n = 3
        radii = rng.uniform(0.0, 1.0, n)
        rows = []
        for i in range(n):
            for j in range(i, n):
                alpha = float(rng.uniform(-0.3, 0.5))
                e = np.zeros(n)
                e[i] += 1.0
                e[j] += 1.0
                rows.append((e, float(radii[i] + radii[j]) + alpha))
        lp = LinearProgram(np.ones(n), rows, np.zeros(n))
        x = solve_lp(lp)
        assert float(np.ones(n) @ x) == pytest.approx(_enumerate_vertices(lp), abs=1e-7)


def test_qp_active_constraint():
    x = solve_qp(QuadraticProgram([[2.0]], [0.0], [(np.array([1.0]), 3.0)]))
    assert x[0] == pytest.approx(3.0, abs=1e-8)


def test_qp_unconstrained_stationary_point():
    x = solve_qp(QuadraticProgram(2.0 * np.eye(2), [-2.0, -4.0]))
    assert x == pytest.approx([1.0, 2.0], abs=1e-10)


def test_qp_symmetric_split():
    x = solve_qp(QuadraticProgram(2.0 * np.eye(2), [0.0, 0.0], [(np.array([1.0, 1.0]), 2.0)]))
    assert x == pytest.approx([1.0, 1.0], abs=1e-8)


def test_qp_rejects_asymmetric_or_indefinite():
    with pytest.raises(ValueError):
        QuadraticProgram(np.array([[1.0, 2.0], [0.0, 1.0]]), [0.0, 0.0])
    with pytest.raises(ValueError):
        QuadraticProgram(np.array([[1.0, 0.0], [0.0, -1.0]]), [0.0, 0.0])


def test_qp_infeasible():
    qp = QuadraticProgram(
        [[2.0]], [0.0], [(np.array([1.0]), 1.0)], lower_bounds=[0.0], upper_bounds=[0.5]
    )
    with pytest.raises(Infeasible):
        solve_qp(qp)


def _projected_gradient(Q, c, lb, ub, iters=30000):
    x = np.clip(np.zeros_like(c), lb, ub)
    step = 0.9 / float(np.max(np.diag(Q)))
    for _ in range(iters):
        x = np.clip(x - step * (Q @ x + c), lb, ub)
    return x


def test_qp_matches_projected_gradient_on_boxes(rng):
    for _ in range(25):
        n = int(rng.integers(2, 5))
        diag = rng.uniform(0.5, 4.0, n)
        Q = np.diag(diag)
        c = rng.uniform(-2.0, 2.0, n)
        lb = rng.uniform(-1.0, 0.0, n)
        ub = lb + rng.uniform(0.2, 2.0, n)
        x = solve_qp(QuadraticProgram(Q, c, [], lb, ub))
        ref = _projected_gradient(Q, c, lb, ub)
        assert x == pytest.approx(ref, abs=1e-5)


def test_qp_pair_sum_structure(rng):
    """Area-style objective under pair-sum covering rows stays feasible and
    beats no feasible reference point."""
    for _ in range(10):
        n = 3
        rows = []
        for i in range(n):
            for j in range(i, n):
                e = np.zeros(n)
                e[i] += 1.0
                e[j] += 1.0
                rows.append((e, float(rng.uniform(0.1, 1.0))))
        qp = QuadraticProgram(2.0 * math.pi * np.eye(n), np.zeros(n), rows, np.zeros(n))
        x = solve_qp(qp)
        for a, b in rows:
            assert float(a @ x) >= b - 1e-8
        # compare against a dense grid of feasible points
        grid = rng.uniform(0.0, 1.2, size=(4000, n))
        feas = grid[np.all(grid @ np.array([a for a, _ in rows]).T >= np.array([b for _, b in rows]) - 1e-12, axis=1)]
        if len(feas):
            assert math.pi * float((x**2).sum()) <= math.pi * float((feas**2).sum(axis=1).min()) + 1e-6

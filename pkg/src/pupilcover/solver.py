"""Small dense linear and convex quadratic program solvers.

Problem sizes here are tiny (tens of variables, at most a few hundred rows),
so both solvers are self-contained: a two-phase tableau simplex with Bland's
rule for determinism, and a primal active-set method for convex QPs.  Each
solve is certified post hoc from scratch (feasibility, dual signs and
complementary slackness for the LP; the KKT residuals for the QP).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class Infeasible(Exception):
    """The constraint system admits no solution."""


class Unbounded(Exception):
    """The objective decreases without bound over the feasible set."""


class NumericalError(Exception):
    """The solver finished but its optimality certificate failed."""


@dataclass
class LinearProgram:
    """minimize objective @ x  subject to  a @ x >= b for every (a, b) row,
    lower_bounds <= x (<= upper_bounds when given)."""

    objective: np.ndarray
    constraints: list[tuple[np.ndarray, float]]
    lower_bounds: np.ndarray
    upper_bounds: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.objective = np.asarray(self.objective, dtype=float)
        self.lower_bounds = np.asarray(self.lower_bounds, dtype=float)
        self.constraints = [(np.asarray(a, dtype=float), float(b)) for a, b in self.constraints]
        n = self.objective.shape[0]
        if self.lower_bounds.shape != (n,):
            raise ValueError("lower_bounds dimension mismatch")
        if not np.all(np.isfinite(self.lower_bounds)):
            raise ValueError("lower_bounds must be finite")
        for a, _ in self.constraints:
            if a.shape != (n,):
                raise ValueError("constraint row dimension mismatch")
        if self.upper_bounds is not None:
            self.upper_bounds = np.asarray(self.upper_bounds, dtype=float)
            if self.upper_bounds.shape != (n,):
                raise ValueError("upper_bounds dimension mismatch")


@dataclass
class QuadraticProgram:
    """minimize 0.5 * x @ Q @ x + c @ x under the same constraint shape as
    LinearProgram.  Q must be symmetric positive semidefinite."""

    Q: np.ndarray
    c: np.ndarray
    constraints: list[tuple[np.ndarray, float]] = field(default_factory=list)
    lower_bounds: np.ndarray | None = None
    upper_bounds: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.Q = np.asarray(self.Q, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        n = self.c.shape[0]
        if self.Q.shape != (n, n):
            raise ValueError("Q dimension mismatch")
        scale = max(1.0, float(np.abs(self.Q).max()))
        if np.abs(self.Q - self.Q.T).max() > 1e-9 * scale:
            raise ValueError("Q must be symmetric")
        if float(np.linalg.eigvalsh(self.Q).min()) < -1e-8 * scale:
            raise ValueError("Q must be positive semidefinite")
        self.constraints = [(np.asarray(a, dtype=float), float(b)) for a, b in self.constraints]
        for a, _ in self.constraints:
            if a.shape != (n,):
                raise ValueError("constraint row dimension mismatch")
        if self.lower_bounds is not None:
            self.lower_bounds = np.asarray(self.lower_bounds, dtype=float)
        if self.upper_bounds is not None:
            self.upper_bounds = np.asarray(self.upper_bounds, dtype=float)


_PIVOT_TOL = 1e-11
_COST_TOL = 1e-9


def _pivot(tableau: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and tableau[r, col] != 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]
    basis[row] = col


def _run_simplex(tableau: np.ndarray, basis: list[int], allowed: int) -> None:
    """Bland's rule iterations on the last (cost) row; columns >= ``allowed``
    never enter.  Raises Unbounded when a ratio test fails."""
    m = tableau.shape[0] - 1
    for _ in range(20000):
        cost = tableau[-1, :allowed]
        entering = -1
        for j in range(allowed):
            if cost[j] < -_COST_TOL:
                entering = j
                break
        if entering < 0:
            return
        best_ratio = math.inf
        leaving = -1
        for r in range(m):
            a = tableau[r, entering]
            if a > _PIVOT_TOL:
                ratio = tableau[r, -1] / a
                tie = 1e-12 * (1.0 + abs(best_ratio) if math.isfinite(best_ratio) else 1.0)
                if ratio < best_ratio - tie or (
                    abs(ratio - best_ratio) <= tie and (leaving < 0 or basis[r] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = r
        if leaving < 0:
            raise Unbounded("no ratio limit for an improving direction")
        _pivot(tableau, basis, leaving, entering)
    raise NumericalError("simplex iteration limit exceeded")


def _simplex_standard(cost: np.ndarray, eq: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """min cost @ z  s.t.  eq @ z = rhs, z >= 0 (rhs is made nonnegative by
    row sign flips).  Two phases with artificial variables."""
    m, nv = eq.shape
    eq = eq.copy()
    rhs = rhs.copy()
    flip = rhs < 0
    eq[flip] *= -1.0
    rhs[flip] *= -1.0

    total = nv + m
    tableau = np.zeros((m + 1, total + 1))
    tableau[:m, :nv] = eq
    tableau[:m, nv:total] = np.eye(m)
    tableau[:m, -1] = rhs
    basis = list(range(nv, total))
    # Phase-1 reduced costs for min(sum of artificials).
    tableau[-1, :] = 0.0
    tableau[-1, :nv] = -eq.sum(axis=0)
    tableau[-1, -1] = -rhs.sum()
    _run_simplex(tableau, basis, allowed=nv)
    if -tableau[-1, -1] > 1e-9 * max(1.0, float(np.abs(rhs).max(initial=0.0))):
        raise Infeasible("phase-1 optimum is positive")

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep_rows = []
    for r in range(m):
        if basis[r] >= nv:
            piv = -1
            for j in range(nv):
                if abs(tableau[r, j]) > _PIVOT_TOL:
                    piv = j
                    break
            if piv < 0:
                continue  # redundant constraint row
            _pivot(tableau, basis, r, piv)
        keep_rows.append(r)
    if len(keep_rows) != m:
        rows = keep_rows + [m]
        tableau = tableau[rows]
        basis = [basis[r] for r in keep_rows]
        m = len(keep_rows)

    # Phase 2 on the real objective.
    tableau[-1, :] = 0.0
    tableau[-1, :nv] = cost
    for r in range(m):
        if abs(tableau[-1, basis[r]]) > 0.0:
            tableau[-1] -= tableau[-1, basis[r]] * tableau[r]
    _run_simplex(tableau, basis, allowed=nv)

    z = np.zeros(nv + (tableau.shape[1] - 1 - nv))
    for r in range(m):
        z[basis[r]] = tableau[r, -1]
    return z[:nv], basis[:m]


def _lp_rows(lp: LinearProgram) -> tuple[np.ndarray, np.ndarray]:
    """All rows in 'a @ y >= h' form over the shifted variable y = x - lb."""
    n = lp.objective.shape[0]
    rows = []
    rhs = []
    for a, b in lp.constraints:
        rows.append(a)
        rhs.append(b - float(a @ lp.lower_bounds))
    if lp.upper_bounds is not None:
        for i in range(n):
            if math.isfinite(lp.upper_bounds[i]):
                e = np.zeros(n)
                e[i] = -1.0
                rows.append(e)
                rhs.append(-(lp.upper_bounds[i] - lp.lower_bounds[i]))
    if rows:
        return np.array(rows), np.array(rhs)
    return np.zeros((0, n)), np.zeros(0)


def solve_lp(lp: LinearProgram) -> np.ndarray:
    """Optimal vertex of the linear program, deterministic via Bland's rule.
    The result is certified from scratch: primal feasibility, nonnegative row
    duals, complementary slackness and a closed duality gap."""
    n = lp.objective.shape[0]
    rows, rhs = _lp_rows(lp)
    m = rows.shape[0]
    # Standard form: rows @ y - s = rhs with y, s >= 0.
    eq = np.hstack([rows, -np.eye(m)]) if m else np.zeros((0, n))
    cost = np.concatenate([lp.objective, np.zeros(m)])
    z, basis = _simplex_standard(cost, eq, rhs.copy())
    y = z[:n]
    x = y + lp.lower_bounds

    _certify_lp(lp, x, cost, eq, rhs, z, basis)
    return x


def _certify_lp(lp, x, cost, eq, rhs, z, basis) -> None:
    scale = 1.0 + float(np.abs(x).max(initial=0.0)) + float(np.abs(lp.objective).max(initial=0.0))
    for a, b in lp.constraints:
        if float(a @ x) < b - 1e-9 * scale:
            raise NumericalError("primal constraint violated beyond tolerance")
    if np.any(x < lp.lower_bounds - 1e-9 * scale):
        raise NumericalError("lower bound violated beyond tolerance")
    if lp.upper_bounds is not None and np.any(x > lp.upper_bounds + 1e-9 * scale):
        raise NumericalError("upper bound violated beyond tolerance")
    m, total = eq.shape[0], eq.shape[1] if eq.size else 0
    if m == 0:
        return
    cols = eq[:, basis] if basis else np.zeros((m, 0))
    try:
        duals = np.linalg.solve(cols.T, cost[basis])
    except np.linalg.LinAlgError:
        duals, *_ = np.linalg.lstsq(cols.T, cost[basis], rcond=None)
    reduced = cost[:total] - eq.T @ duals
    if reduced.min(initial=0.0) < -1e-7 * scale:
        raise NumericalError("negative reduced cost at claimed optimum")
    # Complementary slackness: every positive variable has zero reduced cost.
    if np.abs(reduced[np.flatnonzero(z[:total] > 1e-9)]).max(initial=0.0) > 1e-7 * scale:
        raise NumericalError("complementary slackness violated")
    gap = abs(float(cost[:total] @ z[:total]) - float(duals @ rhs))
    if gap > 1e-7 * scale * max(1.0, float(np.abs(rhs).max(initial=0.0))):
        raise NumericalError("duality gap not closed")


def _qp_rows(qp: QuadraticProgram) -> tuple[np.ndarray, np.ndarray]:
    n = qp.c.shape[0]
    rows = []
    rhs = []
    for a, b in qp.constraints:
        rows.append(a)
        rhs.append(b)
    if qp.lower_bounds is not None:
        for i in range(n):
            if math.isfinite(qp.lower_bounds[i]):
                e = np.zeros(n)
                e[i] = 1.0
                rows.append(e)
                rhs.append(float(qp.lower_bounds[i]))
    if qp.upper_bounds is not None:
        for i in range(n):
            if math.isfinite(qp.upper_bounds[i]):
                e = np.zeros(n)
                e[i] = -1.0
                rows.append(e)
                rhs.append(-float(qp.upper_bounds[i]))
    if rows:
        return np.array(rows), np.array(rhs)
    return np.zeros((0, n)), np.zeros(0)


def _qp_feasible_start(rows: np.ndarray, rhs: np.ndarray, n: int) -> np.ndarray:
    # Synthetic box keeps phase 1 bounded; sized from the data so the tableau
    # stays well scaled, and generous enough to never bind at the optimum.
    box = 1e4 * max(1.0, float(np.abs(rhs).max(initial=0.0)))
    lp = LinearProgram(
        objective=np.zeros(n),
        constraints=[(rows[k], float(rhs[k])) for k in range(rows.shape[0])],
        lower_bounds=np.full(n, -box),
        upper_bounds=np.full(n, box),
    )
    return solve_lp(lp)


def solve_qp(qp: QuadraticProgram, *, max_iterations: int | None = None) -> np.ndarray:
    """Minimizer of a convex QP by a primal active-set method; the
    unconstrained case solves the normal equations directly.  The returned
    point satisfies the KKT conditions to 1e-8."""
    n = qp.c.shape[0]
    rows, rhs = _qp_rows(qp)
    m = rows.shape[0]
    if m == 0:
        try:
            x = np.linalg.solve(qp.Q, -qp.c)
        except np.linalg.LinAlgError:
            x, *_ = np.linalg.lstsq(qp.Q, -qp.c, rcond=None)
        _certify_qp(qp, rows, rhs, x, np.zeros(0), [])
        return x

    x = _qp_feasible_start(rows, rhs, n)
    working = [k for k in range(m) if abs(float(rows[k] @ x) - rhs[k]) <= 1e-9]
    # Keep the working set linearly independent.
    if working:
        keep: list[int] = []
        for k in working:
            trial = rows[keep + [k]]
            if np.linalg.matrix_rank(trial, tol=1e-10) == len(keep) + 1:
                keep.append(k)
        working = keep

    limit = max_iterations if max_iterations is not None else 100 * (m + 2)
    lam = np.zeros(len(working))
    for _ in range(limit):
        g = qp.Q @ x + qp.c
        k = len(working)
        kkt = np.zeros((n + k, n + k))
        kkt[:n, :n] = qp.Q
        if k:
            aw = rows[working]
            kkt[:n, n:] = aw.T
            kkt[n:, :n] = aw
        rhs_vec = np.concatenate([-g, np.zeros(k)])
        try:
            sol = np.linalg.solve(kkt, rhs_vec)
        except np.linalg.LinAlgError:
            sol, *_ = np.linalg.lstsq(kkt, rhs_vec, rcond=None)
        d = sol[:n]
        # Stationarity is Q(x+d) + c - A_W^T lam = 0; the symmetric KKT block
        # [[Q, A_W^T], [A_W, 0]] therefore returns the negated multipliers.
        lam = -sol[n:]
        if np.abs(d).max(initial=0.0) <= 1e-11:
            if k == 0 or lam.min(initial=0.0) >= -1e-9:
                _certify_qp(qp, rows, rhs, x, lam, working)
                return x
            drop = int(np.argmin(lam))
            working.pop(drop)
            continue
        step = 1.0
        blocking = -1
        for r in range(m):
            if r in working:
                continue
            ad = float(rows[r] @ d)
            if ad < -1e-12:
                limit_r = (float(rows[r] @ x) - rhs[r]) / (-ad)
                if limit_r < step - 1e-14:
                    step = max(limit_r, 0.0)
                    blocking = r
        x = x + step * d
        if blocking >= 0 and step < 1.0:
            working.append(blocking)
    raise NumericalError("active-set iteration limit exceeded")


def _certify_qp(qp, rows, rhs, x, lam, working) -> None:
    scale = 1.0 + float(np.abs(x).max(initial=0.0)) + float(np.abs(qp.c).max(initial=0.0))
    stationarity = qp.Q @ x + qp.c
    for idx, k in enumerate(working):
        stationarity = stationarity - lam[idx] * rows[k]
    if np.abs(stationarity).max(initial=0.0) > 1e-8 * scale:
        raise NumericalError("KKT stationarity residual too large")
    for r in range(rows.shape[0]):
        slack = float(rows[r] @ x) - rhs[r]
        if slack < -1e-8 * scale:
            raise NumericalError("QP primal feasibility violated")
    for idx, k in enumerate(working):
        if lam[idx] < -1e-8 * scale:
            raise NumericalError("negative multiplier at claimed optimum")
        slack = float(rows[k] @ x) - rhs[k]
        if abs(lam[idx] * slack) > 1e-8 * scale:
            raise NumericalError("complementary slackness violated")

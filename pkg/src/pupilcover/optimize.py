"""Optimizers over pupil configurations.

Two families: fixed centers (iterate per-disk enlargements, then re-solve a
linear or quadratic program over the pupil radii until the summed radii stop
shrinking) and fixed radii (relocate centers by least squares toward the
current witness points).  A grid exhaustive search provides an approximation
baseline with an additive error bound of (pupil count) * (grid step).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .apollonius import vertex_sets
from .coverage import decide, per_disk_alpha
from .geom import TOL, Point, Pupil, PupilConfig, build_acs
from .solver import LinearProgram, QuadraticProgram, solve_lp, solve_qp


class IterationLimit(Exception):
    """The radius loop hit its iteration budget before converging."""

    def __init__(self, message: str, trace: "OptimizerTrace | None" = None):
        super().__init__(message)
        self.trace = trace


class SearchSpaceTooLarge(Exception):
    """The radius grid has too many points to enumerate."""


@dataclass(frozen=True)
class OptimizerConfig:
    epsilon: float = 1e-7           # radius-sum improvement below this stops the loop
    theta: float = 0.05             # exhaustive-search grid step
    max_iterations: int = 100
    min_radius: float = 0.0
    max_radius: float | None = None
    forbid_overlap: bool = False
    relocation_iterations: int = 25
    gauge: str = "fix_centroid"     # or "fix_first_center"

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.theta <= 0:
            raise ValueError("theta must be positive")
        if self.min_radius < 0:
            raise ValueError("min_radius must be nonnegative")
        if self.max_radius is not None and self.max_radius < self.min_radius:
            raise ValueError("max_radius below min_radius")
        if self.gauge not in ("fix_centroid", "fix_first_center"):
            raise ValueError(f"unknown gauge {self.gauge!r}")


@dataclass
class TraceEntry:
    sum_of_radii: float
    total_area: float
    covered: bool


@dataclass
class OptimizerTrace:
    iterations: list[TraceEntry]
    final_config: PupilConfig
    warning: str | None = None


def _entry(cfg: PupilConfig, covered: bool) -> TraceEntry:
    radii = cfg.radii
    return TraceEntry(
        sum_of_radii=float(sum(radii)),
        total_area=float(math.pi * sum(r * r for r in radii)),
        covered=covered,
    )


def _radius_constraints(cfg: PupilConfig, alphas, opts: OptimizerConfig):
    """Rows of the radius program: every constrained pair (i, j) needs
    new_rho_i + new_rho_j >= current pair radius + its enlargement; plus the
    optional no-overlap rows new_rho_i + new_rho_j <= |c_i - c_j|."""
    n = cfg.n
    radii = cfg.radii
    rows: list[tuple[np.ndarray, float]] = []
    for (i, j), a in sorted(alphas.items()):
        if a is None:
            continue
        e = np.zeros(n)
        e[i] += 1.0
        e[j] += 1.0
        rows.append((e, radii[i] + radii[j] + a))
    if opts.forbid_overlap:
        centers = cfg.centers
        for i in range(n):
            for j in range(i + 1, n):
                e = np.zeros(n)
                e[i] = -1.0
                e[j] = -1.0
                rows.append((e, -centers[i].distance_to(centers[j])))
    return rows


def _fixed_center_loop(cfg: PupilConfig, opts: OptimizerConfig, objective: str) -> OptimizerTrace:
    n = cfg.n
    entries: list[TraceEntry] = []
    current = cfg
    pending = _entry(current, covered=False)
    converged = False
    for iteration in range(1, opts.max_iterations + 1):
        alphas = per_disk_alpha(current)
        worst = max((a for a in alphas.values() if a is not None), default=-math.inf)
        pending.covered = worst <= TOL
        entries.append(pending)

        rows = _radius_constraints(current, alphas, opts)
        lb = np.full(n, opts.min_radius)
        ub = None if opts.max_radius is None else np.full(n, opts.max_radius)
        if objective == "sum":
            rho = solve_lp(LinearProgram(np.ones(n), rows, lb, ub))
        else:
            rho = solve_qp(QuadraticProgram(2.0 * math.pi * np.eye(n), np.zeros(n), rows, lb, ub))
        err = float(sum(current.radii)) - float(rho.sum())
        current = current.with_radii(np.maximum(rho, 0.0))
        pending = _entry(current, covered=False)
        # The stop test is suppressed on the very first pass so that a
        # non-covering start is first inflated to feasibility.
        if iteration >= 2 and err < opts.epsilon:
            converged = True
            break
    pending.covered = decide(current)[0]
    entries.append(pending)
    trace = OptimizerTrace(entries, current)
    if not converged:
        raise IterationLimit(
            f"no convergence within {opts.max_iterations} iterations", trace
        )
    return trace


def minimize_sum_radii(cfg: PupilConfig, opts: OptimizerConfig | None = None) -> OptimizerTrace:
    """Shrink the summed pupil radii, centers fixed, while keeping the
    objective covered.  Each pass recomputes the per-disk enlargements on the
    current radii and re-solves the linear program over the new radii; the
    loop stops once the improvement drops below epsilon (never on the first
    pass).  The final configuration always covers."""
    return _fixed_center_loop(cfg, opts or OptimizerConfig(), "sum")


def minimize_area(cfg: PupilConfig, opts: OptimizerConfig | None = None) -> OptimizerTrace:
    """Same loop as minimize_sum_radii with the quadratic total-area
    objective pi * sum(rho^2)."""
    return _fixed_center_loop(cfg, opts or OptimizerConfig(), "area")


def relocation_targets(cfg: PupilConfig) -> list[tuple[int, int, Point]]:
    """Rows of the relocation least-squares problem: one (i, j, witness)
    triple per off-diagonal pair label owning the witness.  Labels of merged
    equal-radius disks share the representative's witnesses; strictly smaller
    merged labels have empty cells and contribute nothing."""
    acs = build_acs(cfg)
    vsets = vertex_sets(acs, cfg.objective_radius)
    rows: list[tuple[int, int, Point]] = []
    for k, disk in enumerate(acs.disks):
        pts = [p for p, _ in vsets[k].points]
        if not pts:
            continue
        for (i, j) in disk.labels():
            if i == j:
                continue  # difference of a center with itself carries no gradient
            if cfg.pupils[i].radius + cfg.pupils[j].radius < disk.radius - 1e-12:
                continue
            for p in pts:
                rows.append((i, j, p))
    return rows


def relocation_objective(cfg: PupilConfig, rows: list[tuple[int, int, Point]]) -> float:
    """Sum of squared residuals |(c_i - c_j) - witness|^2 for given rows."""
    centers = cfg.centers
    total = 0.0
    for i, j, p in rows:
        dx = centers[i].x - centers[j].x - p.x
        dy = centers[i].y - centers[j].y - p.y
        total += dx * dx + dy * dy
    return total


def _solve_relocation(cfg: PupilConfig, rows, gauge: str) -> list[Point]:
    n = cfg.n
    m = len(rows)
    a = np.zeros((m, n))
    t = np.zeros((m, 2))
    for r, (i, j, p) in enumerate(rows):
        a[r, i] += 1.0
        a[r, j] -= 1.0
        t[r, 0] = p.x
        t[r, 1] = p.y
    centers = np.array([[c.x, c.y] for c in cfg.centers])
    if gauge == "fix_first_center":
        # Pin center 0; reduce to the remaining columns.
        reduced = a[:, 1:]
        rhs = t - np.outer(a[:, 0], centers[0])
        sol, *_ = np.linalg.lstsq(reduced, rhs, rcond=None)
        new = np.vstack([centers[0], sol])
    else:
        # Pin the centroid: substitute the last center by (sum - others).
        total = centers.sum(axis=0)
        reduced = a[:, :-1] - a[:, -1:]
        rhs = t - np.outer(a[:, -1], total)
        sol, *_ = np.linalg.lstsq(reduced, rhs, rcond=None)
        last = total - sol.sum(axis=0)
        new = np.vstack([sol, last])
    return [Point(float(x), float(y)) for x, y in new]


def move_pupils(cfg: PupilConfig, opts: OptimizerConfig | None = None) -> OptimizerTrace:
    """Relocate the pupils, radii fixed, toward positions whose difference
    disks recapture the current witness points: each pass minimizes the
    summed squared distances between center differences and witnesses (a
    convex least squares whose row targets are the witnesses), with one gauge
    constraint because the objective depends only on center differences.

    Coverage is not guaranteed; the trace records it per pass.  When no pass
    produces an informative row the configuration is returned unchanged with
    a warning."""
    opts = opts or OptimizerConfig()
    current = cfg
    entries = [_entry(current, covered=decide(current)[0])]
    warning = None
    for _ in range(opts.relocation_iterations):
        rows = relocation_targets(current)
        if not rows:
            warning = "no off-diagonal witness rows; centers left unchanged"
            break
        current = current.with_centers(_solve_relocation(current, rows, opts.gauge))
        entries.append(_entry(current, covered=decide(current)[0]))
    return OptimizerTrace(entries, current, warning)


def _compositions(total: int, parts: int, cap: int):
    """Vectors of ``parts`` integers in [0, cap] summing to ``total``, in
    lexicographic order."""
    if parts == 1:
        if 0 <= total <= cap:
            yield (total,)
        return
    for head in range(0, min(cap, total) + 1):
        for rest in _compositions(total - head, parts - 1, cap):
            yield (head,) + rest


def exhaustive_search(centers: list[Point], radius: float,
                      opts: OptimizerConfig | None = None) -> PupilConfig:
    """Smallest-sum covering configuration with radii restricted to integer
    multiples of theta, centers fixed.  Vectors are enumerated in
    nondecreasing-sum order (lexicographic within a sum level, so ties break
    to the lexicographically smallest vector); the first covering one is the
    grid optimum, and the continuous optimum is at least its sum minus
    n * theta."""
    opts = opts or OptimizerConfig()
    n = len(centers)
    if n < 1:
        raise ValueError("need at least one center")
    theta = opts.theta
    cap = int(math.ceil(radius / (2.0 * theta) - 1e-9))
    if float(cap + 1) ** n > 1e8:
        raise SearchSpaceTooLarge(
            f"{(cap + 1) ** n} grid points exceed the 1e8 enumeration guard"
        )
    for total in range(0, n * cap + 1):
        for multiples in _compositions(total, n, cap):
            cfg = PupilConfig(
                [Pupil(c, m * theta) for c, m in zip(centers, multiples)], radius
            )
            if decide(cfg)[0]:
                return cfg
    raise RuntimeError("grid search exhausted without a cover")  # unreachable: cap covers alone

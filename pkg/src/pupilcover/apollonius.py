"""Additively weighted proximity structure over the ACS disks.

Only the pieces the covering algorithms need are built: pairwise bisectors,
points at equal additive distance to three disks, and per-disk witness sets
(vertices inside the objective plus cell-boundary crossings of its rim).
Construction is brute force over disk triples and pairs, which is robust and
fast at the scales this library targets (a few hundred disks at most).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Literal

import numpy as np

from .geom import TOL, Acs, Disk, Point, delta, delta_min

WitnessKind = Literal["interior_vertex", "boundary_crossing"]


class ConcentricDisks(ValueError):
    """Raised when a bisector of two concentric disks is requested."""


class EmptyBisector(ValueError):
    """Raised when one disk additively dominates the other, so no point is
    equidistant to both (center distance <= radius difference)."""


class DegenerateTriple(ValueError):
    """Raised when three disks admit no isolated equal-distance point
    (e.g. equal radii with collinear centers)."""


@dataclass(frozen=True)
class Bisector:
    """One branch of the equal-additive-distance locus of two disks.

    In the canonical frame the disk centers sit at (-c, 0) and (+c, 0) with
    c = half the center distance.  For distinct radii the locus is the
    hyperbola branch x^2/a^2 - y^2/(c^2 - a^2) = 1 with semi-axis
    a = |radius difference| / 2, bent around the smaller disk; for equal
    radii it degenerates to the perpendicular bisector line (a = 0).
    """

    disk_a: int
    disk_b: int
    semi_axis: float            # a
    focal_half_distance: float  # c
    eccentricity: float | None  # c / a, None for the line case
    mid: Point                  # frame origin (midpoint of the centers)
    axis: tuple[float, float]   # unit vector from center a toward center b
    branch_sign: int            # -1: branch on the a side, +1: on the b side

    @property
    def is_line(self) -> bool:
        return self.semi_axis == 0.0

    def point(self, t: float) -> Point:
        ux, uy = self.axis
        vx, vy = -uy, ux
        if self.is_line:
            return Point(self.mid.x + t * vx, self.mid.y + t * vy)
        a = self.semi_axis
        b = math.sqrt(self.focal_half_distance**2 - a**2)
        cx = self.branch_sign * a * math.cosh(t)
        cy = b * math.sinh(t)
        return Point(self.mid.x + cx * ux + cy * vx, self.mid.y + cx * uy + cy * vy)

    def abscissa(self, t: float) -> float:
        """Canonical-frame x coordinate of ``point(t)``."""
        if self.is_line:
            return 0.0
        return self.branch_sign * self.semi_axis * math.cosh(t)


def bisector(acs: Acs, a: int, b: int) -> Bisector:
    """Bisector of two ACS disks (a hyperbola branch, or a line for equal
    radii).  Raises ConcentricDisks for coincident centers and EmptyBisector
    when one disk additively dominates the other."""
    da, db = acs.disks[a], acs.disks[b]
    dx = db.center.x - da.center.x
    dy = db.center.y - da.center.y
    dist = math.hypot(dx, dy)
    if dist <= TOL:
        raise ConcentricDisks(f"disks {a} and {b} are concentric")
    semi = abs(db.radius - da.radius) / 2.0
    half = dist / 2.0
    if semi >= half:
        raise EmptyBisector(f"disk pair ({a}, {b}) has no equidistant point")
    mid = Point((da.center.x + db.center.x) / 2.0, (da.center.y + db.center.y) / 2.0)
    axis = (dx / dist, dy / dist)
    if da.radius == db.radius:
        return Bisector(a, b, 0.0, half, None, mid, axis, -1)
    sign = -1 if da.radius < db.radius else 1
    return Bisector(a, b, semi, half, half / semi, mid, axis, sign)


def bisector_point(bis: Bisector, t: float) -> Point:
    """Point on the branch at parameter ``t``; t = 0 is the apex (the point
    of minimal additive distance on the bisector) and the map is continuous
    and injective in t."""
    return bis.point(t)


def _polish_vertex(x: float, y: float, r: float, cs, rs) -> tuple[float, float, float] | None:
    """Newton-refine an equal-distance candidate to residual <= 1e-12 on
    |x - c_k| - rho_k - r = 0 for all three disks.  Returns None when the
    iteration cannot converge (spurious root of the squared system)."""
    for _ in range(40):
        ds = [math.hypot(x - c[0], y - c[1]) for c in cs]
        if min(ds) <= 1e-12:
            return None
        f = [ds[k] - rs[k] - r for k in range(3)]
        res = max(abs(v) for v in f)
        if res <= 1e-13:
            break
        # Rows of the Jacobian: (unit vector from center, -1).
        j = [((x - cs[k][0]) / ds[k], (y - cs[k][1]) / ds[k], -1.0) for k in range(3)]
        det = (
            j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1])
            - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
            + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0])
        )
        if abs(det) <= 1e-14:
            return None
        # Cramer solve of J * step = f.
        def rep(col: int) -> float:
            m = [list(j[0]), list(j[1]), list(j[2])]
            for row in range(3):
                m[row][col] = f[row]
            return (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )

        sx, sy, sr = rep(0) / det, rep(1) / det, rep(2) / det
        x, y, r = x - sx, y - sy, r - sr
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(r)):
            return None
    ds = [math.hypot(x - c[0], y - c[1]) for c in cs]
    if max(abs(ds[k] - rs[k] - r) for k in range(3)) > 1e-9:
        return None
    return x, y, r


def tri_disk_vertices(d1: Disk, d2: Disk, d3: Disk, *, tol: float = TOL) -> list[tuple[Point, float]]:
    """All points at equal additive distance r to three disks, with that
    common value (r may be negative when the point lies inside the disks).

    Subtracting the squared distance equations pairwise leaves two linear
    equations in (x, y, r); the solution line is parametrized and substituted
    into one quadratic, and each real root is Newton-polished.  Returns 0, 1
    or 2 solutions; raises DegenerateTriple when no isolated solution exists.
    """
    cs = [(d.center.x, d.center.y) for d in (d1, d2, d3)]
    rs = [d.radius for d in (d1, d2, d3)]
    for a, b in ((0, 1), (0, 2), (1, 2)):
        if math.hypot(cs[a][0] - cs[b][0], cs[a][1] - cs[b][1]) <= tol:
            raise DegenerateTriple("two of the disks are concentric")

    g = [cs[k][0] ** 2 + cs[k][1] ** 2 - rs[k] ** 2 for k in range(3)]
    a1 = (2.0 * (cs[1][0] - cs[0][0]), 2.0 * (cs[1][1] - cs[0][1]), 2.0 * (rs[1] - rs[0]))
    a2 = (2.0 * (cs[2][0] - cs[0][0]), 2.0 * (cs[2][1] - cs[0][1]), 2.0 * (rs[2] - rs[0]))
    b1, b2 = g[1] - g[0], g[2] - g[0]

    # Null direction of the 2x3 system via the cross product of its rows.
    nx = a1[1] * a2[2] - a1[2] * a2[1]
    ny = a1[2] * a2[0] - a1[0] * a2[2]
    nz = a1[0] * a2[1] - a1[1] * a2[0]
    norm1 = math.sqrt(a1[0] ** 2 + a1[1] ** 2 + a1[2] ** 2)
    norm2 = math.sqrt(a2[0] ** 2 + a2[1] ** 2 + a2[2] ** 2)
    if math.sqrt(nx * nx + ny * ny + nz * nz) <= 1e-10 * norm1 * norm2:
        raise DegenerateTriple("rank-deficient equal-distance system")

    # Particular solution: pin the unknown matching the largest null component
    # (its 2x2 minor is the best conditioned).
    ax, ay, az = abs(nx), abs(ny), abs(nz)
    if az >= ax and az >= ay:
        p0 = ((b1 * a2[1] - b2 * a1[1]) / nz, (a1[0] * b2 - a2[0] * b1) / nz, 0.0)
    elif ay >= ax:
        det = -ny
        p0 = ((b1 * a2[2] - b2 * a1[2]) / det, 0.0, (a1[0] * b2 - a2[0] * b1) / det)
    else:
        p0 = (0.0, (b1 * a2[2] - b2 * a1[2]) / nx, (a1[1] * b2 - a2[1] * b1) / nx)

    # Substitute the line p0 + lam*n into |p - c1|^2 = (rho1 + r)^2.
    dx, dy = p0[0] - cs[0][0], p0[1] - cs[0][1]
    rr = rs[0] + p0[2]
    qa = nx * nx + ny * ny - nz * nz
    qb = 2.0 * (dx * nx + dy * ny - rr * nz)
    qc = dx * dx + dy * dy - rr * rr

    lams: list[float] = []
    scale = abs(qb) + abs(qc) + 1.0
    if abs(qa) <= 1e-14 * scale:
        if abs(qb) > 1e-14 * scale:
            lams.append(-qc / qb)
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc >= -1e-12 * scale * scale:
            sq = math.sqrt(max(disc, 0.0))
            lams.extend(((-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)))

    out: list[tuple[Point, float]] = []
    for lam in lams:
        seed = (p0[0] + lam * nx, p0[1] + lam * ny, p0[2] + lam * nz)
        polished = _polish_vertex(*seed, cs, rs)
        if polished is None:
            continue
        x, y, r = polished
        if any(abs(x - ox) <= 1e-9 and abs(y - oy) <= 1e-9 and abs(r - orr) <= 1e-9
               for (ox, oy), orr in [((p.x, p.y), pr) for p, pr in out]):
            continue
        out.append((Point(x, y), r))
    out.sort(key=lambda pr: (pr[1], pr[0].x, pr[0].y))
    return out


def is_global_vertex(acs: Acs, x: Point, r: float, *, tol: float = TOL) -> bool:
    """True when no disk of the ACS is strictly closer to ``x`` than the
    claimed common distance ``r`` (tolerance-inclusive)."""
    return delta_min(acs, x)[0] >= r - tol


def _rim_profile(acs: Acs, radius: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Additive distance of every disk to a uniform angle grid on the rim:
    (angles, matrix of shape (disks, samples))."""
    thetas = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    px = radius * np.cos(thetas)
    py = radius * np.sin(thetas)
    c = acs.centers_array()
    vals = np.hypot(px[None, :] - c[:, None, 0], py[None, :] - c[:, None, 1])
    return thetas, vals - acs.radii_array()[:, None]


def _pair_rim_roots(acs: Acs, a: int, b: int, radius: float,
                    thetas: np.ndarray, row: np.ndarray) -> list[float]:
    """Angles where the distance difference of disks a and b changes sign on
    the rim, refined by bisection.  ``row`` holds the grid values of the
    difference; crossings closer than one grid step can be missed, which is
    the documented fidelity limit."""
    da, db = acs.disks[a], acs.disks[b]

    def f(theta: float) -> float:
        x, y = radius * math.cos(theta), radius * math.sin(theta)
        fa = math.hypot(x - da.center.x, y - da.center.y) - da.radius
        fb = math.hypot(x - db.center.x, y - db.center.y) - db.radius
        return fa - fb

    m = thetas.shape[0]
    step = 2.0 * math.pi / m
    nxt = np.roll(row, -1)
    exact = np.abs(row) <= 1e-15
    bracket = (~exact) & (row * nxt < 0.0)
    roots = [float(thetas[k]) for k in np.flatnonzero(exact)]
    for k in np.flatnonzero(bracket):
        lo, hi, flo = float(thetas[k]), float(thetas[k]) + step, float(row[k])
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            fm = f(mid)
            if abs(fm) <= 1e-15 or (hi - lo) <= 1e-14:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return roots


def boundary_crossings(acs: Acs, a: int, b: int, radius: float, *,
                       samples: int = 720, tol: float = TOL) -> list[Point]:
    """Points of the objective rim (|x| = radius) where disks ``a`` and ``b``
    are at equal additive distance and that distance is the global minimum.

    The difference of the two distance functions is scanned over a uniform
    angle grid for sign changes and each bracket is bisected to tolerance.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    thetas, profile = _rim_profile(acs, radius, samples)
    roots = _pair_rim_roots(acs, a, b, radius, thetas, profile[a] - profile[b])
    out: list[Point] = []
    for theta in roots:
        pt = Point(radius * math.cos(theta), radius * math.sin(theta))
        dmin, _ = delta_min(acs, pt)
        if delta(acs.disks[a], pt) <= dmin + tol and delta(acs.disks[b], pt) <= dmin + tol:
            out.append(pt)
    out.sort(key=lambda p: math.atan2(p.y, p.x))
    return out


@dataclass(frozen=True)
class VertexSet:
    """Witness points owned by one ACS disk: equal-distance vertices inside
    the objective plus crossings of its cell boundary with the objective rim."""

    disk: int
    points: tuple[tuple[Point, WitnessKind], ...]


def _owners(acs: Acs, pt: Point, tol: float) -> tuple[list[int], float]:
    c = acs.centers_array()
    vals = np.hypot(c[:, 0] - pt.x, c[:, 1] - pt.y) - acs.radii_array()
    dmin = float(vals.min())
    return [int(k) for k in np.flatnonzero(vals <= dmin + tol)], dmin


def vertex_sets(acs: Acs, radius: float, *, samples: int = 720, tol: float = TOL) -> list[VertexSet]:
    """Witness sets for every ACS disk: enumerate all disk triples for
    equal-distance vertices, keep those that are global minima inside the
    objective, add rim crossings for all pairs, and assign each point to
    every disk attaining the minimum there.  Points exactly on the rim are
    classified as boundary crossings.  Output order is canonical (disk index,
    then angle)."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    m = acs.size
    centers = acs.centers_array()
    radii = acs.radii_array()

    # A common equal-distance point needs every pairwise bisector to be
    # nonempty, so additively dominated pairs prune their triples.
    dx = centers[:, None, 0] - centers[None, :, 0]
    dy = centers[:, None, 1] - centers[None, :, 1]
    dist = np.hypot(dx, dy)
    pair_ok = (dist > np.abs(radii[:, None] - radii[None, :])) & (dist > tol)

    found: list[tuple[Point, float]] = []
    for a, b, c in combinations(range(m), 3):
        if not (pair_ok[a, b] and pair_ok[a, c] and pair_ok[b, c]):
            continue
        try:
            sols = tri_disk_vertices(acs.disks[a], acs.disks[b], acs.disks[c], tol=tol)
        except DegenerateTriple:
            continue
        for pt, r in sols:
            if pt.norm() <= radius + tol and is_global_vertex(acs, pt, r, tol=tol):
                found.append((pt, r))

    per_disk: list[list[tuple[Point, WitnessKind]]] = [[] for _ in range(m)]

    def add(disk: int, pt: Point, kind: WitnessKind) -> None:
        bucket = per_disk[disk]
        for idx, (old, old_kind) in enumerate(bucket):
            if abs(old.x - pt.x) <= 1e-8 and abs(old.y - pt.y) <= 1e-8:
                if kind == "boundary_crossing" and old_kind == "interior_vertex":
                    bucket[idx] = (old, "boundary_crossing")
                return
        bucket.append((pt, kind))

    for pt, r in found:
        kind: WitnessKind = (
            "boundary_crossing" if abs(pt.norm() - radius) <= tol else "interior_vertex"
        )
        owners, _ = _owners(acs, pt, tol)
        for k in owners:
            add(k, pt, kind)

    thetas, profile = _rim_profile(acs, radius, samples)
    for a in range(m):
        for b in range(a + 1, m):
            if not pair_ok[a, b]:
                continue
            for theta in _pair_rim_roots(acs, a, b, radius, thetas, profile[a] - profile[b]):
                pt = Point(radius * math.cos(theta), radius * math.sin(theta))
                dmin, _ = delta_min(acs, pt)
                if delta(acs.disks[a], pt) <= dmin + tol and delta(acs.disks[b], pt) <= dmin + tol:
                    owners, _ = _owners(acs, pt, tol)
                    for k in owners:
                        add(k, pt, "boundary_crossing")

    out = []
    for k in range(m):
        pts = sorted(per_disk[k], key=lambda pk: (math.atan2(pk[0].y, pk[0].x), pk[0].norm()))
        out.append(VertexSet(k, tuple(pts)))
    return out

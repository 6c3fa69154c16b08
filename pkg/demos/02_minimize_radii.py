#!/usr/bin/env python3
"""Shrink pupil radii with the iterated linear program (sum of radii) and
its quadratic variant (total area), centers fixed."""

import numpy as np

from pupilcover import OptimizerConfig, Point, Pupil, PupilConfig, minimize_area, minimize_sum_radii

rng = np.random.default_rng(7)
pupils = [
    Pupil(Point(float(rng.uniform(-0.7, 0.7)), float(rng.uniform(-0.7, 0.7))),
          float(rng.uniform(0.05, 0.35)))
    for _ in range(5)
]
cfg = PupilConfig(pupils, objective_radius=1.0)
print("initial radii:", np.round(cfg.radii, 3), " sum:", round(sum(cfg.radii), 4))

trace = minimize_sum_radii(cfg)
print("\nsum-of-radii loop:")
for k, e in enumerate(trace.iterations):
    print(f"  pass {k:2d}: sum = {e.sum_of_radii:.5f}  area = {e.total_area:.5f}  covered = {e.covered}")
print("final radii:", np.round(trace.final_config.radii, 4))

area_trace = minimize_area(cfg, OptimizerConfig(epsilon=1e-6))
print(f"\ntotal-area loop: {len(area_trace.iterations) - 1} passes, "
      f"area {area_trace.iterations[0].total_area:.4f} -> {area_trace.iterations[-1].total_area:.4f}, "
      f"covered = {area_trace.iterations[-1].covered}")

# A no-overlap variant keeps the pupils disjoint while still covering.
no_overlap = minimize_sum_radii(
    PupilConfig(
        [Pupil(Point(0.0, 0.0), 0.3), Pupil(Point(1.4, 0.0), 0.1), Pupil(Point(0.0, 1.4), 0.1)],
        1.0,
    ),
    OptimizerConfig(forbid_overlap=True),
)
print("\nno-overlap variant final radii:", np.round(no_overlap.final_config.radii, 4))

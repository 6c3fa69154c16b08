"""pupilcover: design pupil disk sets whose pairwise difference disks cover
an objective disk centered at the origin."""

from .apollonius import (
    Bisector,
    ConcentricDisks,
    DegenerateTriple,
    EmptyBisector,
    VertexSet,
    bisector,
    bisector_point,
    boundary_crossings,
    is_global_vertex,
    tri_disk_vertices,
    vertex_sets,
)
from .coverage import (
    CoverageReport,
    NoCoverage,
    alpha_star,
    analyze,
    coverage_oracle,
    decide,
    max_objective,
    per_disk_alpha,
)
from .design import (
    DifferenceCoverSequence,
    InvalidRadius,
    NotPrime,
    PrimeDesign,
    difference_cover_sequence,
    is_prime,
    next_prime,
    prime_design,
    three_pupil_optimal,
    verify_difference_cover,
)
from .geom import (
    MERGE_TOL,
    TOL,
    Acs,
    AcsDisk,
    Disk,
    Point,
    Pupil,
    PupilConfig,
    build_acs,
    delta,
    delta_min,
    delta_min_array,
    minkowski_diff,
)
from .optimize import (
    IterationLimit,
    OptimizerConfig,
    OptimizerTrace,
    SearchSpaceTooLarge,
    TraceEntry,
    exhaustive_search,
    minimize_area,
    minimize_sum_radii,
    move_pupils,
    relocation_objective,
    relocation_targets,
)
from .solver import (
    Infeasible,
    LinearProgram,
    NumericalError,
    QuadraticProgram,
    Unbounded,
    solve_lp,
    solve_qp,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "Acs",
    "AcsDisk",
    "Bisector",
    "ConcentricDisks",
    "CoverageReport",
    "DegenerateTriple",
    "DifferenceCoverSequence",
    "Disk",
    "EmptyBisector",
    "Infeasible",
    "InvalidRadius",
    "IterationLimit",
    "LinearProgram",
    "MERGE_TOL",
    "NoCoverage",
    "NotPrime",
    "NumericalError",
    "OptimizerConfig",
    "OptimizerTrace",
    "Point",
    "PrimeDesign",
    "Pupil",
    "PupilConfig",
    "QuadraticProgram",
    "SearchSpaceTooLarge",
    "TOL",
    "TraceEntry",
    "Unbounded",
    "VertexSet",
    "alpha_star",
    "analyze",
    "bisector",
    "bisector_point",
    "boundary_crossings",
    "build_acs",
    "coverage_oracle",
    "decide",
    "delta",
    "delta_min",
    "delta_min_array",
    "difference_cover_sequence",
    "exhaustive_search",
    "is_global_vertex",
    "is_prime",
    "max_objective",
    "minimize_area",
    "minimize_sum_radii",
    "minkowski_diff",
    "move_pupils",
    "next_prime",
    "per_disk_alpha",
    "prime_design",
    "relocation_objective",
    "relocation_targets",
    "render_svg",
    "solve_lp",
    "solve_qp",
    "three_pupil_optimal",
    "tri_disk_vertices",
    "verify_difference_cover",
    "vertex_sets",
]

"""Persistent homology of relations between two finite point sets.

Given two labeled point clouds X and Y (or a precomputed cross-distance
matrix), this package builds filtered Dowker, Dowker-Rips and k-flagified
Dowker complexes on X with witnesses in Y, computes their persistence
diagrams over GF(2), and provides diagram tooling (exact bottleneck distance,
tolerance equality, log rescaling, persistence images), brute-force oracles
with a theorem checker, and a benchmark harness.
"""

from .bench import percentile_threshold, run_benchmark
from .complexes import (
    DEFAULT_CAP,
    FilteredSimplex,
    Filtration,
    WeightedGraph,
    dowker_filtration,
    dowker_rips_filtration,
    dowker_skeleton,
    flag_expansion,
    kflag_filtration,
)
from .diagrams import bottleneck, diagrams_equal, log_rescale
from .errors import InputError, RelhomError, ResourceLimitError
from .images import (
    PersistenceImageParams,
    default_image_params,
    image_to_csv,
    persistence_image,
)
from .oracles import (
    BRUTE_MAX_VERTICES,
    brute_dowker,
    brute_flagify,
    random_instance,
    verify_theorems,
)
from .persistence import (
    PersistenceDiagram,
    betti_at,
    compute_persistence,
    diagram_from_csv,
    diagram_from_json,
    diagram_to_csv,
    diagram_to_json,
    load_diagram,
)
from .relations import (
    METRICS,
    CrossDistanceMatrix,
    LabeledPointCloud,
    cross_distances,
    load_matrix,
    load_points,
    read_labeled_points,
    transpose,
    write_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BRUTE_MAX_VERTICES",
    "CrossDistanceMatrix",
    "DEFAULT_CAP",
    "FilteredSimplex",
    "Filtration",
    "InputError",
    "LabeledPointCloud",
    "METRICS",
    "PersistenceDiagram",
    "PersistenceImageParams",
    "RelhomError",
    "ResourceLimitError",
    "WeightedGraph",
    "betti_at",
    "bottleneck",
    "brute_dowker",
    "brute_flagify",
    "compute_persistence",
    "cross_distances",
    "default_image_params",
    "diagram_from_csv",
    "diagram_from_json",
    "diagram_to_csv",
    "diagram_to_json",
    "diagrams_equal",
    "dowker_filtration",
    "dowker_rips_filtration",
    "dowker_skeleton",
    "flag_expansion",
    "image_to_csv",
    "kflag_filtration",
    "load_diagram",
    "load_matrix",
    "load_points",
    "log_rescale",
    "percentile_threshold",
    "persistence_image",
    "random_instance",
    "read_labeled_points",
    "run_benchmark",
    "transpose",
    "verify_theorems",
    "write_matrix",
]

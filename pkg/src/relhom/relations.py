"""Cross-distance matrices between two labeled point sets.

The n x m matrix of distances d(x_i, y_j) is the single input every
construction downstream consumes: thresholding it at eps recovers the
relation "x_i is within eps of some witness y_j".
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import cdist

from .errors import InputError

METRICS = ("euclidean", "manhattan", "chebyshev")

# scipy spells manhattan "cityblock"
_CDIST_NAMES = {"euclidean": "euclidean", "manhattan": "cityblock", "chebyshev": "chebyshev"}


@dataclass(frozen=True)
class LabeledPointCloud:
    """Points in R^p, one string label per point."""

    points: NDArray[np.float64]
    labels: tuple[str, ...]

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise InputError(f"points must be a 2-d array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InputError("point coordinates must be finite")
        if len(self.labels) != pts.shape[0]:
            raise InputError(
                f"{len(self.labels)} labels for {pts.shape[0]} points"
            )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", tuple(self.labels))

    def select(self, label: str) -> NDArray[np.float64]:
        """Rows carrying ``label``, in file order."""
        mask = [lb == label for lb in self.labels]
        if not any(mask):
            raise InputError(f"no points carry label {label!r}")
        return self.points[np.asarray(mask)]


@dataclass(frozen=True)
class CrossDistanceMatrix:
    """Nonnegative n x m matrix of distances from X (rows) to Y (columns)."""

    entries: NDArray[np.float64] = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise InputError(f"cross-distance matrix must be 2-d and nonempty, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InputError("cross-distance entries must be finite")
        if np.any(a < 0):
            raise InputError("cross-distance entries must be nonnegative")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, CrossDistanceMatrix) and np.array_equal(
            self.entries, other.entries
        )


def cross_distances(X, Y, metric: str = "euclidean") -> CrossDistanceMatrix:
    """Pairwise distances between the point lists X and Y.

    X and Y must be nonempty and share their coordinate dimension.
    """
    if metric not in METRICS:
        raise InputError(f"unknown metric {metric!r}; choose from {METRICS}")
    ax = np.atleast_2d(np.asarray(X, dtype=float))
    ay = np.atleast_2d(np.asarray(Y, dtype=float))
    if ax.size == 0 or ay.size == 0:
        raise InputError("X and Y must be nonempty")
    if ax.shape[1] != ay.shape[1]:
        raise InputError(
            f"coordinate dimensions differ: X is {ax.shape[1]}-d, Y is {ay.shape[1]}-d"
        )
    return CrossDistanceMatrix(cdist(ax, ay, metric=_CDIST_NAMES[metric]))


def transpose(R: CrossDistanceMatrix) -> CrossDistanceMatrix:
    """Swap the roles of X and Y."""
    return CrossDistanceMatrix(R.entries.T)


def read_labeled_points(path) -> LabeledPointCloud:
    """Parse a points CSV with header ``label,c1,...,cp``."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"points file not found: {path}")
    labels: list[str] = []
    rows: list[list[float]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty points file") from None
        if len(header) < 2 or header[0].strip() != "label":
            raise InputError(f"{path}: expected header 'label,c1,...,cp', got {header!r}")
        width = len(header) - 1
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != width + 1:
                raise InputError(f"{path}:{lineno}: expected {width + 1} fields, got {len(row)}")
            try:
                coords = [float(v) for v in row[1:]]
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
            labels.append(row[0].strip())
            rows.append(coords)
    if not rows:
        raise InputError(f"{path}: no point rows")
    return LabeledPointCloud(np.array(rows, dtype=float), tuple(labels))


def load_points(path, x_label: str, y_label: str):
    """Return the (X, Y) point arrays selected by the two labels."""
    if x_label == y_label:
        raise InputError("x_label and y_label must be distinct (X and Y selections must be disjoint)")
    cloud = read_labeled_points(path)
    return cloud.select(x_label), cloud.select(y_label)


def load_matrix(path) -> CrossDistanceMatrix:
    """Parse a headerless matrix CSV: n rows of m comma-separated floats."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"matrix file not found: {path}")
    rows: list[list[float]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise InputError(f"{path}: empty matrix file")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise InputError(f"{path}: row {i + 1} has {len(r)} entries, expected {width}")
    return CrossDistanceMatrix(np.array(rows, dtype=float))


def write_matrix(path, R: CrossDistanceMatrix) -> None:
    np.savetxt(path, R.entries, delimiter=",", fmt="%.17g")

"""Persistence images: rasterized Gaussian surfaces over (birth, persistence).

Each finite diagram point (b, d) becomes an isotropic Gaussian centered at
(b, d - b), weighted either linearly in persistence or uniformly; the image
integrates the weighted sum over each grid cell by the midpoint rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import InputError
from .persistence import PersistenceDiagram

WEIGHTS = ("linear_in_persistence", "constant")


@dataclass(frozen=True)
class PersistenceImageParams:
    resolution: tuple[int, int] = (20, 20)  # (rows: persistence axis, cols: birth axis)
    bandwidth: float = 0.05
    birth_range: tuple[float, float] = (0.0, 1.0)
    pers_range: tuple[float, float] = (0.0, 1.0)
    weight: str = "linear_in_persistence"

    def __post_init__(self):
        rows, cols = self.resolution
        if rows < 1 or cols < 1:
            raise InputError(f"resolution must be >= 1 per axis, got {self.resolution}")
        if not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise InputError(f"bandwidth must be positive, got {self.bandwidth}")
        for name, (lo, hi) in (
            ("birth_range", self.birth_range),
            ("pers_range", self.pers_range),
        ):
            if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
                raise InputError(f"{name} must be a finite interval with hi > lo")
        if self.weight not in WEIGHTS:
            raise InputError(f"weight must be one of {WEIGHTS}, got {self.weight!r}")


def default_image_params(
    dgm: PersistenceDiagram,
    dim: int | None = None,
    resolution: tuple[int, int] = (20, 20),
    weight: str = "linear_in_persistence",
) -> PersistenceImageParams:
    """Ranges padded 5% around the finite points; bandwidth 0.05x the
    persistence span. Empty diagrams get unit ranges."""
    if dim is None:
        pts = [p for d in dgm.points for p in dgm.points[d]]
    else:
        pts = dgm.in_dim(dim)
    fin = [(b, d - b) for b, d in pts if math.isfinite(d)]
    if not fin:
        return PersistenceImageParams(resolution=resolution, weight=weight)
    births = [b for b, _ in fin]
    perses = [p for _, p in fin]
    b_lo, b_hi = min(births), max(births)
    p_lo, p_hi = min(0.0, min(perses)), max(perses)
    b_pad = max(0.05 * (b_hi - b_lo), 1e-3)
    p_pad = max(0.05 * (p_hi - p_lo), 1e-3)
    pers_range = (p_lo, p_hi + p_pad)
    return PersistenceImageParams(
        resolution=resolution,
        bandwidth=max(0.05 * (pers_range[1] - pers_range[0]), 1e-6),
        birth_range=(b_lo - b_pad, b_hi + b_pad),
        pers_range=pers_range,
        weight=weight,
    )


def persistence_image(
    dgm: PersistenceDiagram,
    dim: int,
    params: PersistenceImageParams,
    essential: str = "drop",
) -> NDArray[np.float64]:
    """Rasterize one homological dimension to a (rows, cols) array.

    Essential classes are dropped by default; ``essential="clamp"`` instead
    places them at the top of the persistence range.
    """
    if essential not in ("drop", "clamp"):
        raise InputError(f"essential must be 'drop' or 'clamp', got {essential!r}")
    if dim < 0:
        raise InputError(f"dimension must be >= 0, got {dim}")
    rows, cols = params.resolution
    b_lo, b_hi = params.birth_range
    p_lo, p_hi = params.pers_range
    pts: list[tuple[float, float]] = []
    for b, d in dgm.in_dim(dim):
        if math.isfinite(d):
            pts.append((b, d - b))
        elif essential == "clamp":
            pts.append((b, p_hi))
    img = np.zeros((rows, cols), dtype=float)
    if not pts:
        return img
    db = (b_hi - b_lo) / cols
    dp = (p_hi - p_lo) / rows
    cell_area = db * dp
    b_centers = b_lo + (np.arange(cols) + 0.5) * db
    p_centers = p_lo + (np.arange(rows) + 0.5) * dp
    two_s2 = 2.0 * params.bandwidth**2
    norm = 1.0 / (2.0 * math.pi * params.bandwidth**2)
    for b, p in pts:
        w = p if params.weight == "linear_in_persistence" else 1.0
        gb = np.exp(-((b_centers - b) ** 2) / two_s2)
        gp = np.exp(-((p_centers - p) ** 2) / two_s2)
        img += (w * norm * cell_area) * np.outer(gp, gb)
    return img


def image_to_csv(img: NDArray[np.float64]) -> str:
    """Row-major CSV, one grid row per line."""
    lines = [",".join(repr(float(x)) for x in row) for row in np.asarray(img)]
    return "\n".join(lines) + "\n"

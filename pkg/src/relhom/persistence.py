"""Persistent homology over GF(2) by column reduction with clearing.

Rows are indexed per dimension (a column of dimension d has rows ranging over
the dimension d-1 simplices in filtration order) and columns are stored as
arbitrary-precision integers, bit r set iff row r is present: GF(2) addition
is integer XOR and the pivot is the highest set bit. Dimensions are reduced
from high to low so that pivots found in dimension d+1 clear the matching
creator columns in dimension d before they are ever reduced.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from math import inf
from typing import Any

from .complexes import Filtration
from .errors import InputError


@dataclass
class PersistenceDiagram:
    """Per-dimension multisets of (birth, death) pairs; death may be inf."""

    points: dict[int, list[tuple[float, float]]]
    metadata: dict[str, Any] = field(default_factory=dict)

    def dims(self) -> list[int]:
        return sorted(self.points)

    def in_dim(self, dim: int) -> list[tuple[float, float]]:
        return list(self.points.get(dim, []))

    def total_points(self) -> int:
        return sum(len(v) for v in self.points.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        a = {d: sorted(v) for d, v in self.points.items() if v}
        b = {d: sorted(v) for d, v in other.points.items() if v}
        return a == b


def compute_persistence(
    F: Filtration,
    max_hom_dim: int,
    use_clearing: bool = True,
    audit: bool = False,
) -> PersistenceDiagram:
    """Persistence diagram of the filtration in dimensions 0..max_hom_dim.

    Death times in dimension d are only reliable when F.max_dim >= d + 1;
    dimensions at F.max_dim are still reported but flagged in
    metadata["truncation_affected_dims"]. Zero-persistence pairs are dropped
    unless ``audit`` is set.
    """
    if max_hom_dim < 0:
        raise InputError(f"max_hom_dim must be >= 0, got {max_hom_dim}")
    sims = F.simplices
    n_s = len(sims)
    index_of: dict[tuple[int, ...], int] = {}
    for i, s in enumerate(sims):
        index_of[s.vertices] = i
    if len(index_of) != n_s:
        raise InputError("duplicate simplices in filtration")

    d_eff = min(F.max_dim, max_hom_dim + 1)
    by_dim: dict[int, list[int]] = {d: [] for d in range(F.max_dim + 1)}
    local: list[int] = [0] * n_s  # rank of each simplex within its dimension
    vals: list[float] = [0.0] * n_s
    for i, s in enumerate(sims):
        d = len(s.vertices) - 1
        if d > F.max_dim:
            raise InputError(f"simplex {s.vertices} exceeds max_dim {F.max_dim}")
        lst = by_dim[d]
        local[i] = len(lst)
        lst.append(i)
        vals[i] = s.value

    # one validation pass: face closure, monotonicity, order consistency;
    # boundary columns (tuples of per-dimension row ranks) kept for d <= d_eff
    bcols: dict[int, list[tuple[int, ...]]] = {d: [] for d in range(1, d_eff + 1)}
    index_get = index_of.get
    for i, s in enumerate(sims):
        verts = s.vertices
        d = len(verts) - 1
        if d == 0:
            continue
        v = vals[i]
        col = []
        for facet in combinations(verts, d):
            fi = index_get(facet)
            if fi is None:
                raise InputError(f"filtration not face-closed: missing {facet}")
            if vals[fi] > v:
                raise InputError(
                    f"filtration not monotone: face {facet} after {verts}"
                )
            if fi >= i:
                raise InputError(
                    f"filtration order puts face {facet} at or after {verts}"
                )
            col.append(local[fi])
        if d <= d_eff:
            col.sort()
            bcols[d].append(tuple(col))

    killed_of: dict[int, int] = {}  # global creator index -> global killer index
    killers: set[int] = set()
    cleared: set[int] = set()  # row ranks to skip as columns one dimension down
    for d in range(d_eff, 0, -1):
        cols = bcols[d]
        col_idxs = by_dim[d]
        row_idxs = by_dim[d - 1]
        pivot_int: dict[int, int] = {}  # row rank -> reduced column bits
        pivot_col: dict[int, int] = {}  # row rank -> global column index
        skip = cleared if use_clearing else ()
        for j, rows in enumerate(cols):
            if j in skip:
                continue
            acc = 0
            for r in rows:
                acc |= 1 << r
            while acc:
                p = pivot_int.get(acc.bit_length() - 1)
                if p is None:
                    break
                acc ^= p
            if acc:
                low = acc.bit_length() - 1
                pivot_int[low] = acc
                pivot_col[low] = col_idxs[j]
        cleared = set(pivot_int)
        for row, g in pivot_col.items():
            birth = row_idxs[row]
            killed_of[birth] = g
            killers.add(g)

    points: dict[int, list[tuple[float, float]]] = {
        d: [] for d in range(max_hom_dim + 1)
    }
    for i, s in enumerate(sims):
        d = len(s.vertices) - 1
        if d > max_hom_dim or i in killers:
            continue
        j = killed_of.get(i)
        if j is None:
            points[d].append((s.value, inf))
        else:
            death = vals[j]
            if audit or death > s.value:
                points[d].append((s.value, death))
    for v in points.values():
        v.sort()

    truncated = [d for d in range(max_hom_dim + 1) if d >= F.max_dim]
    dgm = PersistenceDiagram(
        points,
        metadata={
            "kind": F.kind,
            "coefficients": "GF(2)",
            "n_vertices": F.n_vertices,
            "filtration_max_dim": F.max_dim,
            "max_hom_dim": max_hom_dim,
            "threshold": F.threshold,
            "truncation_affected_dims": truncated,
            "audit": audit,
        },
    )
    return dgm


def betti_at(dgm: PersistenceDiagram, eps: float) -> list[int]:
    """Betti numbers at scale eps, dimensions 0..max_hom_dim."""
    if math.isnan(eps) or eps < 0:
        raise InputError(f"scale must be >= 0, got {eps}")
    top = dgm.metadata.get("max_hom_dim")
    if top is None:
        top = max(dgm.points, default=0)
    return [
        sum(1 for b, d in dgm.points.get(i, []) if b <= eps < d)
        for i in range(top + 1)
    ]


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def diagram_to_csv(dgm: PersistenceDiagram) -> str:
    """CSV with header ``dim,birth,death``; inf deaths spelled ``inf``."""
    rows = []
    for d in sorted(dgm.points):
        for b, dd in sorted(dgm.points[d]):
            rows.append((d, b, dd))
    buf = io.StringIO()
    buf.write("dim,birth,death\n")
    for d, b, dd in rows:
        buf.write(f"{d},{_fmt(b)},{_fmt(dd)}\n")
    return buf.getvalue()


def diagram_from_csv(text: str) -> PersistenceDiagram:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("empty diagram file") from None
    if [h.strip().lower() for h in header] != ["dim", "birth", "death"]:
        raise InputError(f"expected header 'dim,birth,death', got {header!r}")
    points: dict[int, list[tuple[float, float]]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 3:
            raise InputError(f"line {lineno}: expected 3 fields, got {len(row)}")
        try:
            d = int(row[0])
            b = float(row[1])
            dd = float(row[2])
        except ValueError as e:
            raise InputError(f"line {lineno}: {e}") from None
        if d < 0:
            raise InputError(f"line {lineno}: negative dimension {d}")
        points.setdefault(d, []).append((b, dd))
    for v in points.values():
        v.sort()
    return PersistenceDiagram(points, metadata={"source": "csv"})


def diagram_to_json(dgm: PersistenceDiagram) -> str:
    meta = {}
    for k, v in dgm.metadata.items():
        if isinstance(v, float) and math.isinf(v):
            v = "inf"
        meta[k] = v
    payload = {
        "metadata": meta,
        "diagrams": [
            {
                "dim": d,
                "points": [
                    [b, "inf" if math.isinf(dd) else dd]
                    for b, dd in sorted(dgm.points[d])
                ],
            }
            for d in sorted(dgm.points)
        ],
    }
    return json.dumps(payload, indent=2)


def diagram_from_json(text: str) -> PersistenceDiagram:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad diagram JSON: {e}") from None
    if not isinstance(payload, dict) or "diagrams" not in payload:
        raise InputError("diagram JSON must be an object with a 'diagrams' list")
    points: dict[int, list[tuple[float, float]]] = {}
    for entry in payload["diagrams"]:
        d = int(entry["dim"])
        pts = []
        for pair in entry["points"]:
            if len(pair) != 2:
                raise InputError(f"bad point {pair!r} in dimension {d}")
            b, dd = pair
            b = float(b)
            dd = inf if dd == "inf" else float(dd)
            pts.append((b, dd))
        pts.sort()
        points[d] = pts
    meta = payload.get("metadata", {})
    if isinstance(meta.get("threshold"), str):
        meta["threshold"] = float(meta["threshold"])
    return PersistenceDiagram(points, metadata=meta)


def load_diagram(path: str) -> PersistenceDiagram:
    """Read a diagram file, sniffing CSV vs JSON from the content."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return diagram_from_json(text)
    return diagram_from_csv(text)

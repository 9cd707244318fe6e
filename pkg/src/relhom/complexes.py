"""Filtered Dowker, Dowker-Rips and k-flagified Dowker complexes.

All three constructions assign each simplex its exact appearance value:

* Dowker: value(sigma) = min over columns j of (max over i in sigma of R[i, j]),
  i.e. the smallest eps at which some witness column relates to every vertex.
* Dowker-Rips: the flag expansion of the Dowker 1-skeleton; a simplex appears
  when its last edge does.
* k-flagification: simplices of dimension < k keep their Dowker value; a
  simplex of dimension >= k appears when the last of its (k-1)-dimensional
  faces appears in the Dowker filtration.

Sublevel sets of the returned filtrations therefore agree with the
set-theoretic definitions at every threshold, which is what the brute-force
oracles check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, inf
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from .errors import InputError, ResourceLimitError
from .relations import CrossDistanceMatrix

DEFAULT_CAP = 2_000_000


class FilteredSimplex(NamedTuple):
    """A simplex (strictly increasing vertex indices) with its appearance value."""

    vertices: tuple[int, ...]
    value: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


def _check_simplex(s: FilteredSimplex) -> None:
    if not s.vertices:
        raise InputError("simplex has no vertices")
    if any(a >= b for a, b in zip(s.vertices, s.vertices[1:])):
        raise InputError(f"vertices not strictly increasing: {s.vertices}")
    if not (s.value >= 0 and math.isfinite(s.value)):
        raise InputError(f"simplex value must be finite and >= 0, got {s.value}")


def _sort_simplices(sims: list[FilteredSimplex]) -> list[FilteredSimplex]:
    """Canonical total order: (value, dimension, lexicographic vertices)."""
    if len(sims) < 20_000:
        return sorted(sims, key=lambda s: (s.value, len(s.vertices), s.vertices))
    # numpy lexsort path for large filtrations
    width = max(len(s.vertices) for s in sims)
    vals = np.fromiter((s.value for s in sims), dtype=float, count=len(sims))
    dims = np.fromiter((len(s.vertices) for s in sims), dtype=np.int64, count=len(sims))
    cols = np.full((width, len(sims)), -1, dtype=np.int64)
    for i, s in enumerate(sims):
        cols[: len(s.vertices), i] = s.vertices
    # lexsort uses the last key as primary
    order = np.lexsort(tuple(cols[::-1]) + (dims, vals))
    return [sims[i] for i in order]


@dataclass
class Filtration:
    """A totally ordered filtered simplicial complex on the row set of R.

    ``candidates_examined`` counts the subsets the construction had to look at
    (its honest work measure); for flag expansions every examined candidate is
    stored, for the Dowker enumeration the pruned frontier is included.
    """

    simplices: list[FilteredSimplex]
    max_dim: int
    kind: str
    n_vertices: int
    threshold: float = inf
    candidates_examined: int = 0
    _vmap: dict[tuple[int, ...], float] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self):
        self.simplices = _sort_simplices(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def value_map(self) -> dict[tuple[int, ...], float]:
        if self._vmap is None:
            self._vmap = {s.vertices: s.value for s in self.simplices}
        return self._vmap

    def sublevel(self, eps: float) -> set[tuple[int, ...]]:
        """Simplices present at scale eps (as vertex tuples)."""
        return {s.vertices for s in self.simplices if s.value <= eps}

    def counts_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.simplices:
            out[s.dim] = out.get(s.dim, 0) + 1
        return out

    def validate(self) -> None:
        """Check simplex well-formedness, face closure and monotonicity."""
        vmap = self.value_map()
        if len(vmap) != len(self.simplices):
            raise InputError("duplicate simplices in filtration")
        for s in self.simplices:
            _check_simplex(s)
            if s.dim > self.max_dim:
                raise InputError(f"simplex {s.vertices} exceeds max_dim {self.max_dim}")
            if s.dim == 0:
                continue
            for facet in combinations(s.vertices, len(s.vertices) - 1):
                fv = vmap.get(facet)
                if fv is None:
                    raise InputError(f"missing face {facet} of {s.vertices}")
                if fv > s.value:
                    raise InputError(
                        f"face {facet} (value {fv}) appears after coface {s.vertices} (value {s.value})"
                    )

    def to_lines(self) -> str:
        """Debug-only line format: ``value dim v0 v1 ... vk``."""
        return "\n".join(
            f"{s.value!r} {s.dim} " + " ".join(map(str, s.vertices))
            for s in self.simplices
        )


@dataclass(frozen=True)
class WeightedGraph:
    """The Dowker 1-skeleton: vertex and edge appearance values."""

    vertex_values: NDArray[np.float64]
    edge_values: dict[tuple[int, int], float]

    def __post_init__(self):
        vv = np.asarray(self.vertex_values, dtype=float)
        object.__setattr__(self, "vertex_values", vv)
        n = len(vv)
        for (i, k), ev in self.edge_values.items():
            if not (0 <= i < k < n):
                raise InputError(f"bad edge index pair ({i}, {k}) for {n} vertices")
            if ev < max(vv[i], vv[k]):
                raise InputError(
                    f"edge ({i}, {k}) value {ev} below its endpoint values"
                )

    @property
    def n(self) -> int:
        return len(self.vertex_values)


def _guard_threshold(threshold: float) -> float:
    threshold = float(threshold)
    if math.isnan(threshold) or threshold < 0:
        raise InputError(f"threshold must be >= 0 or infinite, got {threshold}")
    return threshold


def dowker_filtration(
    R: CrossDistanceMatrix,
    max_dim: int,
    threshold: float = inf,
    cap: int = DEFAULT_CAP,
) -> Filtration:
    """Enumerate every subset of rows with value <= threshold, up to max_dim.

    Depth-first over subsets carrying the running column-wise max; a branch is
    pruned as soon as the column minimum exceeds the threshold (values only
    grow along a branch).
    """
    if max_dim < 0:
        raise InputError(f"max_dim must be >= 0, got {max_dim}")
    threshold = _guard_threshold(threshold)
    E = R.entries
    n = R.n
    if math.isinf(threshold) and comb(n, max_dim + 1) > cap:
        raise ResourceLimitError(
            f"unthresholded Dowker enumeration would examine C({n}, {max_dim + 1}) "
            f"= {comb(n, max_dim + 1)} top-dimensional candidates (cap {cap}); "
            "set a finite threshold or raise the cap"
        )
    sims: list[FilteredSimplex] = []
    examined = 0
    top = max_dim + 1

    def grow(verts: tuple[int, ...], w: NDArray[np.float64]) -> None:
        nonlocal examined
        if len(verts) == top:
            return
        for k in range(verts[-1] + 1, n):
            examined += 1
            w2 = np.maximum(w, E[k])
            val = float(w2.min())
            if val <= threshold:
                sims.append(FilteredSimplex(verts + (k,), val))
                if len(sims) > cap:
                    raise ResourceLimitError(
                        f"Dowker filtration exceeded the simplex cap {cap}"
                    )
                grow(verts + (k,), w2)

    for i in range(n):
        examined += 1
        w = E[i]
        val = float(w.min())
        if val <= threshold:
            sims.append(FilteredSimplex((i,), val))
            grow((i,), w)

    return Filtration(
        sims,
        max_dim=max_dim,
        kind="dowker",
        n_vertices=n,
        threshold=threshold,
        candidates_examined=examined,
    )


def dowker_skeleton(R: CrossDistanceMatrix) -> WeightedGraph:
    """Vertex and edge appearance values of the Dowker filtration.

    This 1-skeleton determines the entire Dowker-Rips filtration.
    """
    E = R.entries
    n = R.n
    vertex_values = E.min(axis=1)
    edge_values: dict[tuple[int, int], float] = {}
    for i in range(n - 1):
        vals = np.maximum(E[i][None, :], E[i + 1 :, :]).min(axis=1)
        for off in range(vals.shape[0]):
            edge_values[(i, i + 1 + off)] = float(vals[off])
    return WeightedGraph(vertex_values, edge_values)


def flag_expansion(
    G: WeightedGraph,
    max_dim: int,
    threshold: float = inf,
    cap: int = DEFAULT_CAP,
) -> Filtration:
    """Vietoris-Rips-style expansion of a weighted graph.

    A simplex is included iff all its edges are (at values <= threshold); its
    value is the max of its edge values (the vertex value for 0-simplices).
    Incremental lower-neighbor intersection, one stored simplex per candidate.
    """
    if max_dim < 1:
        raise InputError(f"flag expansion needs max_dim >= 1, got {max_dim}")
    threshold = _guard_threshold(threshold)
    n = G.n
    vv = G.vertex_values
    # dense symmetric edge-value lookup (python floats: the hot loop is scalar)
    emat: list[list[float]] = [[inf] * n for _ in range(n)]
    lower: list[list[int]] = [[] for _ in range(n)]
    examined = 0
    sims: list[FilteredSimplex] = []
    for i in range(n):
        examined += 1
        if vv[i] <= threshold:
            sims.append(FilteredSimplex((i,), float(vv[i])))
    for (i, k), ev in G.edge_values.items():
        examined += 1
        if ev <= threshold:
            emat[i][k] = ev
            emat[k][i] = ev
            lower[k].append(i)
    for nb in lower:
        nb.sort()

    def expand(verts: tuple[int, ...], nbrs: list[int], val: float) -> None:
        nonlocal examined
        grow_more = len(verts) + 1 <= max_dim
        for u in nbrs:
            examined += 1
            row = emat[u]
            uval = val
            for w in verts:
                ew = row[w]
                if ew > uval:
                    uval = ew
            s = (u, *verts)
            sims.append(FilteredSimplex(s, uval))
            if len(sims) > cap:
                raise ResourceLimitError(f"flag expansion exceeded the simplex cap {cap}")
            if grow_more:
                nn = _intersect_sorted(nbrs, lower[u])
                if nn:
                    expand(s, nn, uval)

    for v in range(n):
        if vv[v] <= threshold and lower[v]:
            expand((v,), lower[v], float(vv[v]))

    return Filtration(
        sims,
        max_dim=max_dim,
        kind="dowker_rips",
        n_vertices=n,
        threshold=threshold,
        candidates_examined=examined,
    )


def _intersect_sorted(a: list[int], b: list[int]) -> list[int]:
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return out


def dowker_rips_filtration(
    R: CrossDistanceMatrix,
    max_dim: int,
    threshold: float = inf,
    cap: int = DEFAULT_CAP,
) -> Filtration:
    """Flag expansion of the Dowker 1-skeleton of R."""
    threshold = _guard_threshold(threshold)
    G = dowker_skeleton(R)
    if max_dim == 0:
        sims = [
            FilteredSimplex((i,), float(v))
            for i, v in enumerate(G.vertex_values)
            if v <= threshold
        ]
        return Filtration(
            sims,
            max_dim=0,
            kind="dowker_rips",
            n_vertices=R.n,
            threshold=threshold,
            candidates_examined=R.n,
        )
    filt = flag_expansion(G, max_dim, threshold=threshold, cap=cap)
    filt.threshold = threshold
    return filt


def kflag_filtration(
    R: CrossDistanceMatrix,
    k: int,
    max_dim: int,
    threshold: float = inf,
    cap: int = DEFAULT_CAP,
) -> Filtration:
    """Filtered k-flagification of the Dowker filtration.

    Dimensions < k carry the Dowker value; a simplex of dimension >= k appears
    once all of its (k-1)-dimensional faces are present, i.e. at the max of
    their Dowker values. k = 2 reproduces the Dowker-Rips filtration; k above
    max_dim reproduces the Dowker filtration.
    """
    if k < 2:
        raise InputError(f"k must be >= 2, got {k}")
    if max_dim < 0:
        raise InputError(f"max_dim must be >= 0, got {max_dim}")
    threshold = _guard_threshold(threshold)
    base = dowker_filtration(R, min(max_dim, k - 1), threshold, cap=cap)
    kind = f"kflag({k})"
    if max_dim <= k - 1:
        return Filtration(
            base.simplices,
            max_dim=max_dim,
            kind=kind,
            n_vertices=R.n,
            threshold=threshold,
            candidates_examined=base.candidates_examined,
        )

    face_val = {s.vertices: s.value for s in base.simplices if len(s.vertices) == k}
    nbrs: list[set[int]] = [set() for _ in range(R.n)]
    for s in base.simplices:
        if len(s.vertices) == 2:
            i, j = s.vertices
            nbrs[i].add(j)
            nbrs[j].add(i)

    sims = list(base.simplices)
    examined = base.candidates_examined

    def extend(verts: tuple[int, ...], cand: list[int], val: float) -> None:
        nonlocal examined
        grow_more = len(verts) + 1 <= max_dim
        for pos, u in enumerate(cand):
            examined += 1
            uval = val
            ok = True
            for sub in combinations(verts, k - 1):
                fv = face_val.get(sub + (u,))
                if fv is None:
                    ok = False
                    break
                if fv > uval:
                    uval = fv
            if not ok:
                continue
            s = verts + (u,)
            sims.append(FilteredSimplex(s, uval))
            if len(sims) > cap:
                raise ResourceLimitError(f"k-flagification exceeded the simplex cap {cap}")
            if grow_more:
                nu = nbrs[u]
                nn = [w for w in cand[pos + 1 :] if w in nu]
                if nn:
                    extend(s, nn, uval)

    for verts, val in face_val.items():
        last = verts[-1]
        shared = set.intersection(*(nbrs[v] for v in verts)) if verts else set()
        cand = sorted(w for w in shared if w > last)
        if cand:
            extend(verts, cand, val)

    return Filtration(
        sims,
        max_dim=max_dim,
        kind=kind,
        n_vertices=R.n,
        threshold=threshold,
        candidates_examined=examined,
    )

"""Comparing persistence diagrams: equality up to tolerance, exact bottleneck
distance, and logarithmic rescaling for multiplicative interleavings."""

from __future__ import annotations

import math
from collections import deque
from math import inf
from typing import Any

from .errors import InputError
from .persistence import PersistenceDiagram

Point = tuple[float, float]


def _split(points: list[Point]) -> tuple[list[Point], list[float]]:
    fin = [(b, d) for b, d in points if math.isfinite(d)]
    ess = sorted(b for b, d in points if math.isinf(d))
    return fin, ess


def _kuhn_matching(n_left: int, n_right: int, adj: list[list[int]]) -> list[int]:
    """Maximum bipartite matching; returns match_left (right index or -1)."""
    match_left = [-1] * n_left
    match_right = [-1] * n_right

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], seen):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in range(n_left):
        try_augment(u, [False] * n_right)
    return match_left


def diagrams_equal(
    A: PersistenceDiagram, B: PersistenceDiagram, tol: float = 1e-9
) -> tuple[bool, dict[str, Any] | None]:
    """True iff in every dimension the point multisets match one-to-one with
    per-coordinate deviation <= tol. On failure returns an unmatched witness
    point: {"dim", "point", "side"} where side names the diagram it came from.
    """
    if tol < 0 or math.isnan(tol):
        raise InputError(f"tol must be >= 0, got {tol}")
    dims = {d for d, v in A.points.items() if v} | {d for d, v in B.points.items() if v}
    for d in sorted(dims):
        a_fin, a_ess = _split(A.in_dim(d))
        b_fin, b_ess = _split(B.in_dim(d))
        # essential classes: only births can differ; sorted pairing is optimal
        if len(a_ess) != len(b_ess):
            side, pts = ("left", a_ess) if len(a_ess) > len(b_ess) else ("right", b_ess)
            return False, {"dim": d, "point": [pts[-1], inf], "side": side}
        for ba, bb in zip(a_ess, b_ess):
            if abs(ba - bb) > tol:
                return False, {"dim": d, "point": [ba, inf], "side": "left"}
        # finite points: feasibility matching within the tolerance box
        adj = [
            [
                j
                for j, (bb, db) in enumerate(b_fin)
                if abs(ba - bb) <= tol and abs(da - db) <= tol
            ]
            for ba, da in a_fin
        ]
        match_left = _kuhn_matching(len(a_fin), len(b_fin), adj)
        if all(m != -1 for m in match_left) and len(a_fin) == len(b_fin):
            continue
        for i, m in enumerate(match_left):
            if m == -1:
                return False, {"dim": d, "point": list(a_fin[i]), "side": "left"}
        covered = set(match_left)
        for j, p in enumerate(b_fin):
            if j not in covered:
                return False, {"dim": d, "point": list(p), "side": "right"}
    return True, None


def _hopcroft_karp(n_left: int, n_right: int, adj: list[list[int]]) -> int:
    """Size of a maximum matching."""
    INF = float("inf")
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0.0] * n_left

    def bfs() -> bool:
        q = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size


def _bottleneck_finite(a: list[Point], b: list[Point]) -> float:
    """Exact bottleneck distance between finite diagrams (diagonal allowed)."""
    na, nb = len(a), len(b)
    if na == 0 and nb == 0:
        return 0.0
    cands = {0.0}
    for ba, da in a:
        cands.add((da - ba) / 2.0)
    for bb, db in b:
        cands.add((db - bb) / 2.0)
    for ba, da in a:
        for bb, db in b:
            cands.add(max(abs(ba - bb), abs(da - db)))
    order = sorted(cands)

    # left side: a points then ghosts of b; right side: b points then ghosts of a
    def feasible(r: float) -> bool:
        n_left = na + nb
        n_right = nb + na
        adj: list[list[int]] = [[] for _ in range(n_left)]
        for i, (ba, da) in enumerate(a):
            for j, (bb, db) in enumerate(b):
                if max(abs(ba - bb), abs(da - db)) <= r:
                    adj[i].append(j)
            if (da - ba) / 2.0 <= r:
                adj[i].append(nb + i)
        for j, (bb, db) in enumerate(b):
            if (db - bb) / 2.0 <= r:
                adj[na + j].append(j)
            adj[na + j].extend(range(nb, nb + na))
        return _hopcroft_karp(n_left, n_right, adj) == n_left

    lo, hi = 0, len(order) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(order[mid]):
            hi = mid
        else:
            lo = mid + 1
    return order[lo]


def bottleneck(A: PersistenceDiagram, B: PersistenceDiagram, dim: int) -> float:
    """Exact bottleneck distance in one homological dimension.

    Finite points may be matched to each other or to the diagonal; essential
    (infinite-death) classes must match essential classes, so a count mismatch
    gives distance inf. Runs a feasibility binary search over the candidate
    radii (pairwise L-inf distances and half-persistences), each step a
    Hopcroft-Karp matching.
    """
    if dim < 0:
        raise InputError(f"dimension must be >= 0, got {dim}")
    a_fin, a_ess = _split(A.in_dim(dim))
    b_fin, b_ess = _split(B.in_dim(dim))
    if len(a_ess) != len(b_ess):
        return inf
    ess_r = max((abs(x - y) for x, y in zip(a_ess, b_ess)), default=0.0)
    fin_r = _bottleneck_finite(a_fin, b_fin)
    return max(ess_r, fin_r)


def log_rescale(dgm: PersistenceDiagram, floor: float = 1e-12) -> PersistenceDiagram:
    """Map every coordinate v to ln(max(v, floor)).

    Turns a multiplicative c-interleaving into an additive ln(c)-interleaving,
    so log-scale bottleneck distances can be checked against ln(c). Exact
    zeros clamp to the floor; any positive finite coordinate below 10*floor is
    rejected because the clamp would distort it.
    """
    if not (floor > 0 and math.isfinite(floor)):
        raise InputError(f"floor must be positive and finite, got {floor}")
    guard = 10.0 * floor
    for d, pts in dgm.points.items():
        for b, dd in pts:
            for v in (b, dd):
                if 0 < v < guard and math.isfinite(v):
                    raise InputError(
                        f"coordinate {v} in dimension {d} is below 10*floor = {guard}; "
                        "choose a smaller floor"
                    )

    def remap(v: float) -> float:
        if math.isinf(v):
            return inf
        return math.log(max(v, floor))

    points = {
        d: sorted((remap(b), remap(dd)) for b, dd in pts)
        for d, pts in dgm.points.items()
    }
    meta = dict(dgm.metadata)
    meta["log_rescaled"] = True
    meta["log_floor"] = floor
    return PersistenceDiagram(points, metadata=meta)

"""Brute-force oracles and theorem checks.

The oracles restate the set-level definitions with no shared code with the
fast constructions: a simplex is present at scale eps iff some witness column
covers it, and flagification is run as a literal fixed-point loop. They are
meant for cross-validation on small instances, so sizes are hard-capped.

``verify_theorems`` packages the structural facts the constructions are
supposed to satisfy (duality of Dowker diagrams under transposition, its
restricted analogues for flag expansions, and the factor-3 interleaving
between Dowker and Dowker-Rips) into a machine-readable report.
"""

from __future__ import annotations

import math
from itertools import combinations
from math import inf, log
from typing import Any, Iterable

import numpy as np

from .complexes import (
    dowker_filtration,
    dowker_rips_filtration,
    kflag_filtration,
)
from .diagrams import bottleneck, diagrams_equal, log_rescale
from .errors import InputError, ResourceLimitError
from .persistence import PersistenceDiagram, compute_persistence
from .relations import CrossDistanceMatrix, cross_distances, transpose

BRUTE_MAX_VERTICES = 12

SimplexSet = set[frozenset[int]]


def brute_dowker(R: CrossDistanceMatrix, eps: float, max_dim: int) -> SimplexSet:
    """All row subsets of size <= max_dim + 1 covered by some column at eps."""
    if R.n > BRUTE_MAX_VERTICES:
        raise ResourceLimitError(
            f"brute-force oracle is capped at {BRUTE_MAX_VERTICES} rows, got {R.n}"
        )
    if max_dim < 0:
        raise InputError(f"max_dim must be >= 0, got {max_dim}")
    if math.isnan(eps):
        raise InputError("eps must not be NaN")
    E = R.entries
    out: SimplexSet = set()
    for size in range(1, max_dim + 2):
        for sigma in combinations(range(R.n), size):
            if E[list(sigma)].max(axis=0).min() <= eps:
                out.add(frozenset(sigma))
    return out


def brute_flagify(S: SimplexSet, k: int, max_dim: int) -> SimplexSet:
    """Fixed-point closure: add any simplex of dimension >= k all of whose
    (k-1)-dimensional faces are present; repeat until stable."""
    if k < 2:
        raise InputError(f"k must be >= 2, got {k}")
    vertices = sorted({v for s in S for v in s})
    if len(vertices) > BRUTE_MAX_VERTICES:
        raise ResourceLimitError(
            f"brute-force flagification is capped at {BRUTE_MAX_VERTICES} vertices"
        )
    out = set(S)
    changed = True
    while changed:
        changed = False
        for size in range(k + 1, max_dim + 2):
            for sigma in combinations(vertices, size):
                fs = frozenset(sigma)
                if fs in out:
                    continue
                if all(frozenset(f) in out for f in combinations(sigma, k)):
                    out.add(fs)
                    changed = True
    return out


def random_instance(
    seed: int,
    n_range: tuple[int, int] = (3, 12),
    m_range: tuple[int, int] | None = None,
    space_dim: int = 2,
    metric: str = "euclidean",
) -> tuple[CrossDistanceMatrix, dict[str, Any]]:
    """Uniform point clouds in the unit cube; returns (R, provenance info)."""
    if m_range is None:
        m_range = n_range
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    X = rng.random((n, space_dim))
    Y = rng.random((m, space_dim))
    R = cross_distances(X, Y, metric=metric)
    info = {"seed": seed, "n": n, "m": m, "space_dim": space_dim, "metric": metric}
    return R, info


def _restrict(dgm: PersistenceDiagram, dims: Iterable[int]) -> PersistenceDiagram:
    return PersistenceDiagram(
        {d: dgm.in_dim(d) for d in dims}, metadata=dict(dgm.metadata)
    )


def _check(name: str, ok: bool, detail: str) -> dict[str, Any]:
    return {"name": name, "pass": bool(ok), "detail": detail}


def _equal_check(
    name: str,
    A: PersistenceDiagram,
    B: PersistenceDiagram,
    dims: list[int],
    tol: float,
) -> dict[str, Any]:
    eq, witness = diagrams_equal(_restrict(A, dims), _restrict(B, dims), tol)
    if eq:
        counts = {d: len(A.in_dim(d)) for d in dims}
        detail = f"diagrams match in dims {dims} (points per dim {counts})"
    else:
        detail = f"unmatched point {witness}"
    return _check(name, eq, detail)


def verify_theorems(
    R: CrossDistanceMatrix,
    max_dim: int = 3,
    thresholds: list[float] | None = None,
    tol: float = 1e-9,
    sharpness_constants: Iterable[float] = (),
    instance: dict[str, Any] | None = None,
    log_floor: float = 1e-12,
) -> dict[str, Any]:
    """Run the structural checks on one instance and return a report dict.

    Checks (each an entry of report["checks"], report["pass"] is their AND):

    * interleaving_per_simplex_c3: every simplex satisfies
      value_DR <= value_D <= 3 * value_DR, and the sublevel inclusions
      D_t <= DR_t <= D_{3t} hold at each sampled threshold.
    * dowker_rips_duality_dims_0_1: swapping the two point sets leaves the
      Dowker-Rips diagrams unchanged in dimensions 0 and 1.
    * dowker_duality_all_dims: swapping leaves Dowker diagrams unchanged in
      every computed dimension.
    * kflag3_duality_dims_0_2: swapping leaves 3-flagified diagrams unchanged
      in dimensions 0..2.
    * log_bottleneck_*_le_ln3: log-rescaled bottleneck distances stay within
      ln(3) for the pairs related by a multiplicative 3-interleaving.
    * interleaving_sharpness_c_<c>: passes iff some simplex actually violates
      value_D <= c * value_DR, i.e. the factor cannot be improved to c on
      this instance. Only meaningful on instances built to be sharp.
    """
    if max_dim < 3:
        raise InputError(f"theorem checks need max_dim >= 3, got {max_dim}")
    if tol < 0:
        raise InputError(f"tol must be >= 0, got {tol}")
    Rt = transpose(R)
    top_hom = max_dim - 1

    d_xy = dowker_filtration(R, max_dim)
    d_yx = dowker_filtration(Rt, max_dim)
    r_xy = dowker_rips_filtration(R, max_dim)
    r_yx = dowker_rips_filtration(Rt, max_dim)
    f_xy = kflag_filtration(R, 3, max_dim)
    f_yx = kflag_filtration(Rt, 3, max_dim)

    checks: list[dict[str, Any]] = []

    vm_d = d_xy.value_map()
    vm_r = r_xy.value_map()
    ok = set(vm_d) == set(vm_r)
    worst_ratio = 0.0
    bad: tuple[int, ...] | None = None
    if ok:
        for sigma, vd in vm_d.items():
            vr = vm_r[sigma]
            if not (vr <= vd + tol and vd <= 3.0 * vr + tol):
                ok = False
                bad = sigma
                break
            if vr > 0:
                worst_ratio = max(worst_ratio, vd / vr)
    if thresholds is None:
        realized = sorted({v for v in vm_d.values()})
        step = max(1, len(realized) // 20)
        thresholds = realized[::step][:20]
    incl_fail = None
    if ok:
        for t in thresholds:
            sub_d = {s for s, v in vm_d.items() if v <= t}
            sub_r = {s for s, v in vm_r.items() if v <= t}
            sub_d3 = {s for s, v in vm_d.items() if v <= 3.0 * t + tol}
            if not (sub_d <= sub_r and sub_r <= sub_d3):
                ok = False
                incl_fail = t
                break
    detail = (
        f"{len(vm_d)} simplices, worst value ratio {worst_ratio:.6g}, "
        f"{len(thresholds)} thresholds checked"
    )
    if bad is not None:
        detail = f"simplex {bad} violates the factor-3 bound"
    if incl_fail is not None:
        detail = f"sublevel inclusion fails at threshold {incl_fail}"
    checks.append(_check("interleaving_per_simplex_c3", ok, detail))

    p_d_xy = compute_persistence(d_xy, top_hom)
    p_d_yx = compute_persistence(d_yx, top_hom)
    p_r_xy = compute_persistence(r_xy, top_hom)
    p_r_yx = compute_persistence(r_yx, top_hom)
    p_f_xy = compute_persistence(f_xy, top_hom)
    p_f_yx = compute_persistence(f_yx, top_hom)

    checks.append(
        _equal_check("dowker_rips_duality_dims_0_1", p_r_xy, p_r_yx, [0, 1], tol)
    )
    checks.append(
        _equal_check(
            "dowker_duality_all_dims", p_d_xy, p_d_yx, list(range(top_hom + 1)), tol
        )
    )
    checks.append(
        _equal_check("kflag3_duality_dims_0_2", p_f_xy, p_f_yx, [0, 1, 2], tol)
    )

    bound = log(3.0) + tol
    for name, A, B in (
        ("log_bottleneck_dr_swap_le_ln3", p_r_xy, p_r_yx),
        ("log_bottleneck_dowker_vs_dr_le_ln3", p_d_xy, p_r_xy),
    ):
        la = log_rescale(A, log_floor)
        lb = log_rescale(B, log_floor)
        dists = {d: bottleneck(la, lb, d) for d in range(top_hom + 1)}
        ok = all(v <= bound for v in dists.values())
        pretty = {d: ("inf" if math.isinf(v) else round(v, 6)) for d, v in dists.items()}
        checks.append(
            _check(name, ok, f"log-bottleneck per dim {pretty}, bound ln(3) ~ 1.0986")
        )

    for c in sharpness_constants:
        witness_s = None
        for sigma, vd in vm_d.items():
            vr = vm_r[sigma]
            if vd > c * vr + tol:
                witness_s = sigma
                break
        checks.append(
            _check(
                f"interleaving_sharpness_c_{c:g}",
                witness_s is not None,
                (
                    f"simplex {witness_s} has Dowker value > {c:g} x Dowker-Rips value"
                    if witness_s is not None
                    else f"no simplex exceeds the factor {c:g}: bound not sharp here"
                ),
            )
        )

    report = {
        "instance": instance or {"n": R.n, "m": R.m},
        "max_dim": max_dim,
        "tol": tol,
        "thresholds": [float(t) for t in thresholds],
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }
    return report

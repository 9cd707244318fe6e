import itertools
import math
from math import inf

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relhom import (
    InputError,
    PersistenceDiagram,
    bottleneck,
    diagrams_equal,
    log_rescale,
)


def dgm(points, dim=0):
    return PersistenceDiagram({dim: sorted(points)})


def brute_bottleneck(a, b):
    """Exact bottleneck by enumerating every partial matching (tiny inputs).

    Finite points either pair up bijectively or go to the diagonal at cost
    persistence/2; essential points must pair with essential points.
    """
    a_fin = [(x, y) for x, y in a if math.isfinite(y)]
    b_fin = [(x, y) for x, y in b if math.isfinite(y)]
    a_ess = sorted(x for x, y in a if math.isinf(y))
    b_ess = sorted(x for x, y in b if math.isinf(y))
    if len(a_ess) != len(b_ess):
        return inf
    best_ess = 0.0
    if a_ess:
        best_ess = inf
        for perm in itertools.permutations(range(len(b_ess))):
            cost = max(abs(a_ess[i] - b_ess[j]) for i, j in enumerate(perm))
            best_ess = min(best_ess, cost)
    best = inf
    na, nb = len(a_fin), len(b_fin)
    for k in range(0, min(na, nb) + 1):
        for sa in itertools.combinations(range(na), k):
            rest_a = [i for i in range(na) if i not in sa]
            for sb in itertools.permutations(range(nb), k):
                cost = 0.0
                for i, j in zip(sa, sb):
                    cost = max(
                        cost,
                        abs(a_fin[i][0] - b_fin[j][0]),
                        abs(a_fin[i][1] - b_fin[j][1]),
                    )
                for i in rest_a:
                    cost = max(cost, (a_fin[i][1] - a_fin[i][0]) / 2)
                for j in range(nb):
                    if j not in sb:
                        cost = max(cost, (b_fin[j][1] - b_fin[j][0]) / 2)
                best = min(best, cost)
    return max(best_ess, best if best < inf else 0.0)


def test_bottleneck_frozen_values():
    assert bottleneck(dgm([(0.0, 1.0)]), dgm([]), 0) == 0.5
    assert bottleneck(dgm([(0.0, 2.0), (0.0, 1.0)]), dgm([(0.0, 2.0)]), 0) == 0.5
    assert bottleneck(dgm([(0.0, 1.0)]), dgm([(0.0, 1.0)]), 0) == 0.0
    assert bottleneck(dgm([(0.0, inf)]), dgm([(1.0, inf)]), 0) == 1.0
    assert bottleneck(dgm([(0.0, inf)]), dgm([]), 0) == inf
    assert bottleneck(dgm([]), dgm([]), 0) == 0.0
    with pytest.raises(InputError):
        bottleneck(dgm([]), dgm([]), -1)


def random_points(rng, max_pts=6, with_inf=True):
    pts = []
    for _ in range(rng.integers(0, max_pts + 1)):
        b = float(rng.uniform(0, 5))
        if with_inf and rng.random() < 0.2:
            pts.append((b, inf))
        else:
            pts.append((b, b + float(rng.uniform(0, 5))))
    return pts


def test_bottleneck_matches_brute_force_on_200_pairs():
    rng = np.random.default_rng(42)
    for trial in range(200):
        a = random_points(rng)
        b = random_points(rng)
        got = bottleneck(dgm(a), dgm(b), 0)
        want = brute_bottleneck(a, b)
        assert got == pytest.approx(want, abs=1e-12), (trial, a, b)


def test_bottleneck_is_a_pseudometric():
    rng = np.random.default_rng(3)
    for _ in range(40):
        a, b, c = (dgm(random_points(rng, 4)) for _ in range(3))
        dab = bottleneck(a, b, 0)
        dba = bottleneck(b, a, 0)
        assert dab == dba
        dac = bottleneck(a, c, 0)
        dcb = bottleneck(c, b, 0)
        if all(map(math.isfinite, (dab, dac, dcb))):
            assert dab <= dac + dcb + 1e-12


def test_diagrams_equal_tolerance_semantics():
    a = dgm([(0.0, 1.0)])
    b = dgm([(0.0, 1.0625)])  # offsets exactly representable in binary
    eq, _ = diagrams_equal(a, b, 0.0625)
    assert eq
    eq, witness = diagrams_equal(a, b, 0.05)
    assert not eq and witness["dim"] == 0
    # per-coordinate box, not euclidean
    c = dgm([(0.0625, 1.0625)])
    eq, _ = diagrams_equal(a, c, 0.0625)
    assert eq


def test_diagrams_equal_count_mismatch_witness():
    a = dgm([(0.0, 1.0), (2.0, 3.0)])
    b = dgm([(0.0, 1.0)])
    eq, witness = diagrams_equal(a, b, 1e-9)
    assert not eq
    assert witness["side"] == "left" and witness["point"] == [2.0, 3.0]
    eq, witness = diagrams_equal(b, a, 1e-9)
    assert not eq and witness["side"] == "right"


def test_diagrams_equal_essential_handling():
    a = dgm([(1.0, inf)])
    b = dgm([(1.0 + 5e-10, inf)])
    eq, _ = diagrams_equal(a, b, 1e-9)
    assert eq
    eq, witness = diagrams_equal(a, dgm([(1.5, inf)]), 1e-9)
    assert not eq and witness["point"][1] == inf
    eq, witness = diagrams_equal(a, dgm([(1.0, 2.0)]), 1e-9)
    assert not eq


def test_diagrams_equal_needs_optimal_pairing():
    # greedy nearest-first would fail here; a perfect matching exists
    a = dgm([(0.0, 1.0), (0.1, 1.0)])
    b = dgm([(0.1, 1.0), (0.2, 1.0)])
    eq, _ = diagrams_equal(a, b, 0.1)
    assert eq
    eq, _ = diagrams_equal(a, b, 0.05)
    assert not eq


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_multiplicative_scaling_bounds_log_bottleneck(seed):
    rng = np.random.default_rng(seed)
    pts = [(b + 0.5, d + 1.0) for b, d in random_points(rng, 5, with_inf=False)]
    c = float(rng.uniform(1.0, 3.0))
    a = dgm(pts)
    b = dgm([(b * c, d * c) for b, d in pts])
    la, lb = log_rescale(a), log_rescale(b)
    assert bottleneck(la, lb, 0) <= math.log(c) + 1e-9


def test_log_rescale_values():
    a = PersistenceDiagram({0: [(0.0, 1.0)], 1: [(2.0, inf)]})
    out = log_rescale(a, 0.001)
    assert out.in_dim(0) == [(math.log(0.001), 0.0)]
    assert out.in_dim(1) == [(math.log(2.0), inf)]
    assert out.metadata["log_rescaled"] is True
    assert out.metadata["log_floor"] == 0.001


def test_log_rescale_guards():
    with pytest.raises(InputError):
        log_rescale(dgm([(0.0, 1.0)]), 0.0)
    with pytest.raises(InputError):
        log_rescale(dgm([(0.0, 1.0)]), inf)
    # a positive coordinate inside the clamp band is an error, zero is fine
    with pytest.raises(InputError):
        log_rescale(dgm([(0.005, 1.0)]), 0.001)
    out = log_rescale(dgm([(0.0, 1.0)]), 0.001)
    assert out.in_dim(0)[0][0] == math.log(0.001)

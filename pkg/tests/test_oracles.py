import json
import math

import numpy as np
import pytest

from relhom import (
    CrossDistanceMatrix,
    InputError,
    ResourceLimitError,
    brute_dowker,
    brute_flagify,
    cross_distances,
    random_instance,
    verify_theorems,
)


def fs(*verts):
    return frozenset(verts)


def test_brute_dowker_hand_case():
    # rows 0,1 share witness column 0 at 1; row 2 only relates at 2
    R = CrossDistanceMatrix(np.array([[1.0, 3.0], [1.0, 3.0], [2.0, 2.0]]))
    assert brute_dowker(R, 0.5, 2) == set()
    assert brute_dowker(R, 1.0, 2) == {fs(0), fs(1), fs(0, 1)}
    at2 = brute_dowker(R, 2.0, 2)
    assert at2 == {
        fs(0), fs(1), fs(2),
        fs(0, 1), fs(0, 2), fs(1, 2),
        fs(0, 1, 2),
    }


def test_brute_dowker_guards():
    R = CrossDistanceMatrix(np.ones((13, 2)))
    with pytest.raises(ResourceLimitError):
        brute_dowker(R, 1.0, 2)
    R2 = CrossDistanceMatrix(np.ones((2, 2)))
    with pytest.raises(InputError):
        brute_dowker(R2, 1.0, -1)
    with pytest.raises(InputError):
        brute_dowker(R2, math.nan, 1)


def test_brute_flagify_fills_hollow_triangle_only_at_k2():
    hollow = {fs(0), fs(1), fs(2), fs(0, 1), fs(0, 2), fs(1, 2)}
    assert brute_flagify(hollow, 2, 2) == hollow | {fs(0, 1, 2)}
    assert brute_flagify(hollow, 3, 2) == hollow


def test_brute_flagify_iterates_to_a_fixed_point():
    # k=3 on the full 2-skeleton of the 4-simplex: round one adds the five
    # tetrahedra, round two the 4-simplex itself
    verts = range(5)
    from itertools import combinations

    S = {fs(*c) for size in (1, 2, 3) for c in combinations(verts, size)}
    out = brute_flagify(S, 3, 4)
    assert fs(0, 1, 2, 3) in out
    assert fs(0, 1, 2, 3, 4) in out
    # truncation respected
    out3 = brute_flagify(S, 3, 3)
    assert fs(0, 1, 2, 3) in out3
    assert fs(0, 1, 2, 3, 4) not in out3
    with pytest.raises(InputError):
        brute_flagify(S, 1, 3)


def test_random_instance_is_deterministic():
    R1, info1 = random_instance(123, space_dim=3)
    R2, info2 = random_instance(123, space_dim=3)
    assert R1 == R2
    assert info1 == info2
    assert info1["n"] == R1.n and info1["m"] == R1.m
    R3, _ = random_instance(124, space_dim=3)
    assert R1 != R3


def test_verify_theorems_on_six_cycle(six_cycle):
    report = verify_theorems(
        six_cycle,
        max_dim=3,
        sharpness_constants=(2.0, 2.5, 2.99),
        instance={"name": "six-cycle"},
    )
    assert report["pass"] is True
    names = [c["name"] for c in report["checks"]]
    assert "interleaving_per_simplex_c3" in names
    assert "dowker_duality_all_dims" in names
    assert "kflag3_duality_dims_0_2" in names
    assert "interleaving_sharpness_c_2.99" in names
    json.dumps(report)  # must be serializable as-is


def test_verify_theorems_sharpness_fails_at_three(six_cycle):
    # nothing can violate the factor 3 itself, so that check must not pass
    report = verify_theorems(six_cycle, max_dim=3, sharpness_constants=(3.0,))
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["interleaving_sharpness_c_3"]["pass"] is False
    assert report["pass"] is False


def test_verify_theorems_on_tetrahedron(tetrahedron):
    report = verify_theorems(tetrahedron, max_dim=4)
    assert report["pass"] is True
    by_name = {c["name"]: c for c in report["checks"]}
    # the swap changes H2 (solid vs hollow side) but dims 0,1 must agree
    assert by_name["dowker_rips_duality_dims_0_1"]["pass"] is True


def test_verify_theorems_on_random_instances():
    for seed in (7, 8):
        R, info = random_instance(seed, n_range=(3, 7), space_dim=2)
        report = verify_theorems(R, max_dim=3, instance=info)
        assert report["pass"] is True, report
        # random planar instances are essentially never factor-3 sharp
        report2 = verify_theorems(R, max_dim=3, sharpness_constants=(2.999,))
        by_name = {c["name"]: c for c in report2["checks"]}
        assert by_name["interleaving_sharpness_c_2.999"]["pass"] is False


def test_verify_theorems_validation(six_cycle):
    with pytest.raises(InputError):
        verify_theorems(six_cycle, max_dim=2)
    with pytest.raises(InputError):
        verify_theorems(six_cycle, tol=-1.0)


def test_verify_theorems_custom_thresholds(six_cycle):
    report = verify_theorems(six_cycle, thresholds=[0.5, 1.0, 2.99, 3.0])
    assert report["thresholds"] == [0.5, 1.0, 2.99, 3.0]
    assert report["pass"] is True

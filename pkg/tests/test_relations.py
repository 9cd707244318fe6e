import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from relhom import (
    CrossDistanceMatrix,
    InputError,
    LabeledPointCloud,
    cross_distances,
    load_matrix,
    load_points,
    read_labeled_points,
    transpose,
    write_matrix,
)

finite_coords = st.floats(
    min_value=-100, max_value=100, allow_nan=False, allow_infinity=False
)


def clouds(max_pts=6, dim=3):
    return st.tuples(
        arrays(float, st.tuples(st.integers(1, max_pts), st.just(dim)), elements=finite_coords),
        arrays(float, st.tuples(st.integers(1, max_pts), st.just(dim)), elements=finite_coords),
    )


@given(clouds())
@settings(max_examples=40, deadline=None)
def test_cross_distances_euclidean_matches_direct_computation(xy):
    X, Y = xy
    R = cross_distances(X, Y, metric="euclidean")
    for i in range(len(X)):
        for j in range(len(Y)):
            assert R.entries[i, j] == pytest.approx(
                math.sqrt(((X[i] - Y[j]) ** 2).sum()), abs=1e-9
            )


@given(clouds(max_pts=4))
@settings(max_examples=25, deadline=None)
def test_cross_distances_other_metrics(xy):
    X, Y = xy
    man = cross_distances(X, Y, metric="manhattan").entries
    che = cross_distances(X, Y, metric="chebyshev").entries
    for i in range(len(X)):
        for j in range(len(Y)):
            diff = np.abs(X[i] - Y[j])
            assert man[i, j] == pytest.approx(diff.sum(), abs=1e-9)
            assert che[i, j] == pytest.approx(diff.max(), abs=1e-9)


def test_cross_distances_rejects_bad_input():
    X = np.zeros((2, 2))
    with pytest.raises(InputError):
        cross_distances(X, np.zeros((0, 2)))
    with pytest.raises(InputError):
        cross_distances(X, np.zeros((2, 3)))
    with pytest.raises(InputError):
        cross_distances(X, X, metric="cosine")


@given(clouds(max_pts=5))
@settings(max_examples=25, deadline=None)
def test_transpose_is_an_involution(xy):
    X, Y = xy
    R = cross_distances(X, Y)
    assert transpose(transpose(R)) == R
    assert transpose(R).n == R.m and transpose(R).m == R.n


def test_matrix_validation():
    with pytest.raises(InputError):
        CrossDistanceMatrix(np.array([[1.0, -0.5]]))
    with pytest.raises(InputError):
        CrossDistanceMatrix(np.array([[1.0, math.nan]]))
    with pytest.raises(InputError):
        CrossDistanceMatrix(np.array([[1.0, math.inf]]))
    with pytest.raises(InputError):
        CrossDistanceMatrix(np.array([1.0, 2.0]))
    R = CrossDistanceMatrix(np.array([[1.0, 2.0]]))
    with pytest.raises(ValueError):
        R.entries[0, 0] = 5.0  # stored copy is write-protected


def test_read_labeled_points_roundtrip(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("label,c1,c2\nx,0.0,1.5\ny,2.25,-1.0\nx,3.0,4.0\n")
    cloud = read_labeled_points(str(p))
    assert cloud.labels == ("x", "y", "x")
    assert cloud.points.shape == (3, 2)
    X, Y = load_points(str(p), "x", "y")
    assert X.shape == (2, 2) and Y.shape == (1, 2)
    assert Y[0, 0] == 2.25


def test_read_labeled_points_errors(tmp_path):
    cases = {
        "empty.csv": "",
        "header.csv": "foo,c1\nx,1\n",
        "ragged.csv": "label,c1,c2\nx,1.0\n",
        "badfloat.csv": "label,c1\nx,abc\n",
        "nanval.csv": "label,c1\nx,nan\n",
    }
    for name, text in cases.items():
        p = tmp_path / name
        p.write_text(text)
        with pytest.raises(InputError):
            read_labeled_points(str(p))


def test_load_points_label_errors(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("label,c1\nx,1.0\ny,2.0\n")
    with pytest.raises(InputError):
        load_points(str(p), "x", "x")  # the two sides must be disjoint labels
    with pytest.raises(InputError):
        load_points(str(p), "x", "z")


def test_load_matrix(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1.0,2.0\n0.5,0.25\n")
    R = load_matrix(str(p))
    assert R.n == 2 and R.m == 2
    assert R.entries[1, 1] == 0.25
    p.write_text("1.0,2.0\n0.5\n")
    with pytest.raises(InputError):
        load_matrix(str(p))
    p.write_text("")
    with pytest.raises(InputError):
        load_matrix(str(p))
    p.write_text("1.0,-2.0\n")
    with pytest.raises(InputError):
        load_matrix(str(p))


@given(
    arrays(
        float,
        st.tuples(st.integers(1, 5), st.integers(1, 5)),
        elements=st.floats(min_value=0, max_value=1e6, allow_nan=False),
    )
)
@settings(max_examples=25, deadline=None)
def test_write_matrix_roundtrip(tmp_path_factory, entries):
    p = tmp_path_factory.mktemp("m") / "m.csv"
    R = CrossDistanceMatrix(entries)
    write_matrix(str(p), R)
    assert load_matrix(str(p)) == R


def test_labeled_point_cloud_validation():
    with pytest.raises(InputError):
        LabeledPointCloud(np.zeros((2, 2)), ("x",))
    with pytest.raises(InputError):
        LabeledPointCloud(np.array([math.nan]).reshape(1, 1), ("x",))
    cloud = LabeledPointCloud(np.arange(6, dtype=float).reshape(3, 2), ("a", "b", "a"))
    assert cloud.select("a").shape == (2, 2)


def test_shipped_point_fixtures_load(fixtures_dir):
    X, Y = load_points(str(fixtures_dir / "six_cycle_points.csv"), "x", "y")
    assert X.shape == (3, 2) and Y.shape == (3, 2)
    R = cross_distances(X, Y)
    assert np.allclose(np.sort(R.entries.ravel()), [1, 1, 1, 1, 1, 1, 2, 2, 2])

    V, M = load_points(str(fixtures_dir / "tetrahedron_points.csv"), "vertex", "midpoint")
    assert V.shape == (4, 3) and M.shape == (6, 3)
    d = np.unique(np.round(cross_distances(V, M).entries, 12))
    assert len(d) == 2 and d[0] == 0.5

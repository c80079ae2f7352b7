"""Distances, nearest-point queries, set gaps, and instance validation."""

import math

import numpy as np
import pytest

from helpers import line_instance, matrix_instance, plane_instance
from proxima.metric import (
    SPACE_PLANE,
    MetricInstance,
    Point,
    SpaceSet,
    distance,
    element_key,
    format_element,
    nearest_in_set,
    pairwise_distances,
    set_min_distance,
    validate_instance,
)


def failed_names(report):
    return {c.name for c in report.failures()}


class TestDistance:
    def test_line(self):
        inst, _ = line_instance([0], [5])
        assert distance(inst, -3.0, 4.0) == 7.0
        assert distance(inst, 2.5, 2.5) == 0.0

    def test_plane(self):
        inst, _ = plane_instance([(0, 0)], [(3, 4)])
        assert distance(inst, (0.0, 0.0), (3.0, 4.0)) == 5.0
        assert distance(inst, (1.0, 1.0), (1.0, 1.0)) == 0.0

    def test_matrix(self):
        m = [[0, 2, 3], [2, 0, 4], [3, 4, 0]]
        inst, _ = matrix_instance(m, [0], [1, 2])
        assert distance(inst, 0, 2) == 3.0
        assert distance(inst, 2, 1) == 4.0

    def test_symmetry_randomized(self):
        inst, _ = plane_instance([(0, 0)], [(1, 1)])
        rng = np.random.default_rng(7)
        for _ in range(50):
            p = tuple(rng.uniform(-5, 5, 2))
            q = tuple(rng.uniform(-5, 5, 2))
            assert distance(inst, p, q) == distance(inst, q, p)
            assert distance(inst, p, q) >= 0.0


class TestPairwiseDistances:
    def test_matches_scalar_line(self):
        inst, _ = line_instance([0], [1])
        xs = [-3.0, 0.0, 3.0, 4.0]
        mat = pairwise_distances(inst, xs, xs)
        for i, p in enumerate(xs):
            for j, q in enumerate(xs):
                assert mat[i, j] == distance(inst, p, q)

    def test_matches_scalar_plane(self):
        inst, _ = plane_instance([(0, 0)], [(1, 1)])
        xs = [(0.0, 0.0), (1.0, 2.0), (-3.0, 0.5), (2.0, -2.0)]
        mat = pairwise_distances(inst, xs, xs)
        for i, p in enumerate(xs):
            for j, q in enumerate(xs):
                assert mat[i, j] == distance(inst, p, q)

    def test_matches_scalar_matrix(self):
        m = [[0, 2, 3], [2, 0, 4], [3, 4, 0]]
        inst, _ = matrix_instance(m, [0, 1], [2])
        mat = pairwise_distances(inst, [2, 0], [1])
        assert mat.shape == (2, 1)
        assert mat[0, 0] == 4.0
        assert mat[1, 0] == 2.0


class TestElementKey:
    def test_orders_scalars_tuples_ids(self):
        assert element_key(-3.0) < element_key(0.0) < element_key(4.0)
        assert element_key((0.0, 1.0)) < element_key((0.0, 2.0)) < element_key((1.0, 0.0))
        assert element_key(1) < element_key(2)

    def test_format(self):
        assert format_element(-3.0) == "-3"
        assert format_element(1.5) == "1.5"
        assert format_element((0.0, 1.0)) == "(0, 1)"
        assert format_element(7) == "#7"


class TestNearest:
    def test_finite_tie_breaks_to_smaller(self):
        inst, _ = line_instance([0], [-1, 1])
        elem, dist = nearest_in_set(inst, inst.set_b, 0.0)
        assert elem == -1.0 and dist == 1.0

    def test_intervals_interior_and_clamp(self):
        inst, _ = line_instance([0], [5])
        sset = SpaceSet.of_intervals([(-2.0, -1.0), (1.0, 2.0)])
        assert nearest_in_set(inst, sset, 1.5) == (1.5, 0.0)
        assert nearest_in_set(inst, sset, 3.0) == (2.0, 1.0)
        # equidistant from both intervals: prefer the smaller witness
        assert nearest_in_set(inst, sset, 0.0) == (-1.0, 1.0)

    def test_segment_projection(self):
        inst, _ = plane_instance([(0, 0)], [(1, 1)])
        seg = SpaceSet.of_segment((-1.0, 1.0), (1.0, 1.0))
        elem, dist = nearest_in_set(inst, seg, (0.1, 0.0))
        assert elem[1] == 1.0
        assert math.isclose(elem[0], 0.1, abs_tol=1e-12)
        assert math.isclose(dist, 1.0, abs_tol=1e-12)
        # beyond an endpoint the projection clamps to it
        elem, dist = nearest_in_set(inst, seg, (5.0, 1.0))
        assert elem == (1.0, 1.0) and dist == 4.0

    def test_progression_requires_truncation(self):
        inst, _ = line_instance([0], [5])
        prog = SpaceSet.of_progression(7.0, 4.0)
        with pytest.raises(ValueError):
            nearest_in_set(inst, prog, 9.0)


class TestSetMinDistance:
    def test_finite_finite(self):
        inst, _ = line_instance([0, 10], [4, 7])
        assert set_min_distance(inst, inst.set_a, inst.set_b) == 3.0

    def test_finite_intervals(self):
        inst, _ = line_instance([-3, 0, 3, 4], [99])
        ivals = SpaceSet.of_intervals([(-2.0, -1.0), (1.0, 2.0)])
        assert set_min_distance(inst, inst.set_a, ivals) == 1.0

    def test_intervals_intervals_gap(self):
        inst, _ = line_instance([0], [5])
        s1 = SpaceSet.of_intervals([(0.0, 1.0)])
        s2 = SpaceSet.of_intervals([(3.0, 4.0), (1.5, 2.0)])
        assert set_min_distance(inst, s1, s2) == 0.5

    def test_parallel_segments(self):
        inst, _ = plane_instance([(0, 0)], [(1, 1)])
        s1 = SpaceSet.of_segment((-1.0, 1.0), (1.0, 1.0))
        s2 = SpaceSet.of_segment((-1.0, 0.0), (1.0, 0.0))
        assert set_min_distance(inst, s1, s2) == 1.0

    def test_crossing_segments_touch(self):
        inst, _ = plane_instance([(0, 0)], [(1, 1)])
        s1 = SpaceSet.of_segment((-1.0, -1.0), (1.0, 1.0))
        s2 = SpaceSet.of_segment((-1.0, 1.0), (1.0, -1.0))
        assert set_min_distance(inst, s1, s2) == 0.0


class TestValidation:
    def test_good_matrix_instance(self):
        m = [[0, 2, 3], [2, 0, 4], [3, 4, 0]]
        inst, _ = matrix_instance(m, [0], [1, 2])
        assert validate_instance(inst).ok

    def test_asymmetric_matrix(self):
        m = [[0, 2, 3], [5, 0, 4], [3, 4, 0]]
        inst, _ = matrix_instance(m, [0], [1, 2])
        assert "matrix-symmetric" in failed_names(validate_instance(inst))

    def test_triangle_violation(self):
        m = [[0, 1, 10], [1, 0, 1], [10, 1, 0]]
        inst, _ = matrix_instance(m, [0], [2])
        assert "matrix-triangle" in failed_names(validate_instance(inst))

    def test_negative_entry(self):
        m = [[0, -1], [-1, 0]]
        inst, _ = matrix_instance(m, [0], [1])
        assert "matrix-nonnegative" in failed_names(validate_instance(inst))

    def test_nonzero_diagonal(self):
        m = [[1, 2], [2, 0]]
        inst, _ = matrix_instance(m, [0], [1])
        assert "matrix-zero-diagonal" in failed_names(validate_instance(inst))

    def test_zero_off_diagonal(self):
        m = [[0, 0], [0, 0]]
        inst, _ = matrix_instance(m, [0], [1])
        assert "matrix-identity" in failed_names(validate_instance(inst))

    def test_overlapping_sets_rejected(self):
        inst, _ = line_instance([0, 1], [1, 2])
        assert "sets-disjoint" in failed_names(validate_instance(inst))

    def test_selfmap_requires_equal_sets(self):
        inst, _ = line_instance([0, 1], [0, 2], self_map=True)
        assert "self-map-sets-equal" in failed_names(validate_instance(inst))

    def test_selfmap_equal_sets_ok(self):
        inst, _ = line_instance([0, 1, 2], [0, 1, 2], self_map=True)
        assert validate_instance(inst).ok

    def test_duplicate_ids_rejected(self):
        pts = (Point(id=0, coords=(0.0,)), Point(id=0, coords=(1.0,)))
        inst = MetricInstance(
            space="euclidean-1d",
            set_a=SpaceSet.finite([0]),
            set_b=SpaceSet.finite([0]),
            points=pts,
        )
        assert "registry-ids-unique" in failed_names(validate_instance(inst))

    def test_wrong_arity_coords_rejected(self):
        pts = (Point(id=0, coords=(0.0, 1.0)), Point(id=1, coords=(5.0, 0.0)))
        inst = MetricInstance(
            space="euclidean-1d",
            set_a=SpaceSet.finite([0]),
            set_b=SpaceSet.finite([1]),
            points=pts,
        )
        assert "registry-coords" in failed_names(validate_instance(inst))

    def test_segment_set_rejected_on_line(self):
        seg = SpaceSet.of_segment((0.0, 0.0), (1.0, 0.0))
        inst = MetricInstance(
            space="euclidean-1d",
            set_a=SpaceSet.finite([0]),
            set_b=seg,
            points=(Point(id=0, coords=(9.0,)),),
        )
        assert "set-b-kind" in failed_names(validate_instance(inst))

    def test_plane_instance_ok(self):
        inst, _ = plane_instance([(1, 2), (1, 1)], [(0, 0), (0, 1)])
        assert validate_instance(inst).ok

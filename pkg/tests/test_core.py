from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import _oracles as orc
from mssc import (
    Assignment,
    ControlParams,
    DataSet,
    assignment_objective,
    barycenter,
    dedup,
    mssc_objective,
    natural_clustering,
)

coords = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


@st.composite
def data_and_centers(draw, max_m=12, max_k=5, max_n=3):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    k = draw(st.integers(1, max_k))
    X = draw(arrays(np.float64, (m, n), elements=coords))
    C = draw(arrays(np.float64, (k, n), elements=coords))
    return X, C


class TestDataSet:
    def test_read_only(self, tri):
        data = DataSet(tri)
        with pytest.raises(ValueError):
            data.points[0, 0] = 5.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            DataSet([[0.0, np.nan]])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            DataSet(np.empty((0, 2)))

    def test_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            DataSet([[0.0], [1.0]], weights=[1.0, 0.0])


class TestControlParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"gamma1": -0.1},
            {"gamma2": 1.5},
            {"gamma3": 0.99},
            {"delta": 0.0},
            {"tol_conv": -1.0},
            {"max_iter": 0},
            {"reduction_threshold": "mu"},
        ],
    )
    def test_ranges_enforced(self, kwargs):
        with pytest.raises(ValueError):
            ControlParams(**kwargs)

    def test_boundaries_accepted(self):
        p = ControlParams(gamma1=0.0, gamma2=1.0, gamma3=1.0)
        assert p.gammas == (0.0, 1.0, 1.0)


class TestDedup:
    def test_duplicates_collapse(self):
        out = dedup([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
        np.testing.assert_array_equal(out.points, [[0.0, 0.0], [1.0, 0.0]])
        np.testing.assert_array_equal(out.weights, [2.0, 1.0])

    def test_already_distinct_unchanged(self, tri):
        out = dedup(tri)
        np.testing.assert_array_equal(out.points, tri)
        np.testing.assert_array_equal(out.weights, [1.0, 1.0, 1.0])

    def test_singleton(self):
        out = dedup([[5.0, 5.0]])
        np.testing.assert_array_equal(out.points, [[5.0, 5.0]])
        np.testing.assert_array_equal(out.weights, [1.0])

    def test_first_occurrence_order_and_weight_sums(self):
        raw = DataSet([[3.0], [1.0], [3.0], [2.0], [1.0], [3.0]], weights=[1, 2, 1, 1, 1, 1])
        out = dedup(raw)
        np.testing.assert_array_equal(out.points.ravel(), [3.0, 1.0, 2.0])
        np.testing.assert_array_equal(out.weights, [3.0, 3.0, 1.0])

    @given(data_and_centers())
    @settings(max_examples=60, deadline=None)
    def test_objective_preserved(self, dc):
        X, C = dc
        X = np.vstack([X, X[: len(X) // 2]])
        assert mssc_objective(dedup(X), C) == pytest.approx(mssc_objective(X, C), rel=1e-12, abs=1e-12)


class TestNaturalClustering:
    def test_square_clusters(self, square):
        a = natural_clustering(square, [[2 / 3, 2 / 3], [0.0, 0.0]])
        assert [c.tolist() for c in a.clusters] == [[1, 2, 3], [0]]

    def test_single_centroid(self, tri):
        a = natural_clustering(tri, [[9.0, 9.0]])
        assert a.clusters[0].tolist() == [0, 1, 2]

    def test_duplicate_centroids_tie_to_lowest(self):
        a = natural_clustering([[0.0, 0.0], [2.0, 0.0]], [[1.0, 0.0], [1.0, 0.0]])
        assert a.clusters[0].tolist() == [0, 1]
        assert a.clusters[1].tolist() == []
        # both centroids attract both points
        assert [s.tolist() for s in a.attraction_sets] == [[0, 1], [0, 1]]

    def test_incidence_rows_sum_to_one(self, square):
        a = natural_clustering(square, [[0.0, 0.0], [1.0, 1.0], [0.5, 0.5]])
        assert np.all(a.incidence.sum(axis=1) == 1)

    @given(data_and_centers())
    @settings(max_examples=100, deadline=None)
    def test_matches_sequential_construction(self, dc):
        X, C = dc
        a = natural_clustering(X, C)
        assert a.labels.tolist() == orc.natural_clusters(X.tolist(), C.tolist())

    @given(data_and_centers())
    @settings(max_examples=100, deadline=None)
    def test_partition_and_attraction(self, dc):
        X, C = dc
        a = natural_clustering(X, C)
        members = np.concatenate(a.clusters)
        assert sorted(members.tolist()) == list(range(len(X)))
        for i, j in enumerate(a.labels):
            assert a.attraction[i, j]


class TestObjectives:
    def test_triangle_value(self, tri):
        assert mssc_objective(tri, [[0.0, 0.5], [1.0, 0.0]]) == pytest.approx(1 / 6, abs=1e-15)

    def test_square_global_value(self, square):
        assert mssc_objective(square, [[0.5, 0.0], [0.5, 1.0]]) == pytest.approx(1 / 4, abs=1e-15)

    def test_zero_residual(self, square):
        assert mssc_objective(square, square) == 0.0

    def test_weights_multiply_terms(self):
        data = DataSet([[0.0], [2.0]], weights=[3, 1])
        # (3*0 + 1*4) / 4 with the centroid at 0
        assert mssc_objective(data, [[0.0]]) == 1.0

    def test_compensated_summation_agrees(self, square):
        x = [[0.1, 0.2]]
        assert mssc_objective(square, x, compensated=True) == pytest.approx(mssc_objective(square, x), rel=1e-15)

    def test_natural_assignment_triangle(self, tri):
        x = [[0.0, 0.5], [1.0, 0.0]]
        a = natural_clustering(tri, x)
        assert assignment_objective(tri, x, a) == pytest.approx(1 / 6, abs=1e-15)

    def test_one_cluster_is_variance(self, square):
        x = [barycenter(square)]
        var = square.var(axis=0).sum()
        assert assignment_objective(square, x, np.zeros(4, dtype=int)) == pytest.approx(var, rel=1e-15)

    def test_non_natural_never_better_enumeration(self):
        X = [[0.0, 0.0], [3.0, 1.0], [-1.0, 2.0]]
        C = [[0.5, 0.5], [2.0, 2.0]]
        best = mssc_objective(X, C)
        values = []
        for labels in orc.all_labelings(3, 2):
            v = assignment_objective(X, C, np.array(labels))
            assert v == pytest.approx(orc.labelled_objective(X, C, labels), rel=1e-14)
            values.append(v)
        assert min(values) == pytest.approx(best, rel=1e-14)
        assert all(v >= best - 1e-14 for v in values)

    @pytest.mark.parametrize(
        "bad",
        [np.zeros(2, dtype=int), np.array([0, 0, 5]), np.array([0.0, 1.0, 0.0])],
    )
    def test_inconsistent_assignment(self, tri, bad):
        with pytest.raises(ValueError):
            assignment_objective(tri, [[0.0, 0.0], [1.0, 1.0]], bad)

    def test_assignment_cluster_count_mismatch(self, tri):
        a = Assignment.from_labels([0, 0, 0], 3)
        with pytest.raises(ValueError):
            assignment_objective(tri, [[0.0, 0.0], [1.0, 1.0]], a)

    @given(data_and_centers())
    @settings(max_examples=100, deadline=None)
    def test_assignment_objective_equals_mssc_on_natural(self, dc):
        X, C = dc
        a = natural_clustering(X, C)
        f = mssc_objective(X, C)
        assert assignment_objective(X, C, a) == pytest.approx(f, rel=1e-12, abs=1e-300)

    @given(data_and_centers(), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_centroid_permutation_invariance(self, dc, rnd):
        X, C = dc
        perm = list(range(len(C)))
        rnd.shuffle(perm)
        assert mssc_objective(X, C[perm]) == mssc_objective(X, C)

    def test_objective_vs_oracle_rational(self, square):
        x = [[Fraction(1, 3), Fraction(2, 3)], [Fraction(1), Fraction(0)]]
        exact = orc.objective(orc.to_fractions(square.tolist()), x)
        assert exact == Fraction(1, 3)
        assert mssc_objective(square, np.array(x, dtype=float)) == pytest.approx(float(exact), abs=1e-15)


class TestBarycenter:
    def test_triangle(self, tri):
        np.testing.assert_allclose(barycenter(tri), [1 / 3, 1 / 3], atol=1e-15)

    def test_square(self, square):
        np.testing.assert_array_equal(barycenter(square), [0.5, 0.5])

    def test_singleton(self):
        np.testing.assert_array_equal(barycenter([[2.5, -1.0]]), [2.5, -1.0])

    def test_weighted(self):
        np.testing.assert_array_equal(barycenter([[0.0], [4.0]], [3, 1]), [1.0])

    def test_empty(self):
        with pytest.raises(ValueError):
            barycenter(np.empty((0, 2)))

    @given(arrays(np.float64, st.tuples(st.integers(1, 8), st.integers(1, 3)), elements=coords))
    @settings(max_examples=60, deadline=None)
    def test_minimises_sum_of_squares(self, X):
        b = barycenter(X)
        base = ((X - b) ** 2).sum()
        # the gradient 2 * sum(b - a) vanishes
        np.testing.assert_allclose((b - X).sum(axis=0), 0.0, atol=1e-9 * (1 + np.abs(X).max()) * len(X))
        rng = np.random.default_rng(0)
        for step in rng.standard_normal((10, X.shape[1])):
            assert ((X - (b + 1e-3 * step)) ** 2).sum() >= base - 1e-9

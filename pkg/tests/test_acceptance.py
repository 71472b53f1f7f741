"""Acceptance criteria, one test each; ``pytest -v`` prints a PASS/FAIL line per criterion."""

import time

import numpy as np
import pytest

from _helpers import TRIANGLE, SQUARE, as_set, distinct_rows, random_instance, systems_as_set
from mssc import (
    AuxContext,
    ControlParams,
    algorithm1,
    algorithm2,
    barycenter,
    brute_force_global,
    cascade,
    cluster_stats,
    dedup,
    km_run,
    km_step,
    pairwise_distinct,
    reduced_candidates,
    verify_local,
)
from mssc.verify import NONTRIVIAL

TOL = 1e-9
RECOMMENDED = [(0.3, 0.3, 3.0), (0.5, 0.8, 1.5), (0.85, 0.99, 1.1)]


def _distinct_instances(seed, count, m_range=(5, 50), n_range=(1, 5), k_range=(2, 5)):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        X = dedup(random_instance(rng, m_range, n_range)).points
        k = int(rng.integers(k_range[0], k_range[1] + 1))
        if X.shape[0] >= k:
            out.append((np.array(X), k))
    return out


# Shared by criteria 4 and 5.
SUITE = _distinct_instances(400, 200)


def _level_inputs(X, trace):
    """Centroid system each level of a run started from."""
    systems = [barycenter(X).reshape(1, -1)]
    systems += [lv.chosen for lv in trace.levels[:-1]]
    return systems


def test_criterion_1_triangle_trace(criterion):
    with criterion("1 three-point triangle full trace, both algorithms, < 1 s"):
        t0 = time.perf_counter()
        params = ControlParams(0.3, 0.3, 3.0)
        ctx = AuxContext.build(TRIANGLE, [barycenter(TRIANGLE)])
        np.testing.assert_allclose(ctx.d, [2 / 9, 5 / 9, 5 / 9], atol=TOL)

        c1, t1 = algorithm1(TRIANGLE, 2, params)
        c2, _, t2 = algorithm2(TRIANGLE, 2, params)
        lv = t1.levels[0]
        detail = lv.detail
        np.testing.assert_allclose(detail["a1_decrease"], [2 / 27, 5 / 27, 5 / 27], atol=TOL)
        assert lv.z1max == pytest.approx(5 / 27, abs=TOL)
        assert detail["a1"] == [0, 1, 2]
        assert as_set(detail["a2"]) == as_set(TRIANGLE)
        assert as_set(detail["a4"]) == {(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)}
        g = dict(zip(map(tuple, detail["a4"]), detail["a4_objective"]))
        assert g[(0.0, 0.0)] == pytest.approx(10 / 27, abs=TOL)
        assert g[(1.0, 0.0)] == pytest.approx(7 / 27, abs=TOL)
        assert g[(0.0, 1.0)] == pytest.approx(7 / 27, abs=TOL)
        assert lv.f_min == pytest.approx(7 / 27, abs=TOL)
        # same cascade inside algorithm 2
        assert t2.levels[0].detail["a1"] == [0, 1, 2]

        solutions = {((0.0, 0.5), (1.0, 0.0)), ((0.5, 0.0), (0.0, 1.0))}
        for centers, trace in ((c1, t1), (c2, t2)):
            assert trace.final_objective == pytest.approx(1 / 6, abs=TOL)
            rounded = tuple(tuple(round(v, 12) + 0.0 for v in row) for row in centers)
            assert rounded in solutions
        assert time.perf_counter() - t0 < 1.0


def test_criterion_2_square(criterion):
    with criterion("2 unit square: objective 1/3, oracle 1/4 with two optima, verified local, < 1 s"):
        t0 = time.perf_counter()
        for gammas in RECOMMENDED:
            params = ControlParams(*gammas)
            c1, t1 = algorithm1(SQUARE, 2, params)
            c2, _, t2 = algorithm2(SQUARE, 2, params)
            for centers, trace in ((c1, t1), (c2, t2)):
                assert trace.final_objective == pytest.approx(1 / 3, abs=TOL)
                assert verify_local(SQUARE, centers).classification == NONTRIVIAL
        oracle = brute_force_global(SQUARE, 2)
        assert oracle.objective == pytest.approx(0.25, abs=TOL)
        assert systems_as_set(oracle.optima) == {((0.5, 0.0), (0.5, 1.0)), ((0.0, 0.5), (1.0, 0.5))}
        assert time.perf_counter() - t0 < 1.0


def test_criterion_3_km_step_distinctness(criterion):
    with criterion("3 km_step keeps distinct centroids distinct (1000 instances)"):
        rng = np.random.default_rng(300)
        failures = 0
        for _ in range(1000):
            X = random_instance(rng, (5, 50), (1, 5))
            k = int(rng.integers(2, 6))
            x = distinct_rows(rng, k, X.shape[1])
            if not pairwise_distinct(km_step(X, x)):
                failures += 1
        assert failures == 0


def test_criterion_4_algorithm2_distinct(criterion):
    with criterion("4 every procedure2 output and algorithm2 result distinct (200 data sets)"):
        failures = 0
        for X, k in SUITE:
            centers, _, trace = algorithm2(X, k)
            failures += not pairwise_distinct(centers)
            for lv in trace.levels:
                failures += sum(not pairwise_distinct(np.asarray(s)) for s in lv.detail["a4"])
                failures += not pairwise_distinct(lv.chosen)
        assert failures == 0


def test_criterion_5_level_monotonicity(criterion):
    with criterion("5 per-level objective strictly decreasing (200 data sets)"):
        bad = []
        for idx, (X, k) in enumerate(SUITE):
            objectives = algorithm2(X, k)[-1].objectives
            if not np.all(np.diff(objectives) < 1e-12):
                bad.append(idx)
        assert bad == []


def test_criterion_6_oracle_dominance(criterion):
    with criterion("6 oracle f* <= algorithm2, attained on >= 60% (50 instances)"):
        instances = _distinct_instances(600, 50, m_range=(3, 10), n_range=(1, 3), k_range=(2, 3))
        attained = 0
        for X, k in instances:
            f_alg = algorithm2(X, k)[-1].final_objective
            f_star = brute_force_global(X, k).objective
            assert f_star <= f_alg + 1e-12
            attained += f_alg <= f_star + 1e-12
        print(f"\nalgorithm2 attained f* on {attained}/{len(instances)} instances")
        assert attained >= 0.6 * len(instances)


def test_criterion_7_reduction(criterion):
    with criterion("7 reduction: subset of unreduced set, far sets nonempty, criteria 4-5 hold"):
        instances = _distinct_instances(700, 50)
        params = ControlParams(reduce=True)
        for X, k in instances:
            centers, _, trace = algorithm2(X, k, params)
            assert pairwise_distinct(centers)
            assert np.all(np.diff(trace.objectives) < 1e-12)
            for xbar, lv in zip(_level_inputs(X, trace), trace.levels):
                assert pairwise_distinct(lv.chosen)
                ctx = AuxContext.build(X, xbar)
                stats = cluster_stats(X, xbar)
                assert all(s.far_points.size > 0 for s in stats)
                reduced = reduced_candidates(ctx, stats, params.gamma1)
                full = cascade(ctx, params.gamma1, params.gamma2).a1
                assert set(reduced.tolist()) <= set(full.tolist())


def test_criterion_8_km_monotone_termination(criterion):
    with criterion("8 KM non-increasing and reaches a fixed point within 1000 iterations (500 starts)"):
        rng = np.random.default_rng(800)
        for _ in range(500):
            X = random_instance(rng, (5, 50), (1, 5))
            k = int(rng.integers(2, 6))
            x0 = distinct_rows(rng, k, X.shape[1])
            res = km_run(X, x0, tol_conv=0.0, max_iter=1000)
            assert res.converged and res.iterations <= 1000
            assert np.all(np.diff(res.history) <= 1e-12)
            np.testing.assert_array_equal(km_step(X, res.centers), res.centers)

"""Smoke tests for the Python extension module."""

import math

import numpy as np
import pytest

rs = pytest.importorskip("_relsmooth")


@pytest.fixture(scope="module")
def dopt_instance():
    rng = np.random.default_rng(7)
    H = rng.standard_normal((3, 10))
    objective = rs.DOptimalDesign(H)
    reference = rs.SimplexLogBarrier(10)
    pair = rs.RelSmoothPair(objective, reference, 1.0, 0.0)
    return H, objective, reference, pair


def test_simplex_subproblem_feasibility():
    reference = rs.SimplexLogBarrier(6)
    rng = np.random.default_rng(0)
    for _ in range(20):
        sol = reference.solve_subproblem(rng.standard_normal(6) * 3.0)
        assert sol.x.min() > 0.0
        assert abs(sol.x.sum() - 1.0) <= 1e-12
        assert sol.residual <= 1e-10


def test_bregman_distance_euclidean():
    reference = rs.EuclideanReference(3)
    x = np.array([1.0, 2.0, -1.0])
    y = np.array([0.5, 0.0, 1.0])
    expected = 0.5 * np.sum((y - x) ** 2)
    assert rs.bregman_distance(reference, y, x) == pytest.approx(expected)


def test_primal_gradient_descends_and_meets_bound(dopt_instance):
    _, objective, reference, pair = dopt_instance
    x0 = np.full(10, 0.1)
    trace = rs.primal_gradient(pair, x0, max_iters=500, record_every=1)
    values = [row.f for row in trace.rows]
    assert all(b <= a + 1e-12 * (1 + abs(a)) for a, b in zip(values, values[1:]))

    oracle = rs.frank_wolfe_dopt(
        objective, x0, max_iters=2_000_000, record_every=10_000_000,
        stationarity_target=1e-5,
    )
    x_star = (1 - 1e-10) * oracle.rows[-1].x + 1e-10 * x0
    report = rs.check_bound_on_trace(trace, pair, x_star)
    assert report.pass_


def test_dual_averaging_starts_at_center(dopt_instance):
    _, _, reference, pair = dopt_instance
    trace = rs.dual_averaging(pair, max_iters=50)
    np.testing.assert_allclose(trace.x0, np.full(10, 0.1))
    assert trace.rows[-1].best_f <= trace.rows[0].f


def test_certificate_pass_and_fail(dopt_instance):
    _, objective, reference, _ = dopt_instance
    sampler = rs.InteriorSampler(rs.Domain.unit_simplex(10), seed=3)
    good = rs.check_gradient_monotonicity(objective, reference, 1.0, 0.0, sampler)
    assert good.pass_
    assert good.note == "sampled certificate"


def test_eval_bound_and_iteration_bound():
    assert rs.eval_bound(4.0, 0.0, 10, 2.0, rs.BoundKind.THEOREM1_RIGHT) == \
        pytest.approx(0.8)
    assert rs.dopt_iteration_bound(10, 1.0, 1.0) == 14
    assert rs.dopt_iteration_bound(10, 2.0, 0.01) == 11983


def test_power_norm_reference_subproblem():
    reference = rs.PowerNormReference(2, 4)
    sol = reference.solve_subproblem(np.zeros(4))
    np.testing.assert_array_equal(sol.x, np.zeros(4))
    c = np.array([1.0, 0.0, 0.0, 0.0])
    sol = reference.solve_subproblem(c)
    assert sol.residual <= 1e-10


def test_composite_with_python_callbacks():
    # f = h = 1/2 x^2 with P = |x|: the first step soft-thresholds to zero.
    objective = rs.QuarticObjective(
        np.zeros((1, 1)), np.zeros(1), np.eye(1), np.zeros(1))
    reference = rs.EuclideanReference(1)
    pair = rs.RelSmoothPair(objective, reference, 1.0, 0.0)

    def p_value(x):
        return abs(x[0])

    def p_subproblem(c, scale):
        z = -c[0]
        return np.array([math.copysign(max(abs(z) - scale, 0.0), z)])

    trace = rs.composite_primal_gradient(
        pair, p_value, p_subproblem, np.array([3.0]), max_iters=1)
    assert trace.rows[-1].x[0] == 0.0


def test_quartic_auto_constants():
    objective = rs.QuarticObjective(
        np.eye(2), np.zeros(2), np.eye(2), np.zeros(2), np.eye(2))
    assert objective.auto_smoothness() == pytest.approx(7.0)
    assert objective.auto_strong_convexity() == pytest.approx(1.0 / 3.0)


def test_spec_round_trip():
    spec = """{
      "kind": "dopt", "m": 2, "n": 5,
      "H": "random-normal", "seed": 11
    }"""
    pair = rs.build_pair_from_spec(spec, ".")
    assert pair.L == 1.0
    assert pair.mu == 0.0
    x0 = rs.default_start(pair)
    assert x0.shape == (5,)
    assert abs(x0.sum() - 1.0) <= 1e-12


def test_error_mapping():
    with pytest.raises(ValueError):
        rs.RelSmoothPair(
            rs.QuarticObjective(np.zeros((1, 2)), np.zeros(1), np.eye(2),
                                np.zeros(2)),
            rs.EuclideanReference(2), 0.0, 0.0)

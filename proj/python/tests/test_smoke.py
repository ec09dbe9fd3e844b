import math

import numpy as np
import pytest

import qwstar


def test_graph_sizes():
    g = qwstar.GluedGraph(3, 1)
    assert g.vertex_count == 4
    assert g.arc_count == 8
    assert g.degree(0) == 3
    assert qwstar.class_sizes(100, 10) == [9702, 99, 99, 10, 10]
    assert qwstar.leaves_from_alpha(10, 1.5) == 31


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        qwstar.GluedGraph(2, 1)
    with pytest.raises(ValueError):
        qwstar.simulate_collapsed(10, 1, 5, leaf_phase="sideways")


def test_evaluators_agree():
    full = qwstar.simulate_full(12, 3, 100)
    coll = qwstar.simulate_collapsed(12, 3, 100)
    closed = qwstar.simulate_closed(12, 3, 100)
    assert len(full["p_vstar"]) == 101
    assert full["p_vstar"][0] == pytest.approx(1 / 12, abs=1e-12)
    np.testing.assert_allclose(full["p_vstar"], coll["p_vstar"], atol=1e-10)
    np.testing.assert_allclose(closed["p_vstar"], coll["p_vstar"], atol=1e-10)


def test_peak_near_optimal_time():
    trace = qwstar.simulate_collapsed(100, 1, 300)
    peak = int(np.argmax(trace["p_vstar"]))
    assert abs(peak - 111) <= 2
    assert qwstar.optimal_time_exact(100, 1) == 111
    assert qwstar.optimal_time_branch(100, 0.0) == 111


def test_spectrum_and_operators():
    a = qwstar.discriminant_angles(3, 1)
    assert a["cos_theta_1"] == pytest.approx(0.879153, abs=1e-6)
    report = qwstar.spectrum(100, 10)
    assert report["max_residual"] < 1e-10
    assert len(report["eigenpairs"]) == 5
    ops = qwstar.reduced_operators(10, 3)
    u0 = ops["U0"]
    np.testing.assert_allclose(u0.T @ u0, np.eye(5), atol=1e-14)
    assert qwstar.closed_form_probability(10, 3, 0) == pytest.approx(0.1, abs=1e-12)


def test_plain_baseline_is_flat():
    trace = qwstar.simulate_collapsed(100, 1, 500, leaf_phase="plain")
    assert max(trace["p_vstar"]) < 0.1


def test_exponent_fit():
    fit = qwstar.exponent_fit(0.0, [256, 1024, 4096, 16384, 65536])
    assert abs(fit["fitted_exponent"] - 1.0) < 0.05
    assert qwstar.theta1_approx(100, 1.0) == pytest.approx(0.1)
    assert qwstar.probability_approx(100, 0.0, 0) == 0.0
    assert math.isclose(qwstar.__version__.count("."), 2)

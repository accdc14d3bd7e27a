import numpy as np
import pytest

from norming_lab import (SpaceDescriptor, hausdorff_distance, lipschitz_audit,
                         norming_constant, perturbation_experiment, stability_ball)

P1 = SpaceDescriptor.polynomial(1, 1)


def test_hausdorff_known():
    assert hausdorff_distance([[0.0]], [[1.0]]) == pytest.approx(1.0)
    assert hausdorff_distance([[0.0], [1.0]], [[0.0]]) == pytest.approx(1.0)
    a = [[0.0, 0.0], [1.0, 1.0]]
    b = [[0.1, 0.0], [1.0, 0.8]]
    assert hausdorff_distance(a, b) == hausdorff_distance(b, a)
    with pytest.raises(ValueError):
        hausdorff_distance([[0.0]], [[0.0, 0.0]])


def test_lipschitz_equality_case():
    rep = lipschitz_audit(P1, [[-1.0], [1.0]], [[-0.9], [0.9]], budget=20001)
    assert rep.lhs == pytest.approx(0.1, abs=1e-9)
    assert rep.rhs == pytest.approx(0.1, abs=1e-12)
    assert rep.satisfied
    assert rep.status == "satisfied"


def test_lipschitz_with_non_norming_side():
    # reciprocal of a non-norming set is 0 by convention
    P2 = SpaceDescriptor.polynomial(1, 2)
    rep = lipschitz_audit(P2, [[-1.0], [0.0], [1.0]], [[-1.0], [1.0]],
                          budget=20001)
    assert rep.inv_n2 == 0.0
    assert rep.lhs == pytest.approx(0.8, abs=1e-6)


def test_stability_ball_radius_and_bound():
    ball = stability_ball(P1, [[-1.0], [1.0]], budget=20001)
    assert ball.radius == pytest.approx(1.0, rel=1e-9)
    b = ball.bound_for([[-0.9], [0.9]])
    actual = norming_constant(P1, [[-0.9], [0.9]], budget=20001).value
    assert b == pytest.approx(actual, rel=1e-6)
    assert ball.bound_for([[5.0], [-5.0]]) is None


def test_stability_ball_requires_norming_center():
    P2 = SpaceDescriptor.polynomial(1, 2)
    with pytest.raises(ValueError):
        stability_ball(P2, [[-1.0], [1.0]])


def test_perturbation_experiment_deterministic():
    pts = [[-0.8], [0.1], [0.9]]
    P2 = SpaceDescriptor.polynomial(1, 2)
    rows1 = perturbation_experiment(P2, pts, [0.05, 0.1], trials=10, seed=3,
                                    budget=10001)
    rows2 = perturbation_experiment(P2, pts, [0.05, 0.1], trials=10, seed=3,
                                    budget=10001)
    assert rows1 == rows2
    for row in rows1:
        assert row.within_markov
        assert row.trials == 10

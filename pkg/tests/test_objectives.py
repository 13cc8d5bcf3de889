"""Quadratic objectives, the seeded SPD factory and the finite-difference oracle."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rudopt import (
    MatrixQuadratic,
    Method,
    ScalarQuadratic,
    check_gradient,
    finite_diff_grad,
    make_random_spd,
    make_schedule,
    quad_eval_grad,
    run,
)


class TestScalarQuadratic:
    def test_value_and_gradient(self):
        f = ScalarQuadratic()
        assert f.eval(np.array([3.0])) == 4.5
        assert f.grad(np.array([3.0]))[0] == 3.0  # exactly theta

    def test_finite_difference_agrees(self):
        f = ScalarQuadratic()
        fd = finite_diff_grad(f, np.array([3.0]), 1e-6)
        assert fd[0] == pytest.approx(3.0, abs=1e-8)


class TestMakeRandomSpd:
    def test_one_dimensional_unit_eigenvalue(self):
        q = make_random_spd(1, seed=5, cond_low=1.0, cond_high=1.0)
        assert_allclose(q.A, [[1.0]], atol=1e-12)

    def test_eigenvalues_inside_requested_range(self):
        q = make_random_spd(50, seed=7, cond_low=0.01, cond_high=1.0)
        eigs = np.linalg.eigvalsh(q.A)
        assert eigs.min() >= 0.01 - 1e-10
        assert eigs.max() <= 1.0 + 1e-10

    def test_deterministic_bitwise(self):
        a = make_random_spd(20, seed=42, cond_low=0.1, cond_high=2.0)
        b = make_random_spd(20, seed=42, cond_low=0.1, cond_high=2.0)
        assert np.array_equal(a.A, b.A)
        assert np.array_equal(a.b, b.b)

    def test_symmetry(self):
        q = make_random_spd(30, seed=3)
        assert np.array_equal(q.A, q.A.T)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            make_random_spd(0, seed=1)
        with pytest.raises(ValueError):
            make_random_spd(5, seed=1, cond_low=0.5, cond_high=0.1)
        with pytest.raises(ValueError):
            make_random_spd(5, seed=1, cond_low=0.0, cond_high=1.0)


class TestQuadEvalGrad:
    def test_gradient_vanishes_at_minimizer(self):
        q = make_random_spd(12, seed=6)
        _, grad = quad_eval_grad(q, q.minimizer())
        assert np.max(np.abs(grad)) < 1e-10

    def test_identity_case(self):
        q = MatrixQuadratic(np.eye(3), np.zeros(3))
        theta = np.array([1.0, -2.0, 0.5])
        value, grad = quad_eval_grad(q, theta)
        assert value == pytest.approx(0.5 * np.dot(theta, theta))
        assert_allclose(grad, theta)

    def test_matches_finite_differences(self):
        q = make_random_spd(15, seed=9)
        theta = np.random.default_rng(3).standard_normal(15)
        worst = check_gradient(q, theta, rel_tol=1e-6)
        assert worst < 1e-6

    def test_dimension_mismatch_rejected(self):
        q = make_random_spd(4, seed=1)
        with pytest.raises(ValueError):
            q.eval(np.zeros(5))


class TestFiniteDiff:
    def test_constant_objective_zero_gradient(self):
        class Const:
            dim = 3
            def eval(self, theta):
                return 7.0

        assert_allclose(finite_diff_grad(Const(), np.ones(3), 1e-6), np.zeros(3))

    def test_per_coordinate_steps(self):
        q = make_random_spd(6, seed=13)
        theta = np.linspace(-2, 2, 6)
        h = 1e-6 * np.maximum(1.0, np.abs(theta))
        fd = finite_diff_grad(q, theta, h)
        assert_allclose(fd, q.grad(theta), rtol=1e-6, atol=1e-9)

    def test_rejects_nonpositive_step(self):
        with pytest.raises(ValueError):
            finite_diff_grad(ScalarQuadratic(), np.array([1.0]), 0.0)

    def test_check_gradient_catches_wrong_gradient(self):
        class Wrong(ScalarQuadratic):
            def grad(self, theta):
                return super().grad(theta) + 0.5

        with pytest.raises(AssertionError):
            check_gradient(Wrong(), np.array([1.0]))


class TestObjectiveContracts:
    def test_matrix_quadratic_rejects_asymmetric(self):
        A = np.array([[1.0, 0.2], [0.1, 1.0]])
        with pytest.raises(ValueError):
            MatrixQuadratic(A, np.zeros(2))

    def test_purity(self):
        q = make_random_spd(8, seed=17)
        theta = np.random.default_rng(1).standard_normal(8)
        assert q.eval(theta) == q.eval(theta)
        assert np.array_equal(q.grad(theta), q.grad(theta))

    def test_gd_gradient_norm_contracts(self):
        """GD with alpha=0.2 on eigenvalues in [0.01, 1] shrinks the gradient monotonically."""
        q = make_random_spd(40, seed=19, cond_low=0.01, cond_high=1.0)
        theta1 = np.random.default_rng(4).standard_normal(40)
        trace = run(Method.GD, q, theta1, make_schedule("constant", 0.2, 0.0), 60)
        norms = [np.linalg.norm(q.grad(theta)) for theta in trace.thetas]
        assert all(b < a for a, b in zip(norms, norms[1:]))
        assert norms[-1] < norms[0] * 0.998**59 * 1.0001

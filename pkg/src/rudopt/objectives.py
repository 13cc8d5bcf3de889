"""Objective functions for the optimizer benchmarks.

An objective exposes `dim`, `eval(theta) -> float` and
`grad(theta) -> ndarray`; both must be pure.  `eval_grad` bundles the two
for callers that want a single evaluation.  The finite-difference helper
is the independent oracle used to verify every analytic gradient.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Objective",
    "ScalarQuadratic",
    "MatrixQuadratic",
    "make_random_spd",
    "quad_eval_grad",
    "finite_diff_grad",
    "check_gradient",
]


class Objective:
    """Base class: differentiable scalar function of a parameter vector."""

    dim: int

    def eval(self, theta) -> float:
        raise NotImplementedError

    def grad(self, theta) -> np.ndarray:
        raise NotImplementedError

    def eval_grad(self, theta):
        return self.eval(theta), self.grad(theta)


class ScalarQuadratic(Objective):
    """J(theta) = theta^2 / 2 with gradient exactly theta."""

    dim = 1

    def eval(self, theta) -> float:
        theta = np.asarray(theta, dtype=np.float64)
        return float(0.5 * theta[0] * theta[0])

    def grad(self, theta) -> np.ndarray:
        return np.asarray(theta, dtype=np.float64).copy()


@dataclass(frozen=True)
class MatrixQuadratic(Objective):
    """J(theta) = theta'A theta / 2 - theta'b for symmetric positive-definite A."""

    A: np.ndarray
    b: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        A, b = self.A, self.b
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if b.shape != (A.shape[0],):
            raise ValueError(f"b shape {b.shape} does not match A shape {A.shape}")
        if not np.allclose(A, A.T, atol=1e-12, rtol=0.0):
            raise ValueError("A must be symmetric to within 1e-12")
        object.__setattr__(self, "dim", A.shape[0])

    def eval(self, theta) -> float:
        theta = np.asarray(theta, dtype=np.float64)
        self._check_dim(theta)
        return float(0.5 * theta @ (self.A @ theta) - theta @ self.b)

    def grad(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=np.float64)
        self._check_dim(theta)
        return self.A @ theta - self.b

    def _check_dim(self, theta):
        if theta.shape != (self.dim,):
            raise ValueError(f"theta shape {theta.shape} does not match dim {self.dim}")

    def minimizer(self) -> np.ndarray:
        """theta* solving A theta* = b."""
        return np.linalg.solve(self.A, self.b)

    def min_value(self) -> float:
        return self.eval(self.minimizer())


def make_random_spd(dim: int, seed: int, cond_low: float = 0.01,
                    cond_high: float = 1.0) -> MatrixQuadratic:
    """Seeded random SPD quadratic with eigenvalues inside [cond_low, cond_high].

    A = Q' D Q where Q comes from the QR factorization of a standard-normal
    matrix (sign-fixed so the factorization is unique) and D holds
    log-uniform eigenvalues.  b is standard normal scaled by 1/sqrt(dim).
    Deterministic for a given (dim, seed, range).
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if not 0 < cond_low <= cond_high:
        raise ValueError(f"need 0 < cond_low <= cond_high, got [{cond_low}, {cond_high}]")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    eigs = np.exp(rng.uniform(np.log(cond_low), np.log(cond_high), size=dim))
    A = (q.T * eigs) @ q
    A = 0.5 * (A + A.T)  # kill rounding asymmetry
    b = rng.standard_normal(dim) / np.sqrt(dim)
    return MatrixQuadratic(A=A, b=b)


def quad_eval_grad(q: MatrixQuadratic, theta):
    """Value and gradient of a matrix quadratic in one call."""
    theta = np.asarray(theta, dtype=np.float64)
    grad = q.A @ theta - q.b
    value = float(0.5 * theta @ (q.A @ theta) - theta @ q.b)
    return value, grad


def finite_diff_grad(f, theta, h=1e-6) -> np.ndarray:
    """Central-difference gradient (f(x+h*e_i) - f(x-h*e_i)) / (2h).

    `h` may be a scalar or a per-coordinate array of positive steps.
    """
    theta = np.asarray(theta, dtype=np.float64)
    h = np.broadcast_to(np.asarray(h, dtype=np.float64), theta.shape)
    if not np.all(h > 0):
        raise ValueError("finite-difference step must be positive")
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        step = np.zeros_like(theta)
        step[i] = h[i]
        grad[i] = (f.eval(theta + step) - f.eval(theta - step)) / (2.0 * h[i])
    return grad


def check_gradient(f, theta, rel_tol=1e-5, coords=None) -> float:
    """Worst relative mismatch between analytic and central-difference gradient.

    Uses the per-coordinate step h_i = 1e-6 * max(1, |theta_i|) and the
    floored relative error |fd - g| / max(1, |g|).  Raises AssertionError
    when the worst mismatch exceeds rel_tol.  `coords` restricts the check
    to a subset of coordinates (useful for large parameter vectors).
    """
    theta = np.asarray(theta, dtype=np.float64)
    analytic = np.asarray(f.grad(theta), dtype=np.float64)
    if coords is None:
        coords = range(theta.size)
    worst = 0.0
    for i in coords:
        h = 1e-6 * max(1.0, abs(theta[i]))
        step = np.zeros_like(theta)
        step[i] = h
        fd = (f.eval(theta + step) - f.eval(theta - step)) / (2.0 * h)
        err = abs(fd - analytic[i]) / max(1.0, abs(analytic[i]))
        worst = max(worst, err)
    if worst > rel_tol:
        raise AssertionError(f"gradient check failed: worst relative error {worst:.3e}")
    return worst

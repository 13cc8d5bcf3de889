"""First-order optimizers built around update-vector descent.

Implements six step rules over a shared (theta, velocity) state:

    GD             theta' = theta - alpha * g(theta)
    MOM            v' = mu*v - alpha * g(theta)
    NAG            v' = mu*v - alpha * g(theta + mu*v)
    NAG_ORIGINAL   y  = (1+mu)*theta - mu*theta_prev;  theta' = y - alpha*g(y)
    NAG_TWO_STAGE  vt = (1-alpha*gamma)*v;  v' = vt - alpha*g(theta + vt)
    RUD            v' = mu*v - alpha * g(theta + v)

with theta' = theta + v' throughout.  RUD evaluates the gradient at the
full lookahead theta + v; NAG shrinks the lookahead by mu.  All three NAG
formulations generate identical iterates for constant (alpha, mu) with
gamma = (1 - mu) / alpha.

Steps are pure functions from state to state; `run` iterates one method
for T iterations and records the trajectory.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Method",
    "Schedule",
    "OptimizerState",
    "Trace",
    "DivergenceError",
    "make_schedule",
    "initial_state",
    "step_gd",
    "step_mom",
    "step_nag",
    "step_nag_original",
    "step_nag_two_stage",
    "step_rud",
    "run",
]

# Abort threshold for the run-loop guard.  A diverging method on the test
# problems grows geometrically, so any sane run stays far below this.
DIVERGENCE_GUARD = 1e50


class Method(Enum):
    """Closed enumeration of the implemented step rules."""

    GD = "gd"
    MOM = "mom"
    NAG = "nag"
    NAG_ORIGINAL = "nag-original"
    NAG_TWO_STAGE = "nag-two-stage"
    RUD = "rud"


class DivergenceError(RuntimeError):
    """Raised when a run produces non-finite values or the objective blows up.

    Carries the failing iteration and, for run-level aborts, the partial
    trace accumulated before the failure.
    """

    def __init__(self, message, iteration, trace=None):
        super().__init__(message)
        self.iteration = iteration
        self.trace = trace


@dataclass(frozen=True)
class Schedule:
    """Per-iteration learning rate alpha_t and momentum mu_t.

    gamma_t is never an independent knob; it is derived from the identity
    mu_t = 1 - alpha_t * gamma_t.  Iterations are 1-based: the step from
    theta_t to theta_{t+1} uses alpha(t), mu(t).
    """

    kind: str
    alpha0: float
    mu0: float = 0.0

    def alpha(self, t: int) -> float:
        return self.alpha0

    def mu(self, t: int) -> float:
        if self.kind == "nesterov":
            return 1.0 - 3.0 / (5.0 + t)
        return self.mu0

    def gamma(self, t: int) -> float:
        return (1.0 - self.mu(t)) / self.alpha(t)


def make_schedule(kind: str, alpha0: float, mu0: float = 0.0) -> Schedule:
    """Build a constant or Nesterov schedule.

    'constant' keeps alpha_t = alpha0 and mu_t = mu0 for all t; 'nesterov'
    keeps alpha_t = alpha0 and sets mu_t = 1 - 3/(5+t), which increases
    towards 1 (mu_1 = 0.5).  mu0 is ignored for the nesterov kind.
    """
    if kind not in ("constant", "nesterov"):
        raise ValueError(f"unknown schedule kind {kind!r}")
    if not alpha0 > 0:
        raise ValueError(f"alpha0 must be positive, got {alpha0}")
    if kind == "constant" and not 0.0 <= mu0 <= 1.0:
        raise ValueError(f"mu0 must lie in [0, 1], got {mu0}")
    return Schedule(kind=kind, alpha0=float(alpha0), mu0=float(mu0))


@dataclass(frozen=True)
class OptimizerState:
    """Current parameters theta_t and update vector v_t at iteration t >= 1."""

    theta: np.ndarray
    velocity: np.ndarray
    iteration: int

    def __post_init__(self):
        if self.theta.shape != self.velocity.shape:
            raise ValueError(
                f"theta shape {self.theta.shape} != velocity shape {self.velocity.shape}"
            )
        if self.iteration < 1:
            raise ValueError(f"iteration must be >= 1, got {self.iteration}")


def initial_state(theta1) -> OptimizerState:
    """State at t = 1: given parameters and zero velocity."""
    theta1 = np.asarray(theta1, dtype=np.float64)
    if not np.all(np.isfinite(theta1)):
        raise ValueError("initial parameters must be finite")
    return OptimizerState(theta=theta1, velocity=np.zeros_like(theta1), iteration=1)


@dataclass(frozen=True)
class Trace:
    """Per-iteration record of a run: t, theta_t, v_t and J(theta_t).

    Stored as stacked arrays; `records` yields (t, theta, velocity, value)
    tuples in iteration order.
    """

    ts: np.ndarray          # (T,) int
    thetas: np.ndarray      # (T, dim)
    velocities: np.ndarray  # (T, dim)
    values: np.ndarray      # (T,)

    def __len__(self):
        return len(self.ts)

    @property
    def records(self):
        return list(zip(self.ts.tolist(), self.thetas, self.velocities, self.values.tolist()))


def _checked_grad(f, point, iteration):
    g = np.asarray(f.grad(point), dtype=np.float64)
    if not np.all(np.isfinite(g)):
        raise DivergenceError(
            f"non-finite gradient at iteration {iteration}", iteration
        )
    return g


def step_gd(state: OptimizerState, f, alpha: float) -> OptimizerState:
    """Plain gradient descent; the recorded velocity is the applied update."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    g = _checked_grad(f, state.theta, state.iteration)
    v_new = -alpha * g
    return OptimizerState(state.theta + v_new, v_new, state.iteration + 1)


def _check_mu_alpha(alpha, mu):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")


def step_mom(state: OptimizerState, f, alpha: float, mu: float) -> OptimizerState:
    """Classical momentum: v' = mu*v - alpha*g(theta), theta' = theta + v'."""
    _check_mu_alpha(alpha, mu)
    g = _checked_grad(f, state.theta, state.iteration)
    v_new = mu * state.velocity - alpha * g
    return OptimizerState(state.theta + v_new, v_new, state.iteration + 1)


def step_nag(state: OptimizerState, f, alpha: float, mu: float) -> OptimizerState:
    """Nesterov step in velocity form: gradient taken at theta + mu*v."""
    _check_mu_alpha(alpha, mu)
    g = _checked_grad(f, state.theta + mu * state.velocity, state.iteration)
    v_new = mu * state.velocity - alpha * g
    return OptimizerState(state.theta + v_new, v_new, state.iteration + 1)


def step_nag_original(theta_t, theta_prev, f, alpha: float, mu: float) -> np.ndarray:
    """Nesterov step in two-point form.

    Smooths the previous two parameter values, y = (1+mu)*theta_t -
    mu*theta_prev, and descends from there.  For the first step pass
    theta_prev = theta_t, which reproduces the velocity form with v_1 = 0.
    Returns theta_{t+1}; the intermediate y is not retained.
    """
    _check_mu_alpha(alpha, mu)
    theta_t = np.asarray(theta_t, dtype=np.float64)
    theta_prev = np.asarray(theta_prev, dtype=np.float64)
    if theta_t.shape != theta_prev.shape:
        raise ValueError("theta_t and theta_prev must have the same shape")
    y = (1.0 + mu) * theta_t - mu * theta_prev
    g = np.asarray(f.grad(y), dtype=np.float64)
    if not np.all(np.isfinite(g)):
        raise DivergenceError("non-finite gradient at smoothed point", iteration=None)
    return y - alpha * g


def step_nag_two_stage(state: OptimizerState, f, alpha: float, gamma: float) -> OptimizerState:
    """Nesterov step as a two-stage update descent.

    First a descent step on the regulariser alone, vt = (1 - alpha*gamma)*v,
    then a descent step on the lookahead objective at theta + vt.  With
    mu = 1 - alpha*gamma this is algebraically the velocity-form NAG step.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if alpha * gamma > 1.0:
        raise ValueError(f"alpha*gamma must be <= 1, got {alpha * gamma}")
    v_tilde = (1.0 - alpha * gamma) * state.velocity
    g = _checked_grad(f, state.theta + v_tilde, state.iteration)
    v_new = v_tilde - alpha * g
    return OptimizerState(state.theta + v_new, v_new, state.iteration + 1)


def step_rud(state: OptimizerState, f, alpha: float, mu: float) -> OptimizerState:
    """Regularised update descent: gradient taken at the full lookahead theta + v."""
    _check_mu_alpha(alpha, mu)
    g = _checked_grad(f, state.theta + state.velocity, state.iteration)
    v_new = mu * state.velocity - alpha * g
    return OptimizerState(state.theta + v_new, v_new, state.iteration + 1)


def _partial_trace(ts, thetas, velocities, values):
    return Trace(
        ts=np.asarray(ts, dtype=np.int64),
        thetas=np.asarray(thetas, dtype=np.float64),
        velocities=np.asarray(velocities, dtype=np.float64),
        values=np.asarray(values, dtype=np.float64),
    )


def run(method: Method, f, theta1, schedule: Schedule, T: int,
        guard: float = DIVERGENCE_GUARD) -> Trace:
    """Run `method` on objective `f` for T iterations and record the trajectory.

    Record 1 is the initial state with v_1 = 0; record t+1 results from
    the method's step with alpha(t), mu(t).  The recorded velocity is the
    realized parameter difference theta_{t+1} - theta_t (for NAG_ORIGINAL
    that is the definition of v; for the stateful methods it matches the
    internal update vector up to the final rounding of theta + v).

    Aborts with DivergenceError (carrying the partial trace) if any theta
    component or objective value goes non-finite, or |J| exceeds `guard`.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    state = initial_state(theta1)

    ts, thetas, velocities, values = [], [], [], []

    def record(t, theta, velocity):
        value = float(f.eval(theta))
        if not np.isfinite(value) or abs(value) > guard:
            raise DivergenceError(
                f"objective value {value!r} at iteration {t} tripped the divergence guard",
                t,
                trace=_partial_trace(ts, thetas, velocities, values),
            )
        if not np.all(np.isfinite(theta)):
            raise DivergenceError(
                f"non-finite parameters at iteration {t}",
                t,
                trace=_partial_trace(ts, thetas, velocities, values),
            )
        ts.append(t)
        thetas.append(np.array(theta))
        velocities.append(np.array(velocity))
        values.append(value)

    record(1, state.theta, state.velocity)
    theta_prev = state.theta  # only used by NAG_ORIGINAL

    for t in range(1, T):
        alpha, mu = schedule.alpha(t), schedule.mu(t)
        theta_before = state.theta
        try:
            if method is Method.GD:
                state = step_gd(state, f, alpha)
            elif method is Method.MOM:
                state = step_mom(state, f, alpha, mu)
            elif method is Method.NAG:
                state = step_nag(state, f, alpha, mu)
            elif method is Method.NAG_TWO_STAGE:
                state = step_nag_two_stage(state, f, alpha, schedule.gamma(t))
            elif method is Method.RUD:
                state = step_rud(state, f, alpha, mu)
            elif method is Method.NAG_ORIGINAL:
                theta_next = step_nag_original(state.theta, theta_prev, f, alpha, mu)
                theta_prev = state.theta
                state = OptimizerState(theta_next, theta_next - theta_prev, t + 1)
            else:
                raise ValueError(f"unknown method {method!r}")
        except DivergenceError as err:
            if err.trace is None:
                err.trace = _partial_trace(ts, thetas, velocities, values)
            err.iteration = t
            raise
        record(t + 1, state.theta, state.theta - theta_before)

    return _partial_trace(ts, thetas, velocities, values)

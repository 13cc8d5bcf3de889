"""Experiment runners that write deterministic CSV artifacts.

Every runner writes one CSV (17-significant-digit decimal floats, so the
files are byte-identical across reruns and reload losslessly) plus a
sidecar `<stem>.meta` file in key=value lines recording the configuration
snapshot, wall-clock duration and completion status.  Statuses: `diverged`
when the run tripped the divergence guard, `converged` when the final
gradient is numerically zero, `max-iters` otherwise.
"""

import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import spectral
from .autoencoder import MLPAutoencoder
from .datasets import make_synthetic_images, minibatches, parse_idx_images
from .objectives import MatrixQuadratic, ScalarQuadratic, check_gradient, make_random_spd
from .optimizers import (
    DivergenceError,
    Method,
    OptimizerState,
    Trace,
    initial_state,
    make_schedule,
    run,
    step_gd,
    step_mom,
    step_nag,
    step_nag_original,
    step_nag_two_stage,
    step_rud,
)
from .spectral import RegionPredicate, rasterize_region

__all__ = [
    "VERSION",
    "GRAD_CONVERGED_TOL",
    "fmt",
    "region_csv",
    "trajectory_csv",
    "quadbench_csv",
    "autoencoder_csv",
    "selfcheck",
    "SuiteResult",
]

try:
    from importlib.metadata import version as _dist_version

    VERSION = _dist_version("rudopt")
except Exception:  # not installed, e.g. run from a source tree
    VERSION = "0.1.0+src"

# Final gradient inf-norm below this counts as converged in the run record.
GRAD_CONVERGED_TOL = 1e-8


def fmt(x) -> str:
    """Decimal float formatting with 17 significant digits (round-trip exact)."""
    return format(float(x), ".17g")


def _write_csv(out_path, header, rows):
    out_path = Path(out_path)
    with open(out_path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_meta(out_path, command, config, status, started):
    meta_path = Path(out_path).with_suffix(".meta")
    lines = [f"command={command}", f"version={VERSION}"]
    lines += [f"{key}={value}" for key, value in config.items()]
    lines += [f"status={status}", f"duration_s={time.monotonic() - started:.3f}"]
    meta_path.write_text("\n".join(lines) + "\n")


def _status_from(trace_status):
    order = ("diverged", "max-iters", "converged")
    for status in order:
        if status in trace_status:
            return status
    return "converged"


def region_csv(predicate: RegionPredicate, resolution: int, out_path) -> None:
    """Rasterize one region predicate to `mu,alpha,shaded` rows (row-major in mu)."""
    started = time.monotonic()
    grid = rasterize_region(predicate, resolution, resolution)
    rows = []
    for i, mu in enumerate(grid.mu_axis):
        for j, alpha in enumerate(grid.alpha_axis):
            rows.append((fmt(mu), fmt(alpha), str(int(grid.cells[i, j]))))
    _write_csv(out_path, ("mu", "alpha", "shaded"), rows)
    _write_meta(out_path, "region",
                {"predicate": predicate.value, "resolution": resolution},
                "converged", started)


def _run_or_partial(method, f, theta1, schedule, T):
    """Run a method, returning (trace, diverged_flag)."""
    try:
        return run(method, f, theta1, schedule, T), False
    except DivergenceError as err:
        return err.trace, True


def _final_status(f, trace: Trace, diverged: bool) -> str:
    if diverged:
        return "diverged"
    grad = f.grad(trace.thetas[-1])
    if np.max(np.abs(grad)) <= GRAD_CONVERGED_TOL:
        return "converged"
    return "max-iters"


def trajectory_csv(method: Method, alpha: float, mu: float, theta1, T: int, out_path) -> str:
    """Iterate one method with a constant schedule and dump the trace.

    Scalar problems get an extra `closed_form_theta` column computed from
    the recurrence solution; a divergence abort leaves a partial file and
    status `diverged`.  Returns the status.
    """
    started = time.monotonic()
    theta1 = np.atleast_1d(np.asarray(theta1, dtype=np.float64))
    dim = theta1.size
    # the analysis objective: J = |theta|^2 / 2 (componentwise theta^2/2)
    f = ScalarQuadratic() if dim == 1 else MatrixQuadratic(np.eye(dim), np.zeros(dim))
    schedule = make_schedule("constant", alpha, mu)
    trace, diverged = _run_or_partial(method, f, theta1, schedule, T)

    header = (["t"] + [f"theta{i}" for i in range(dim)]
              + [f"v{i}" for i in range(dim)] + ["J"])
    closed = None
    if dim == 1:
        closed_method = method
        if method in (Method.NAG_ORIGINAL, Method.NAG_TWO_STAGE):
            closed_method = Method.NAG
        closed = spectral.closed_form_trajectory(
            closed_method, alpha, 0.0 if method is Method.GD else mu,
            float(theta1[0]), len(trace))
        header.append("closed_form_theta")

    rows = []
    for k in range(len(trace)):
        row = [str(int(trace.ts[k]))]
        row += [fmt(x) for x in trace.thetas[k]]
        row += [fmt(x) for x in trace.velocities[k]]
        row.append(fmt(trace.values[k]))
        if closed is not None:
            row.append(fmt(closed[k]))
        rows.append(row)
    _write_csv(out_path, header, rows)

    status = _final_status(f, trace, diverged)
    _write_meta(out_path, "trajectory",
                {"method": method.value, "alpha": fmt(alpha), "mu": fmt(mu),
                 "theta1": ";".join(fmt(x) for x in theta1), "iters": T},
                status, started)
    return status


def quadbench_csv(dim: int, seed: int, alpha0: float, T: int, methods, out_path,
                  instance: MatrixQuadratic = None, theta1=None) -> str:
    """High-dimensional quadratic benchmark with the increasing-momentum schedule.

    All methods share the seeded (A, b) instance, the seeded start point
    and the schedule alpha_t = alpha0, mu_t = 1 - 3/(5+t).  The logJ
    column is log(J(theta_t) - J(theta*)), clamped at zero before the log
    with a 1e-300 floor so it stays finite.  `instance` and `theta1`
    override the seeded problem (used by consistency tests).
    """
    started = time.monotonic()
    q = make_random_spd(dim, seed) if instance is None else instance
    dim = q.dim
    if theta1 is None:
        theta1 = np.random.default_rng([seed, 1]).standard_normal(dim) / np.sqrt(dim)
    theta1 = np.asarray(theta1, dtype=np.float64)
    j_star = q.min_value()
    schedule = make_schedule("nesterov", alpha0)

    rows, statuses = [], []
    for method in methods:
        trace, diverged = _run_or_partial(method, q, theta1, schedule, T)
        statuses.append(_final_status(q, trace, diverged))
        for k in range(len(trace)):
            shifted = max(trace.values[k] - j_star, 0.0) + 1e-300
            row = [str(int(trace.ts[k])), method.value, fmt(np.log(shifted)),
                   fmt(trace.thetas[k][0]),
                   fmt(trace.thetas[k][1]) if dim > 1 else ""]
            rows.append(row)
    _write_csv(out_path, ("t", "method", "logJ", "theta0", "theta1"), rows)

    status = _status_from(statuses)
    config = {"dim": dim, "seed": seed, "alpha": fmt(alpha0), "iters": T,
              "methods": ";".join(m.value for m in methods)}
    config.update({f"status.{m.value}": s for m, s in zip(methods, statuses)})
    _write_meta(out_path, "quadbench", config, status, started)
    return status


def _train_autoencoder(model, theta0, data, batch_size, alpha0, epochs, method, seed,
                       guard=1e50):
    """One method's training run; returns (per-epoch mean BCE list, diverged)."""
    schedule = make_schedule("nesterov", alpha0)
    state = initial_state(theta0)
    theta_prev = state.theta  # NAG_ORIGINAL bookkeeping
    t = 1
    epoch_means = []
    for epoch in range(1, epochs + 1):
        losses = []
        for idx in minibatches(data, batch_size, seed + epoch):
            f = model.objective(data.images[idx])
            loss = f.eval(state.theta)
            if not np.isfinite(loss) or abs(loss) > guard:
                return epoch_means, True
            losses.append(loss)
            alpha, mu = schedule.alpha(t), schedule.mu(t)
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
                    state = OptimizerState(theta_next, theta_next - theta_prev,
                                           state.iteration + 1)
                else:
                    raise ValueError(f"unknown method {method!r}")
            except DivergenceError:
                return epoch_means, True
            t += 1
        epoch_means.append(float(np.mean(losses)))
    return epoch_means, False


def autoencoder_csv(data_path, layer_spec, batch_size: int, alpha0: float,
                    epochs: int, methods, seed: int, out_path,
                    synthetic_count: int = 2000) -> str:
    """Train the autoencoder benchmark and record per-epoch mean training BCE.

    `data_path` names an IDX image file; pass None to train on the seeded
    synthetic blob images instead (desk-scale default, `synthetic_count`
    examples).  All methods share the initialization and the batch order.
    """
    started = time.monotonic()
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if data_path is None:
        data = make_synthetic_images(synthetic_count, seed)
    else:
        data = parse_idx_images(Path(data_path).read_bytes())
    pixel_dim = data.rows * data.cols
    layer_spec = tuple(layer_spec)
    if layer_spec[0] != pixel_dim or layer_spec[-1] != pixel_dim:
        raise ValueError(
            f"layer spec {layer_spec} must start and end with the pixel "
            f"dimension {pixel_dim}"
        )
    model = MLPAutoencoder(layer_spec)
    theta0 = model.init_params(seed)

    rows, statuses = [], []
    for method in methods:
        epoch_means, diverged = _train_autoencoder(
            model, theta0, data, batch_size, alpha0, epochs, method, seed)
        statuses.append("diverged" if diverged else "max-iters")
        for epoch, bce in enumerate(epoch_means, start=1):
            rows.append((str(epoch), method.value, fmt(bce)))
    _write_csv(out_path, ("epoch", "method", "train_bce"), rows)

    status = _status_from(statuses)
    config = {"data": data_path if data_path is not None else f"synthetic:{synthetic_count}",
              "layers": ";".join(str(s) for s in layer_spec),
              "batch_size": batch_size, "alpha": fmt(alpha0), "epochs": epochs,
              "seed": seed, "methods": ";".join(m.value for m in methods)}
    config.update({f"status.{m.value}": s for m, s in zip(methods, statuses)})
    _write_meta(out_path, "autoencoder", config, status, started)
    return status


# ---------------------------------------------------------------------------
# selfcheck: the library's invariants, runnable from the CLI


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: str = ""


def _suite_first_step(checks):
    f = ScalarQuadratic()
    q = make_random_spd(5, seed=3)
    failures = 0
    n = 0
    for obj, theta1 in ((f, np.array([1.3])), (q, np.arange(1.0, 6.0) / 3.0)):
        for alpha, mu in ((0.2, 0.9), (0.05, 0.5), (0.7, 0.0)):
            expected = theta1 - alpha * obj.grad(theta1)
            state = initial_state(theta1)
            gamma = (1.0 - mu) / alpha
            steps = [
                step_mom(state, obj, alpha, mu).theta,
                step_nag(state, obj, alpha, mu).theta,
                step_rud(state, obj, alpha, mu).theta,
                step_nag_two_stage(state, obj, alpha, gamma).theta,
                step_nag_original(theta1, theta1, obj, alpha, mu),
            ]
            for theta2 in steps:
                n += 1
                if np.max(np.abs(theta2 - expected)) > 1e-12:
                    failures += 1
    checks.append((n, failures))
    return failures == 0


def _suite_two_stage(checks):
    f = make_random_spd(4, seed=11)
    rng = np.random.default_rng(7)
    failures, n = 0, 0
    for _ in range(25):
        theta = rng.standard_normal(4)
        velocity = rng.standard_normal(4) * 0.1
        alpha = rng.uniform(0.05, 0.9)
        mu = rng.uniform(0.0, 1.0)
        state = OptimizerState(theta, velocity, 1)
        a = step_nag(state, f, alpha, mu)
        b = step_nag_two_stage(state, f, alpha, (1.0 - mu) / alpha)
        n += 1
        if np.max(np.abs(a.theta - b.theta)) > 1e-12:
            failures += 1
    checks.append((n, failures))
    return failures == 0


def _suite_closed_vs_iterated(checks):
    f = ScalarQuadratic()
    failures, n = 0, 0
    for alpha in np.linspace(0.05, 0.95, 10):
        for mu in np.linspace(0.0, 0.95, 10):
            for method in (Method.MOM, Method.NAG, Method.RUD):
                if spectral.stability(method, alpha, mu).spectral_radius >= 0.999:
                    continue
                n += 1
                closed = spectral.closed_form_trajectory(method, alpha, mu, 1.0, 100)
                trace = run(method, f, np.array([1.0]),
                            make_schedule("constant", alpha, mu), 100)
                if np.max(np.abs(closed - trace.thetas[:, 0])) >= 1e-8:
                    failures += 1
    checks.append((n, failures))
    return failures == 0


def _suite_nag_mom_convergence(checks):
    failures, n = 0, 0
    grid = np.arange(0.05, 1.0, 0.05)
    for alpha in grid:
        for mu in grid:
            for method in (Method.NAG, Method.MOM):
                n += 1
                if spectral.stability(method, alpha, mu).spectral_radius >= 1.0:
                    failures += 1
    checks.append((n, failures))
    return failures == 0


def _suite_rud_region(checks):
    failures, n = 0, 0
    for mu in np.linspace(0.0, 1.0, 50):
        for alpha in np.linspace(0.005, 1.0, 50):
            if abs(1.0 + mu - 1.5 * alpha) < 1e-6:
                continue
            n += 1
            if spectral.stability(Method.RUD, alpha, mu).convergent \
                    != spectral.rud_region_closed_form(alpha, mu):
                failures += 1
    checks.append((n, failures))
    return failures == 0


def _suite_gradients(checks):
    failures, n = 0, 0
    rng = np.random.default_rng(5)
    probes = [
        (ScalarQuadratic(), np.array([1.7]), 1e-6, None),
        (make_random_spd(20, seed=2), rng.standard_normal(20), 1e-6, None),
    ]
    model = MLPAutoencoder((16, 8, 4, 8, 16))
    batch = np.round(rng.uniform(0.0, 1.0, size=(5, 16)) * 255) / 255
    coords = rng.choice(model.n_params, size=20, replace=False)
    probes.append((model.objective(batch), model.init_params(9), 1e-4, coords))
    for obj, theta, tol, coords in probes:
        n += 1
        try:
            check_gradient(obj, theta, rel_tol=tol, coords=coords)
        except AssertionError:
            failures += 1
    checks.append((n, failures))
    return failures == 0


def selfcheck():
    """Run the invariant suites; returns a list of SuiteResult."""
    suites = [
        ("first-step-universality", _suite_first_step),
        ("two-stage-identity", _suite_two_stage),
        ("closed-form-vs-iterated", _suite_closed_vs_iterated),
        ("nag-mom-universal-convergence", _suite_nag_mom_convergence),
        ("rud-region-exactness", _suite_rud_region),
        ("gradient-checks", _suite_gradients),
    ]
    results = []
    for name, fn in suites:
        checks = []
        try:
            passed = fn(checks)
        except Exception as err:  # a crash is a failure, not a crash of the report
            results.append(SuiteResult(name, False, 0, f"error: {err}"))
            continue
        n, failures = checks[-1]
        detail = f"{n - failures}/{n} checks"
        results.append(SuiteResult(name, passed, n, detail))
    return results

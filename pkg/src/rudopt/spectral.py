"""Closed-form convergence analysis on the scalar quadratic J(theta) = theta^2/2.

For constant (alpha, mu) each method collapses to a linear two-term
recurrence theta_{t+1} + b*theta_t + c*theta_{t-1} = 0 with

    MOM   b = -1 - mu + alpha            c = mu
    NAG   b = -1 - mu + alpha + alpha*mu c = mu - alpha*mu
    RUD   b = -1 - mu + 2*alpha          c = mu - alpha

The recurrence is governed by the roots w = (-b +/- sqrt(b^2 - 4c)) / 2:
the iterates converge iff both |w| < 1, equivalently |b| < 1 + c and
c < 1.  For RUD the convergent region reduces to 1 + mu > (3/2) alpha.
This module computes coefficients, roots, stability verdicts, rate
comparisons, closed-form trajectories and rasterized (mu, alpha) regions.
"""

import cmath
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .optimizers import Method

__all__ = [
    "CharacteristicCoefficients",
    "RootPair",
    "StabilityResult",
    "TrajectoryCoefficients",
    "RegionGrid",
    "RegionPredicate",
    "RateVerdict",
    "coefficients",
    "roots",
    "stability",
    "rud_region_closed_form",
    "trajectory_coefficients",
    "closed_form_trajectory",
    "rate_compare",
    "rasterize_region",
]

# Spectral radii within this band of 1 are flagged as boundary cases:
# the strict inequalities of the analysis are not numerically decidable there.
BOUNDARY_TOL = 1e-9

# Discriminants below this are treated as a repeated root b^2 = 4c.
REPEATED_ROOT_TOL = 1e-12


@dataclass(frozen=True)
class CharacteristicCoefficients:
    """Coefficients of theta_{t+1} + b*theta_t + c*theta_{t-1} = 0."""

    b: float
    c: float


@dataclass(frozen=True)
class RootPair:
    """Roots of w^2 + b*w + c = 0; satisfies w+ + w- = -b and w+ * w- = c."""

    w_plus: complex
    w_minus: complex

    @property
    def spectral_radius(self) -> float:
        return max(abs(self.w_plus), abs(self.w_minus))


@dataclass(frozen=True)
class StabilityResult:
    spectral_radius: float
    convergent: bool
    boundary: bool


@dataclass(frozen=True)
class TrajectoryCoefficients:
    """Coefficients of theta_t = A*w+^t + B*w-^t fitted to theta_1, theta_2."""

    A: complex
    B: complex


class RegionPredicate(Enum):
    RUD_CONVERGES = "rud-converges"
    RUD_BEATS_NAG = "rud-beats-nag"
    MOM_BEATS_NAG = "mom-beats-nag"
    MOM_BEATS_RUD = "mom-beats-rud"


class RateVerdict(Enum):
    A_FASTER = "a-faster"
    B_FASTER = "b-faster"
    TIE = "tie"


@dataclass(frozen=True)
class RegionGrid:
    """Boolean predicate verdicts over a (mu, alpha) grid.

    cells[i, j] is the verdict at (mu_axis[i], alpha_axis[j]).
    """

    mu_axis: np.ndarray
    alpha_axis: np.ndarray
    cells: np.ndarray

    def __post_init__(self):
        if self.cells.shape != (len(self.mu_axis), len(self.alpha_axis)):
            raise ValueError("cells shape must match axis lengths")


def coefficients(method: Method, alpha: float, mu: float) -> CharacteristicCoefficients:
    """Characteristic (b, c) of the method's recurrence on J = theta^2/2.

    GD is handled as MOM with mu = 0.  The NAG_ORIGINAL / NAG_TWO_STAGE
    tags are rejected here: alias them to NAG at the caller.
    """
    if method is Method.GD:
        method, mu = Method.MOM, 0.0
    if method is Method.MOM:
        return CharacteristicCoefficients(b=-1.0 - mu + alpha, c=mu)
    if method is Method.NAG:
        return CharacteristicCoefficients(b=-1.0 - mu + alpha + alpha * mu, c=mu - alpha * mu)
    if method is Method.RUD:
        return CharacteristicCoefficients(b=-1.0 - mu + 2.0 * alpha, c=mu - alpha)
    raise ValueError(f"no characteristic coefficients for {method}; alias to NAG first")


def roots(coeffs: CharacteristicCoefficients) -> RootPair:
    """Both roots of w^2 + b*w + c = 0 via the quadratic formula.

    A negative discriminant yields a conjugate pair with |w| = sqrt(c).
    """
    b, c = coeffs.b, coeffs.c
    disc = cmath.sqrt(complex(b * b - 4.0 * c))
    return RootPair(w_plus=(-b + disc) / 2.0, w_minus=(-b - disc) / 2.0)


def stability(method: Method, alpha: float, mu: float) -> StabilityResult:
    """Convergence verdict from the spectral radius of the recurrence roots.

    Cross-checks the root-based verdict against the algebraic conditions
    |b| < 1 + c and c < 1; a disagreement away from the boundary band is
    an internal-consistency error.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    coeffs = coefficients(method, alpha, mu)
    radius = roots(coeffs).spectral_radius
    boundary = abs(radius - 1.0) <= BOUNDARY_TOL
    convergent = radius < 1.0 and not boundary
    if not boundary:
        algebraic = abs(coeffs.b) < 1.0 + coeffs.c and coeffs.c < 1.0
        if algebraic != convergent:
            raise AssertionError(
                f"root verdict {convergent} disagrees with |b|<1+c, c<1 verdict "
                f"{algebraic} at (method={method}, alpha={alpha}, mu={mu})"
            )
    return StabilityResult(spectral_radius=radius, convergent=convergent, boundary=boundary)


def rud_region_closed_form(alpha: float, mu: float) -> bool:
    """Closed-form RUD convergence condition 1 + mu > (3/2) alpha (strict)."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    return 1.0 + mu > 1.5 * alpha


def trajectory_coefficients(pair: RootPair, theta1: float, theta2: float) -> TrajectoryCoefficients:
    """Fit A, B so that A*w+^t + B*w-^t matches theta_1 and theta_2.

    Solved by least squares so that a single zero root (c = 0, pure
    geometric decay) picks the consistent minimum-norm solution instead of
    failing on an exactly singular 2x2 system.
    """
    wp, wm = pair.w_plus, pair.w_minus
    mat = np.array([[wp, wm], [wp * wp, wm * wm]], dtype=np.complex128)
    rhs = np.array([theta1, theta2], dtype=np.complex128)
    sol, residual, rank, _ = np.linalg.lstsq(mat, rhs)
    scale = max(abs(theta1), abs(theta2), 1.0)
    if rank < 2 and np.linalg.norm(mat @ sol - rhs) > 1e-9 * scale:
        raise np.linalg.LinAlgError(
            f"singular trajectory system for roots {wp}, {wm} is inconsistent"
        )
    return TrajectoryCoefficients(A=complex(sol[0]), B=complex(sol[1]))


def closed_form_trajectory(method: Method, alpha: float, mu: float,
                           theta1: float, T: int) -> np.ndarray:
    """Scalar-quadratic trajectory theta_1..theta_T in closed form.

    Uses theta_2 = (1 - alpha) * theta_1 (exact for v_1 = 0) and the
    general solution theta_t = Re(A*w+^t + B*w-^t).  A repeated root
    (|b^2 - 4c| < 1e-12) switches to the confluent form (A + B*t) * w^t.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    theta1 = float(theta1)
    if theta1 == 0.0:
        return np.zeros(T)
    coeffs = coefficients(method, alpha, mu)
    theta2 = (1.0 - alpha) * theta1
    t = np.arange(1, T + 1)

    b, c = coeffs.b, coeffs.c
    if abs(b * b - 4.0 * c) < REPEATED_ROOT_TOL:
        w = -b / 2.0
        if abs(w) < 1e-100:
            raise np.linalg.LinAlgError(
                "repeated root at zero cannot represent a nonzero theta_1"
            )
        # confluent solution (A + B*t) w^t fitted to theta_1, theta_2
        mat = np.array([[w, w], [w * w, 2.0 * w * w]])
        A, B = np.linalg.solve(mat, np.array([theta1, theta2]))
        return (A + B * t) * np.power(w, t)

    pair = roots(coeffs)
    fit = trajectory_coefficients(pair, theta1, theta2)
    values = fit.A * np.power(pair.w_plus, t) + fit.B * np.power(pair.w_minus, t)
    return values.real


def rate_compare(method_a: Method, method_b: Method, alpha: float, mu: float,
                 tol: float = 1e-12) -> RateVerdict:
    """Compare asymptotic rates via spectral radii; smaller radius is faster."""
    ra = roots(coefficients(method_a, alpha, mu)).spectral_radius
    rb = roots(coefficients(method_b, alpha, mu)).spectral_radius
    if abs(ra - rb) <= tol:
        return RateVerdict.TIE
    return RateVerdict.A_FASTER if ra < rb else RateVerdict.B_FASTER


# Fig-1 style grid: mu spans [0, 1], alpha spans [0.005, 1].
ALPHA_AXIS_LOW = 0.005

_COMPARISONS = {
    RegionPredicate.RUD_BEATS_NAG: (Method.RUD, Method.NAG),
    RegionPredicate.MOM_BEATS_NAG: (Method.MOM, Method.NAG),
    RegionPredicate.MOM_BEATS_RUD: (Method.MOM, Method.RUD),
}


def rasterize_region(predicate: RegionPredicate, mu_resolution: int,
                     alpha_resolution: int) -> RegionGrid:
    """Evaluate a convergence/pace predicate over the (mu, alpha) grid.

    Comparison predicates require the faster method to converge at the
    cell; cells where both methods diverge are unshaded.
    """
    if mu_resolution < 2 or alpha_resolution < 2:
        raise ValueError("grid resolutions must be >= 2")
    mu_axis = np.linspace(0.0, 1.0, mu_resolution)
    alpha_axis = np.linspace(ALPHA_AXIS_LOW, 1.0, alpha_resolution)
    cells = np.zeros((mu_resolution, alpha_resolution), dtype=bool)
    for i, mu in enumerate(mu_axis):
        for j, alpha in enumerate(alpha_axis):
            if predicate is RegionPredicate.RUD_CONVERGES:
                cells[i, j] = stability(Method.RUD, alpha, mu).convergent
            else:
                fast, slow = _COMPARISONS[predicate]
                cells[i, j] = (
                    rate_compare(fast, slow, alpha, mu) is RateVerdict.A_FASTER
                    and stability(fast, alpha, mu).convergent
                )
    return RegionGrid(mu_axis=mu_axis, alpha_axis=alpha_axis, cells=cells)

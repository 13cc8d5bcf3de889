"""rudopt: regularised update descent, classical momentum and Nesterov
acceleration, with closed-form convergence analysis on the scalar quadratic
and a reproducible benchmark harness."""

from .autoencoder import MLPAutoencoder, mlp_eval_grad
from .datasets import (
    IdxFormatError,
    ImageDataset,
    make_synthetic_images,
    minibatches,
    parse_idx_images,
    write_idx_images,
)
from .objectives import (
    MatrixQuadratic,
    Objective,
    ScalarQuadratic,
    check_gradient,
    finite_diff_grad,
    make_random_spd,
    quad_eval_grad,
)
from .optimizers import (
    DivergenceError,
    Method,
    OptimizerState,
    Schedule,
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
from .spectral import (
    CharacteristicCoefficients,
    RateVerdict,
    RegionGrid,
    RegionPredicate,
    RootPair,
    StabilityResult,
    TrajectoryCoefficients,
    closed_form_trajectory,
    coefficients,
    rate_compare,
    rasterize_region,
    roots,
    rud_region_closed_form,
    stability,
    trajectory_coefficients,
)

__version__ = "0.1.0"

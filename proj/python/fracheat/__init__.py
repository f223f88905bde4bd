"""Time-fractional diffusion and Pennes bioheat solvers."""

from ._core import (
    FracheatError,
    MLEvalResult,
    PennesParams,
    damping_time,
    erf_solution,
    fd_solve,
    gibbs_overshoot,
    images_solution,
    laplace_solution,
    load_preset,
    ml_derivative,
    ml_eval,
    ml_zero_smallest,
    mittag_leffler,
    pennes_eval,
    pennes_offset,
    pennes_periods,
    reduce_params,
    run_scenario,
    solve,
    transient_period,
)

__all__ = [
    "FracheatError",
    "MLEvalResult",
    "PennesParams",
    "damping_time",
    "erf_solution",
    "fd_solve",
    "gibbs_overshoot",
    "images_solution",
    "laplace_solution",
    "load_preset",
    "ml_derivative",
    "ml_eval",
    "ml_zero_smallest",
    "mittag_leffler",
    "pennes_eval",
    "pennes_offset",
    "pennes_periods",
    "reduce_params",
    "run_scenario",
    "solve",
    "transient_period",
]

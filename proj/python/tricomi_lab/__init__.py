"""Numerical laboratory for the generalized Tricomi equation with scale-invariant damping and mass."""

from ._core import (
    ModelParams,
    PdeConfig,
    TestFunctionSet,
    __version__,
    besselk,
    besselk_dz,
    besselk_scaled,
    delta_of,
    lemma1_ratio,
    lifespan_sweep,
    ode_figure,
    ode_run,
    pde_run,
    phi_m,
    run_cli,
)

__all__ = [
    "ModelParams",
    "PdeConfig",
    "TestFunctionSet",
    "__version__",
    "besselk",
    "besselk_dz",
    "besselk_scaled",
    "delta_of",
    "lemma1_ratio",
    "lifespan_sweep",
    "ode_figure",
    "ode_run",
    "pde_run",
    "phi_m",
    "run_cli",
]

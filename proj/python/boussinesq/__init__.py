"""Python access to the Boussinesq solver core."""

from ._core import (
    AlphaNotZero,
    BlowUp,
    ComplexRoots,
    ConfigError,
    Error,
    GeometryError,
    NegativeParameter,
    NonpositiveDepth,
    SingularMatrix,
    check,
    cyclic_banded_solve,
    error_curve,
    fit,
    normalize_config,
    omega_euler,
    omega_model,
    omega_series3,
    param_sets,
    run,
    shuffle_residual,
    solve_wavenumber,
    version,
)

__version__ = version()

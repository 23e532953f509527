"""Closed-form amplitudes for continuous-time quantum walks on 1D lattices.

The walk is the nearest-neighbour lattice Schrodinger evolution

    i d/dt psi(x, t) = -psi(x-1, t) + q psi(x, t) - psi(x+1, t)

started from a single site.  Amplitudes are evaluated as Bessel-series
closed forms for four boundary regimes (free line, one reflecting wall,
two reflecting walls, ring), with the image-sum truncation order chosen
from an explicit error bound.  Two independent reference solvers
(eigenbasis sums and a fixed-step RK4 integrator) back every closed
form.
"""

from .bessel import (
    BesselBatch,
    bessel_j,
    bessel_j_batch,
    bessel_j_integral_oracle,
    bessel_j_tilde,
)
from .bounds import (
    TruncationPlan,
    apriori_error_bound,
    constant_c,
    factorial_tail_bound,
    t_threshold,
    truncation_k,
    zeta,
)
from .oracle import (
    OdeRun,
    SpectralModel,
    ode_evolve,
    ode_grid,
    spectral_amplitude_dirichlet,
    spectral_amplitude_periodic,
    spectral_grid,
    spectral_model,
)
from .verify import PropertyResult, run_suite
from .walk import (
    AmplitudeGrid,
    Dirichlet,
    LeftWall,
    Periodic,
    Unbounded,
    WalkSpec,
    amplitude_dirichlet,
    amplitude_left_wall,
    amplitude_periodic,
    amplitude_unbounded,
    evaluate_grid,
    mirror_points,
    periodic_points,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeGrid",
    "BesselBatch",
    "Dirichlet",
    "LeftWall",
    "OdeRun",
    "Periodic",
    "PropertyResult",
    "SpectralModel",
    "TruncationPlan",
    "Unbounded",
    "WalkSpec",
    "amplitude_dirichlet",
    "amplitude_left_wall",
    "amplitude_periodic",
    "amplitude_unbounded",
    "apriori_error_bound",
    "bessel_j",
    "bessel_j_batch",
    "bessel_j_integral_oracle",
    "bessel_j_tilde",
    "constant_c",
    "evaluate_grid",
    "factorial_tail_bound",
    "mirror_points",
    "ode_evolve",
    "ode_grid",
    "periodic_points",
    "run_suite",
    "spectral_amplitude_dirichlet",
    "spectral_amplitude_periodic",
    "spectral_grid",
    "spectral_model",
    "t_threshold",
    "truncation_k",
    "zeta",
]

"""
Three solvers, one walk
=======================

The image series is fast but indirect, so the package carries two
independent referees: the exact eigen-expansion of the finite lattice
and a fixed-step RK4 integration of the equations of motion.  This
script runs all three on the same box and ring and prints the
pairwise disagreements.
"""

import numpy as np

from qwalk import (
    Dirichlet,
    Periodic,
    WalkSpec,
    evaluate_grid,
    ode_grid,
    spectral_grid,
)

times = np.array([1.0, 4.0, 9.0])


def face_off(spec, sites):
    series = evaluate_grid(spec, sites, times, epsilon=1e-8)
    spectral = spectral_grid(spec, sites, times)
    ode = ode_grid(spec, sites, times, dt=1e-3)
    print(f"  series   vs spectral: "
          f"{np.max(np.abs(series.data - spectral.data)):.2e}")
    print(f"  series   vs rk4:      "
          f"{np.max(np.abs(series.data - ode.data)):.2e}")
    print(f"  spectral vs rk4:      "
          f"{np.max(np.abs(spectral.data - ode.data)):.2e}")


print("box [0, 12], x0 = 5, q = 0.4")
face_off(WalkSpec(boundary=Dirichlet(L=0, R=12), x0=5, q=0.4),
         np.arange(0, 13))

print("ring of 12, x0 = 5, q = 0.4")
face_off(WalkSpec(boundary=Periodic(L=0, R=12), x0=5, q=0.4),
         np.arange(0, 12))

# the full property suite bundles these checks and more
print("\nfor the complete battery: qwalk verify")

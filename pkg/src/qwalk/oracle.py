"""Reference solvers the closed forms are checked against.

Two fully independent routes to the same amplitudes:

* spectral: the box and ring Hamiltonians diagonalise in closed form
  (discrete sine modes, discrete Fourier modes), so e^{iHt} is an
  explicit trigonometric sum with no series truncation at all;
* ode: fixed-step classical RK4 on the coupled lattice equations
  i dpsi/dt = -psi(x-1) + q psi(x) - psi(x+1), windowed for the
  unbounded regimes so that edge effects stay outside the light cone.

Neither route touches the Bessel kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .walk import (
    AmplitudeGrid,
    Boundary,
    Dirichlet,
    LeftWall,
    Periodic,
    Unbounded,
    WalkSpec,
)

__all__ = [
    "OdeRun",
    "SpectralModel",
    "ode_evolve",
    "ode_grid",
    "spectral_amplitude_dirichlet",
    "spectral_amplitude_periodic",
    "spectral_grid",
    "spectral_model",
]


@dataclass(frozen=True)
class SpectralModel:
    """Closed-form eigenvalues of a box or ring Hamiltonian."""

    boundary: Boundary
    q: float
    eigenvalues: np.ndarray
    mode_count: int


def spectral_model(boundary: Boundary, q: float) -> SpectralModel:
    """Build the eigenbasis description for a box or ring."""
    if isinstance(boundary, Dirichlet):
        N = boundary.R - boundary.L
        modes = np.arange(1, N)
        return SpectralModel(
            boundary=boundary,
            q=float(q),
            eigenvalues=2.0 * np.cos(modes * math.pi / N) - q,
            mode_count=N - 1,
        )
    if isinstance(boundary, Periodic):
        N = boundary.R - boundary.L
        modes = np.arange(N)
        return SpectralModel(
            boundary=boundary,
            q=float(q),
            eigenvalues=2.0 * np.cos(2.0 * math.pi * modes / N) - q,
            mode_count=N,
        )
    raise ValueError("spectral form exists only for the box and the ring")


def _dirichlet_profile(model: SpectralModel, x0: int, sites: np.ndarray,
                       t: float) -> np.ndarray:
    b = model.boundary
    N = b.R - b.L
    modes = np.arange(1, N)
    weights = np.sin(modes * math.pi * (x0 - b.L) / N) * (2.0 / N)
    phases = np.exp(1j * t * model.eigenvalues)
    table = np.sin(np.outer(sites - b.L, modes) * (math.pi / N))
    # the sine modes vanish identically on the walls; make that exact
    # instead of leaving sin(k*pi) rounding noise
    table[(sites == b.L) | (sites == b.R), :] = 0.0
    return table @ (weights * phases)


def _periodic_profile(model: SpectralModel, x0: int, sites: np.ndarray,
                      t: float) -> np.ndarray:
    b = model.boundary
    N = b.R - b.L
    modes = np.arange(N)
    phases = np.exp(1j * t * model.eigenvalues) / N
    table = np.exp(2j * math.pi * np.outer(sites - x0, modes) / N)
    return table @ phases


def spectral_amplitude_dirichlet(model: SpectralModel, x0: int, x: int,
                                 t: float) -> complex:
    """Box amplitude from the discrete sine eigenbasis."""
    if not isinstance(model.boundary, Dirichlet):
        raise ValueError("model does not describe a box")
    b = model.boundary
    if not b.L <= x <= b.R:
        raise ValueError(f"site x={x} outside the box [{b.L}, {b.R}]")
    if not b.L < x0 < b.R:
        raise ValueError(f"x0={x0} is not an interior site of [{b.L}, {b.R}]")
    sites = np.array([x], dtype=np.int64)
    return complex(_dirichlet_profile(model, x0, sites, float(t))[0])


def spectral_amplitude_periodic(model: SpectralModel, x0: int, x: int,
                                t: float) -> complex:
    """Ring amplitude from the discrete Fourier eigenbasis."""
    if not isinstance(model.boundary, Periodic):
        raise ValueError("model does not describe a ring")
    b = model.boundary
    if not b.L <= x <= b.R:
        raise ValueError(f"site x={x} outside the ring window [{b.L}, {b.R}]")
    sites = np.array([x], dtype=np.int64)
    return complex(_periodic_profile(model, x0, sites, float(t))[0])


def spectral_grid(spec: WalkSpec, sites, times) -> AmplitudeGrid:
    """Amplitude grid evaluated entirely in the eigenbasis."""
    model = spectral_model(spec.boundary, spec.q)
    sites = np.asarray(sites, dtype=np.int64)
    times = np.asarray(times, dtype=float)
    profile = (_dirichlet_profile if isinstance(spec.boundary, Dirichlet)
               else _periodic_profile)
    data = np.empty((sites.size, times.size), dtype=complex)
    for j, t in enumerate(times):
        data[:, j] = profile(model, spec.x0, sites, float(t))
    return AmplitudeGrid(spec=spec, sites=sites, times=times, data=data,
                         method="spectral")


@dataclass
class OdeRun:
    """Final state of one integration; window is inclusive on both ends."""

    spec: WalkSpec
    window: tuple[int, int]
    dt: float
    state: np.ndarray

    def amplitude(self, x: int) -> complex:
        """State entry at site x; reflecting walls read as exact zeros."""
        b = self.spec.boundary
        if isinstance(b, LeftWall) and x == b.L:
            return 0j
        if isinstance(b, Dirichlet) and x in (b.L, b.R):
            return 0j
        if isinstance(b, Periodic) and x == b.R:
            x = b.L
        lo, hi = self.window
        if not lo <= x <= hi:
            raise ValueError(f"site x={x} outside the integration window "
                             f"[{lo}, {hi}]")
        return complex(self.state[x - lo])


def _window(spec: WalkSpec, horizon: float, pad: int,
            extra_sites=None) -> tuple[int, int]:
    b = spec.boundary
    reach = math.ceil(2.0 * horizon)
    if isinstance(b, Dirichlet):
        return b.L + 1, b.R - 1
    if isinstance(b, Periodic):
        return b.L, b.R - 1
    hi = spec.x0 + reach + pad
    lo = spec.x0 - reach - pad
    if extra_sites is not None and len(extra_sites):
        hi = max(hi, int(np.max(extra_sites)) + pad)
        lo = min(lo, int(np.min(extra_sites)) - pad)
    if isinstance(b, LeftWall):
        lo = b.L + 1
    return lo, hi


def _derivative(spec: WalkSpec):
    q = spec.q
    if isinstance(spec.boundary, Periodic):
        def deriv(psi: np.ndarray) -> np.ndarray:
            return 1j * (np.roll(psi, 1) + np.roll(psi, -1) - q * psi)
        return deriv

    # hard zeros beyond both window ends
    def deriv(psi: np.ndarray) -> np.ndarray:
        out = np.empty_like(psi)
        out[1:-1] = psi[:-2] + psi[2:]
        out[0] = psi[1] if psi.size > 1 else 0.0
        out[-1] = psi[-2] if psi.size > 1 else 0.0
        return 1j * (out - q * psi)
    return deriv


def _rk4_segment(psi: np.ndarray, span: float, dt: float, deriv) -> np.ndarray:
    if span <= 0.0:
        return psi
    steps = max(1, math.ceil(span / dt))
    h = span / steps
    for _ in range(steps):
        k1 = deriv(psi)
        k2 = deriv(psi + 0.5 * h * k1)
        k3 = deriv(psi + 0.5 * h * k2)
        k4 = deriv(psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
    return psi


def _integrate(spec: WalkSpec, record_times: np.ndarray, dt: float,
               window: tuple[int, int]):
    lo, hi = window
    psi = np.zeros(hi - lo + 1, dtype=complex)
    psi[spec.x0 - lo] = 1.0
    deriv = _derivative(spec)
    now = 0.0
    states = []
    for t in record_times:
        psi = _rk4_segment(psi, float(t) - now, dt, deriv)
        now = float(t)
        states.append(psi.copy())
    drift = abs(float(np.sum(np.abs(psi) ** 2)) - 1.0)
    if drift > 1e-6:
        raise RuntimeError(
            f"integrator norm drift {drift:.3e} exceeds 1e-6; reduce dt={dt}")
    return states


def ode_evolve(spec: WalkSpec, horizon: float, dt: float = 1e-3,
               window_pad: int = 40) -> OdeRun:
    """Integrate the lattice equations to ``horizon`` with fixed-step RK4.

    The unbounded regimes are windowed to x0 +- (2*horizon + pad) with
    hard zeros beyond the edges; nothing inside the light cone can feel
    the edge by the end of the run.  Norm drift beyond 1e-6 raises.
    """
    if not (math.isfinite(horizon) and horizon >= 0.0):
        raise ValueError(f"horizon must be non-negative and finite, got {horizon}")
    if not (0.0 < dt <= 0.01):
        raise ValueError(f"dt must lie in (0, 0.01], got {dt}")
    if window_pad < 20:
        raise ValueError(f"window_pad must be at least 20, got {window_pad}")
    window = _window(spec, horizon, window_pad)
    states = _integrate(spec, np.array([horizon]), dt, window)
    return OdeRun(spec=spec, window=window, dt=dt, state=states[-1])


def ode_grid(spec: WalkSpec, sites, times, dt: float = 5e-3,
             window_pad: int = 40) -> AmplitudeGrid:
    """Amplitude grid from one continuous RK4 integration."""
    sites = np.asarray(sites, dtype=np.int64)
    times = np.asarray(times, dtype=float)
    if (times < 0).any():
        raise ValueError("times must be non-negative")
    if not (0.0 < dt <= 0.01):
        raise ValueError(f"dt must lie in (0, 0.01], got {dt}")
    order = np.argsort(times, kind="stable")
    window = _window(spec, float(times.max()), window_pad, extra_sites=sites)
    states = _integrate(spec, times[order], dt, window)
    run = OdeRun(spec=spec, window=window, dt=dt, state=states[0])
    data = np.empty((sites.size, times.size), dtype=complex)
    for pos, j in enumerate(order):
        run.state = states[pos]
        data[:, j] = [run.amplitude(int(x)) for x in sites]
    return AmplitudeGrid(spec=spec, sites=sites, times=times, data=data,
                         method="ode")

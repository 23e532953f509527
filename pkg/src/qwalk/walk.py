"""Closed-form walk amplitudes on the line, half line, box and ring.

The free-lattice propagator from site x0 is

    psi(x, t) = e^{-i t q} * i^{|x-x0|} * J_{|x-x0|}(2t),

and reflecting or periodic boundaries are folded in by the method of
images: a wall at L contributes the negated mirror source 2L - x0, two
walls at L and R an alternating doubly-infinite mirror family, and a
ring of width N = R - L the translated family x0 + nN.  The infinite
image families are truncated symmetrically at |n| <= k, with k planned
by the bounds module.

All evaluators share one Bessel batch per time step: amplitudes at
every site of a grid row read from the same backward-recurrence pass.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import bessel
from .bounds import TruncationPlan, truncation_k

__all__ = [
    "AmplitudeGrid",
    "Boundary",
    "Dirichlet",
    "LeftWall",
    "Periodic",
    "Unbounded",
    "WalkSpec",
    "amplitude_dirichlet",
    "amplitude_left_wall",
    "amplitude_periodic",
    "amplitude_unbounded",
    "evaluate_grid",
    "mirror_points",
    "periodic_points",
]

# i**n, indexed by n mod 4
_PHASES = np.array([1 + 0j, 1j, -1 + 0j, -1j])


@dataclass(frozen=True)
class Unbounded:
    """Free lattice, all integer sites."""


@dataclass(frozen=True)
class LeftWall:
    """Reflecting wall at L; the walk lives on sites x >= L."""

    L: int


@dataclass(frozen=True)
class Dirichlet:
    """Reflecting walls at L and R; interior sites are L < x < R."""

    L: int
    R: int

    def __post_init__(self) -> None:
        if self.R - self.L < 2:
            raise ValueError(
                f"need at least one interior site, got L={self.L}, R={self.R}")


@dataclass(frozen=True)
class Periodic:
    """Ring of N = R - L sites; x = R is the same site as x = L."""

    L: int
    R: int

    def __post_init__(self) -> None:
        # a one-site ring is legal: both hops wrap back onto the site
        if self.R - self.L < 1:
            raise ValueError(
                f"ring needs at least one site, got L={self.L}, R={self.R}")


Boundary = Union[Unbounded, LeftWall, Dirichlet, Periodic]


@dataclass(frozen=True)
class WalkSpec:
    """Initial site, potential offset and boundary regime of one walk."""

    boundary: Boundary
    x0: int
    q: float = 0.0

    def __post_init__(self) -> None:
        b = self.boundary
        if isinstance(b, LeftWall) and not self.x0 > b.L:
            raise ValueError(f"x0 must lie right of the wall, got x0={self.x0}, L={b.L}")
        if isinstance(b, Dirichlet) and not b.L < self.x0 < b.R:
            raise ValueError(
                f"x0 must be an interior site, got x0={self.x0}, L={b.L}, R={b.R}")
        if isinstance(b, Periodic) and not b.L <= self.x0 < b.R:
            raise ValueError(
                f"x0 must satisfy L <= x0 < R, got x0={self.x0}, L={b.L}, R={b.R}")


@dataclass
class AmplitudeGrid:
    """Amplitudes over a site x time grid, data[i, j] = psi(sites[i], times[j]).

    ``truncation_order`` is the image-sum k used for box or ring series
    evaluation, None when no truncated series was involved.
    """

    spec: WalkSpec
    sites: np.ndarray
    times: np.ndarray
    data: np.ndarray
    method: str
    truncation_order: int | None = None


def mirror_points(L: int, R: int, x0: int, n: int) -> int:
    """The n-th mirror source of x0 under reflections at L and R.

    Index 0 is the source itself; negative indices grow leftward,
    positive rightward, alternating wall first:

        x_{-m} = 2L - x_{m-1},    x_{m} = 2R - x_{-(m-1)}.
    """
    neg, pos = x0, x0
    for _ in range(abs(n)):
        neg, pos = 2 * L - pos, 2 * R - neg
    return neg if n < 0 else pos


def periodic_points(L: int, R: int, x0: int, n: int) -> int:
    """The n-th translated source of x0 on the ring, x0 + n(R - L)."""
    return x0 + n * (R - L)


def _mirror_family(L: int, R: int, x0: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    # points and parity signs for n = -k .. k, built by the two-sided
    # reflection recursion
    points = np.empty(2 * k + 1, dtype=np.int64)
    signs = np.empty(2 * k + 1, dtype=np.int64)
    points[k] = x0
    signs[k] = 1
    neg, pos = x0, x0
    for m in range(1, k + 1):
        neg, pos = 2 * L - pos, 2 * R - neg
        points[k - m] = neg
        points[k + m] = pos
        signs[k - m] = signs[k + m] = -1 if m % 2 else 1
    return points, signs


def _translate_family(L: int, R: int, x0: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(-k, k + 1, dtype=np.int64)
    return x0 + n * (R - L), np.ones(2 * k + 1, dtype=np.int64)


def _image_profile(
    sites: np.ndarray,
    points: np.ndarray,
    signs: np.ndarray,
    t: float,
    q: float,
) -> np.ndarray:
    # one Bessel batch serves every site and image of this time step
    orders = np.abs(sites[:, None] - points[None, :])
    batch = bessel.bessel_j_batch(2.0 * t, int(orders.max()))
    terms = signs * _PHASES[orders & 3] * batch.values[orders]
    # exactly rounded sums: on a wall the image pairs cancel to the last
    # bit, leaving an amplitude far below the truncation tail, and naive
    # left-to-right addition would bury that in rounding noise
    profile = np.array([complex(math.fsum(row.real), math.fsum(row.imag))
                        for row in terms])
    return cmath.exp(-1j * q * t) * profile


def _delta_profile(sites: np.ndarray, x0: int) -> np.ndarray:
    return (sites == x0).astype(complex)


def _check_horizon(t: float) -> None:
    if not (np.isfinite(t) and t >= 0.0):
        raise ValueError(f"t must be non-negative and finite, got {t}")


def _check_order(k: int) -> None:
    if not (isinstance(k, int) and k >= 1):
        raise ValueError(f"truncation order must be a positive integer, got {k}")


def amplitude_unbounded(spec: WalkSpec, x: int, t: float) -> complex:
    """Free-lattice amplitude at site x and horizon t."""
    if not isinstance(spec.boundary, Unbounded):
        raise ValueError("spec does not describe a free walk")
    _check_horizon(t)
    if t == 0.0:
        return 1.0 + 0j if x == spec.x0 else 0j
    sites = np.array([x], dtype=np.int64)
    points = np.array([spec.x0], dtype=np.int64)
    ones = np.ones(1, dtype=np.int64)
    return complex(_image_profile(sites, points, ones, t, spec.q)[0])


def amplitude_left_wall(spec: WalkSpec, x: int, t: float) -> complex:
    """Half-line amplitude; exactly zero on the wall itself."""
    if not isinstance(spec.boundary, LeftWall):
        raise ValueError("spec does not describe a single-wall walk")
    _check_horizon(t)
    L = spec.boundary.L
    if x < L:
        raise ValueError(f"site x={x} lies left of the wall at L={L}")
    if t == 0.0:
        return 1.0 + 0j if x == spec.x0 else 0j
    sites = np.array([x], dtype=np.int64)
    points = np.array([spec.x0, 2 * L - spec.x0], dtype=np.int64)
    signs = np.array([1, -1], dtype=np.int64)
    return complex(_image_profile(sites, points, signs, t, spec.q)[0])


def amplitude_dirichlet(spec: WalkSpec, x: int, t: float, k: int) -> complex:
    """Box amplitude from the alternating mirror family, |n| <= k."""
    if not isinstance(spec.boundary, Dirichlet):
        raise ValueError("spec does not describe a two-wall walk")
    _check_horizon(t)
    _check_order(k)
    b = spec.boundary
    if not b.L <= x <= b.R:
        raise ValueError(f"site x={x} outside the box [{b.L}, {b.R}]")
    if t == 0.0:
        return 1.0 + 0j if x == spec.x0 else 0j
    sites = np.array([x], dtype=np.int64)
    points, signs = _mirror_family(b.L, b.R, spec.x0, k)
    return complex(_image_profile(sites, points, signs, t, spec.q)[0])


def amplitude_periodic(spec: WalkSpec, x: int, t: float, k: int) -> complex:
    """Ring amplitude from the translated family, |n| <= k.

    Any integer x is folded into [L, R), so x = R names the same site
    as x = L and the wrap-around identity psi(L, t) = psi(R, t) holds
    exactly, not just up to the truncation tail.
    """
    if not isinstance(spec.boundary, Periodic):
        raise ValueError("spec does not describe a ring walk")
    _check_horizon(t)
    _check_order(k)
    b = spec.boundary
    folded = b.L + (x - b.L) % (b.R - b.L)
    if t == 0.0:
        return 1.0 + 0j if folded == spec.x0 else 0j
    sites = np.array([folded], dtype=np.int64)
    points, signs = _translate_family(b.L, b.R, spec.x0, k)
    return complex(_image_profile(sites, points, signs, t, spec.q)[0])


def _validate_sites(spec: WalkSpec, sites: np.ndarray) -> None:
    b = spec.boundary
    if isinstance(b, LeftWall) and sites.min(initial=b.L) < b.L:
        bad = int(sites[sites < b.L][0])
        raise ValueError(f"site x={bad} lies left of the wall at L={b.L}")
    if isinstance(b, Dirichlet) and ((sites < b.L).any() or (sites > b.R).any()):
        bad = int(sites[(sites < b.L) | (sites > b.R)][0])
        raise ValueError(f"site x={bad} outside the box [{b.L}, {b.R}]")
    # ring sites are equivalence classes mod N and fold instead


def evaluate_grid(
    spec: WalkSpec,
    sites,
    times,
    epsilon: float = 1e-5,
) -> AmplitudeGrid:
    """Series amplitudes over a site x time grid.

    For the box and the ring one truncation order is planned from the
    largest time in the grid (the tail bound only shrinks for smaller
    times) at accuracy ``epsilon``; the free and single-wall regimes
    are closed forms and ignore epsilon.
    """
    sites = np.asarray(sites, dtype=np.int64)
    times = np.asarray(times, dtype=float)
    if sites.ndim != 1 or sites.size == 0:
        raise ValueError("sites must be a non-empty 1D integer collection")
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1D collection")
    if not np.all(np.isfinite(times)) or (times < 0).any():
        bad = float(times[~(np.isfinite(times) & (times >= 0))][0])
        raise ValueError(f"times must be non-negative and finite, got t={bad}")
    _validate_sites(spec, sites)

    b = spec.boundary
    work_sites = sites
    if isinstance(b, Periodic):
        work_sites = b.L + (sites - b.L) % (b.R - b.L)
    plan: TruncationPlan | None = None
    t_ref = float(times.max())
    if isinstance(b, (Dirichlet, Periodic)) and t_ref > 0.0:
        plan = truncation_k(t_ref, epsilon, b.R - b.L)

    if isinstance(b, Unbounded):
        families = (np.array([spec.x0], dtype=np.int64),
                    np.ones(1, dtype=np.int64))
    elif isinstance(b, LeftWall):
        families = (np.array([spec.x0, 2 * b.L - spec.x0], dtype=np.int64),
                    np.array([1, -1], dtype=np.int64))
    elif isinstance(b, Dirichlet):
        families = _mirror_family(b.L, b.R, spec.x0, plan.k) if plan else None
    else:
        families = _translate_family(b.L, b.R, spec.x0, plan.k) if plan else None

    data = np.empty((sites.size, times.size), dtype=complex)
    for j, t in enumerate(times):
        t = float(t)
        if t == 0.0 or families is None:
            data[:, j] = _delta_profile(work_sites, spec.x0)
        else:
            data[:, j] = _image_profile(work_sites, families[0], families[1],
                                        t, spec.q)
        bad = ~np.isfinite(data[:, j])
        if bad.any():
            x_bad = int(sites[bad][0])
            raise RuntimeError(
                f"non-finite amplitude at site x={x_bad}, t={t}")

    return AmplitudeGrid(
        spec=spec,
        sites=sites,
        times=times,
        data=data,
        method="series",
        truncation_order=plan.k if plan else None,
    )

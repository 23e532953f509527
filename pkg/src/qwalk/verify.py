"""Cross-oracle and invariant property suite.

Every closed form in the package is checked here against an
independent route: the recurrence kernel against the quadrature
oracle and its defining identities, the image sums against the
eigenbasis solver and the RK4 integrator, the truncation planner
against brute-force refinement, and the lattice equations themselves
against a finite-difference residual.

``run_suite(perturb=True)`` routes every Bessel batch through a hook
that scales one order by 1 + 1e-3.  That is a testing aid: a correct
pipeline must visibly fail (the unitarity properties in particular)
when its kernel is wrong by a part in a thousand.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass

import numpy as np

from . import bessel, oracle, walk
from .bounds import (
    apriori_error_bound,
    factorial_tail_bound,
    t_threshold,
    truncation_k,
    zeta,
)

__all__ = ["PropertyResult", "run_suite"]


@dataclass(frozen=True)
class PropertyResult:
    """One property: what was measured, what was allowed, verdict."""

    name: str
    measured: float
    tolerance: float
    passed: bool


def _result(name: str, measured: float, tolerance: float,
            passed=None) -> PropertyResult:
    if passed is None:
        passed = bool(measured <= tolerance)
    return PropertyResult(name, float(measured), float(tolerance), passed)


@contextlib.contextmanager
def _perturbed_kernel(scale: float = 1.0 + 1e-3, order: int = 1):
    """Scale one order of every Bessel batch; restores on exit."""
    original = bessel.bessel_j_batch

    def wrapped(x, n_max):
        batch = original(x, n_max)
        if batch.max_order >= order:
            batch.values[order] *= scale
        return batch

    bessel.bessel_j_batch = wrapped
    try:
        yield
    finally:
        bessel.bessel_j_batch = original


# ---------------------------------------------------------------- kernel


def _prop_bessel_normalization():
    worst = 0.0
    for x in (0.5, 2.0, 7.0, 31.0, 120.0):
        values = bessel.bessel_j_batch(x, int(math.ceil(x)) + 60).values
        worst = max(worst, abs(values[0] + 2.0 * values[2::2].sum() - 1.0))
    return _result("bessel_normalization", worst, 1e-12)


def _prop_bessel_hansen_sum():
    worst = 0.0
    for x in (0.5, 2.0, 7.0, 31.0, 120.0):
        values = bessel.bessel_j_batch(x, int(math.ceil(x)) + 60).values
        worst = max(worst, abs(values[0] ** 2 + 2.0 * np.sum(values[1:] ** 2) - 1.0))
    return _result("bessel_hansen_square_sum", worst, 1e-10)


def _prop_bessel_quadrature():
    worst = 0.0
    for n in (0, 2, 9, 30, 50):
        for x in (0.5, 4.0, 18.0, 50.0):
            direct = bessel.bessel_j_batch(x, n).values[n]
            worst = max(worst, abs(direct - bessel.bessel_j_integral_oracle(n, x)))
    return _result("bessel_quadrature_agreement", worst, 1e-9)


def _prop_bessel_growth_bound():
    worst = 0.0
    for t in (0.5, 2.0, 6.0, 10.0):
        values = bessel.bessel_j_batch(2.0 * t, 30).values
        for n in range(31):
            cap = math.exp(n * math.log(t) - math.lgamma(n + 1))
            worst = max(worst, abs(values[n]) - cap)
    return _result("bessel_growth_bound", max(worst, 0.0), 0.0,
                   passed=worst <= 1e-15)


def _prop_bessel_derivative_identity():
    h = 1e-3
    worst = 0.0
    for n in (1, 7, 23, 50):
        for x in (0.5, 3.0, 12.0, 20.0):
            numeric = (bessel.bessel_j(n, x + h) - bessel.bessel_j(n, x - h)) / (2 * h)
            values = bessel.bessel_j_batch(x, n + 1).values
            worst = max(worst, abs(numeric - 0.5 * (values[n - 1] - values[n + 1])))
    return _result("bessel_derivative_identity", worst, 1e-6)


def _prop_bessel_batch_single_agreement():
    worst = 0.0
    for n, x in ((0, 2.0), (11, 6.5), (40, 17.0)):
        worst = max(worst, abs(bessel.bessel_j(n, x)
                               - bessel.bessel_j_batch(x, n).values[n]))
    return _result("bessel_batch_single_agreement", worst, 0.0)


# ---------------------------------------------------------------- images


def _prop_mirror_closed_form():
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(60):
        L = int(rng.integers(-40, 40))
        N = int(rng.integers(2, 50))
        R = L + N
        x0 = int(rng.integers(L + 1, R))
        for n in range(-60, 61):
            direct = walk.mirror_points(L, R, x0, n)
            if n % 2 == 0:
                closed = x0 + n * N
            else:
                closed = 2 * R - x0 + (n - 1) * N
            bad += direct != closed
    return _result("mirror_closed_form", bad, 0.0)


def _prop_image_bracketing():
    bad = 0
    for (L, R, x0) in ((0, 30, 13), (-5, 3, 0), (2, 4, 3)):
        for n in range(1, 40):
            bad += not walk.mirror_points(L, R, x0, n) > R
            bad += not walk.mirror_points(L, R, x0, -n) < L
    return _result("image_bracketing", bad, 0.0)


# ---------------------------------------------------------------- walk


def _series_grid(boundary, x0, q, sites, times, epsilon):
    spec = walk.WalkSpec(boundary=boundary, x0=x0, q=q)
    return walk.evaluate_grid(spec, sites, times, epsilon=epsilon)


def _prop_wall_zero_left():
    spec = walk.WalkSpec(boundary=walk.LeftWall(L=-2), x0=5, q=0.3)
    worst = max(abs(walk.amplitude_left_wall(spec, -2, t))
                for t in (0.5, 3.0, 17.0))
    return _result("left_wall_exact_zero", worst, 0.0)


def _prop_dirichlet_wall_bound():
    worst = 0.0
    for N, t in ((8, 10.0), (30, 60.0)):
        grid = _series_grid(walk.Dirichlet(0, N), N // 2, 0.0,
                            np.arange(0, N + 1), [t], 1e-5)
        bound = apriori_error_bound(grid.truncation_order, t, N)
        wall = max(abs(grid.data[0, 0]), abs(grid.data[-1, 0]))
        worst = max(worst, wall / bound)
    return _result("dirichlet_wall_within_bound", worst, 1.0)


def _prop_periodic_wraparound():
    worst = 0.0
    eps = 1e-6
    for N, t in ((8, 10.0), (30, 40.0)):
        spec = walk.WalkSpec(boundary=walk.Periodic(0, N), x0=N // 3, q=0.0)
        k = truncation_k(t, eps, N).k
        gap = abs(walk.amplitude_periodic(spec, 0, t, k)
                  - walk.amplitude_periodic(spec, N, t, k))
        worst = max(worst, gap / (2.0 * eps))
    return _result("periodic_wraparound_identity", worst, 1.0)


def _prop_phase_invariance():
    sites = np.arange(-30, 31)
    times = [0.5, 4.0, 11.0]
    base = _series_grid(walk.Unbounded(), 0, 0.0, sites, times, 1e-6)
    shifted = _series_grid(walk.Unbounded(), 0, 1.7, sites, times, 1e-6)
    worst = float(np.max(np.abs(np.abs(shifted.data) - np.abs(base.data))))
    return _result("potential_phase_invariance", worst, 1e-14)


def _prop_unitarity_unbounded():
    worst = 0.0
    for t in (1.0, 5.0, 20.0):
        reach = int(math.ceil(2 * t)) + 40
        grid = _series_grid(walk.Unbounded(), 0, 0.4, np.arange(-reach, reach + 1),
                            [t], 1e-6)
        worst = max(worst, abs(float(np.sum(np.abs(grid.data[:, 0]) ** 2)) - 1.0))
    return _result("unitarity_unbounded_series", worst, 1e-10)


def _prop_unitarity_box_series():
    eps = 1e-7
    worst = 0.0
    for N, t in ((8, 6.0), (30, 45.0)):
        grid = _series_grid(walk.Dirichlet(0, N), N // 2, 0.2,
                            np.arange(1, N), [t], eps)
        worst = max(worst,
                    abs(float(np.sum(np.abs(grid.data[:, 0]) ** 2)) - 1.0))
    return _result("unitarity_box_series", worst / (10 * eps), 1.0)


def _prop_unitarity_ring_series():
    eps = 1e-7
    worst = 0.0
    for N, t in ((9, 6.0), (30, 45.0)):
        grid = _series_grid(walk.Periodic(0, N), 2, 0.2,
                            np.arange(0, N), [t], eps)
        worst = max(worst,
                    abs(float(np.sum(np.abs(grid.data[:, 0]) ** 2)) - 1.0))
    return _result("unitarity_ring_series", worst / (10 * eps), 1.0)


def _prop_unitarity_spectral():
    worst = 0.0
    for boundary, interior in (
        (walk.Dirichlet(0, 16), np.arange(1, 16)),
        (walk.Periodic(0, 16), np.arange(0, 16)),
    ):
        spec = walk.WalkSpec(boundary=boundary, x0=5, q=0.9)
        grid = oracle.spectral_grid(spec, interior, [13.7])
        worst = max(worst,
                    abs(float(np.sum(np.abs(grid.data[:, 0]) ** 2)) - 1.0))
    return _result("unitarity_spectral", worst, 1e-10)


def _prop_truncation_soundness():
    worst = 0.0
    for N in (8, 30):
        for t in (10.0, 60.0):
            eps = 1e-5
            k = truncation_k(t, eps, N).k
            for boundary in (walk.Dirichlet(0, N), walk.Periodic(0, N)):
                spec = walk.WalkSpec(boundary=boundary, x0=N // 2 - 1, q=0.0)
                sites = (np.arange(1, N) if isinstance(boundary, walk.Dirichlet)
                         else np.arange(0, N))
                coarse = np.array([
                    walk.amplitude_dirichlet(spec, int(x), t, k)
                    if isinstance(boundary, walk.Dirichlet)
                    else walk.amplitude_periodic(spec, int(x), t, k)
                    for x in sites])
                fine = np.array([
                    walk.amplitude_dirichlet(spec, int(x), t, k + 25)
                    if isinstance(boundary, walk.Dirichlet)
                    else walk.amplitude_periodic(spec, int(x), t, k + 25)
                    for x in sites])
                worst = max(worst, float(np.max(np.abs(coarse - fine))) / eps)
    return _result("truncation_soundness", worst, 1.0)


def _prop_pde_residual_decay():
    spec = walk.WalkSpec(boundary=walk.Dirichlet(0, 12), x0=5, q=0.6)
    k = 14
    t = 4.0

    def residual(h):
        worst = 0.0
        for x in (3, 5, 8):
            plus = walk.amplitude_dirichlet(spec, x, t + h, k)
            minus = walk.amplitude_dirichlet(spec, x, t - h, k)
            here = walk.amplitude_dirichlet(spec, x, t, k)
            left = walk.amplitude_dirichlet(spec, x - 1, t, k)
            right = walk.amplitude_dirichlet(spec, x + 1, t, k)
            lhs = 1j * (plus - minus) / (2 * h)
            rhs = -left + spec.q * here - right
            worst = max(worst, abs(lhs - rhs))
        return worst

    ratio = residual(1e-3) / residual(1e-4)
    return _result("pde_residual_second_order", ratio, 300.0,
                   passed=100.0 / 3.0 <= ratio <= 300.0)


# ---------------------------------------------------------------- bounds


def _prop_bound_ordering():
    worst = 0.0
    for N in (8, 16, 30):
        for t in (5.0, 30.0):
            for extra in (0, 3):
                k = truncation_k(t, 1e-5, N).k + extra
                ratio = (factorial_tail_bound(k, t, N, terms=30)
                         / apriori_error_bound(k, t, N))
                worst = max(worst, ratio)
    return _result("tail_bound_ordering", worst, 1.0)


def _prop_stirling_lower_bound():
    worst = 0.0
    for m in range(1, 401):
        stirling = 0.5 * math.log(2 * math.pi * m) + m * math.log(m) - m
        worst = max(worst, stirling - math.lgamma(m + 1))
    return _result("stirling_lower_bound", worst, 1e-12)


def _prop_k_monotone():
    bad = 0
    for N in (8, 30):
        eps = 1e-5
        start = t_threshold(eps, N) + 0.01
        ks = [truncation_k(t, eps, N).k
              for t in np.linspace(start, start + 80, 120)]
        bad += sum(b < a for a, b in zip(ks, ks[1:]))
        ks_eps = [truncation_k(25.0, e, N).k
                  for e in (1e-3, 1e-5, 1e-7, 1e-9)]
        bad += sum(b < a for a, b in zip(ks_eps, ks_eps[1:]))
    return _result("truncation_k_monotone", bad, 0.0)


def _prop_convergence_guard():
    bad = 0
    for N in (2, 8, 30):
        for eps in (1e-3, 1e-7):
            for t in (0.05, 0.8, t_threshold(eps, N), 7.0, 60.0):
                plan = truncation_k(float(t), eps, N)
                bad += not plan.k * N > t * math.e
                bad += not (math.isfinite(plan.apriori_bound)
                            and plan.apriori_bound > 0.0)
    return _result("planned_k_convergence_guard", bad, 0.0)


def _prop_zeta_floor():
    worst = 0.0
    for N in (4, 30):
        eps = 1e-5
        thr = t_threshold(eps, N)
        for t in (thr, thr * 1.5, thr + 40):
            worst = max(worst, math.e - zeta(float(t), eps, N))
    return _result("zeta_at_or_above_threshold", worst, 1e-12)


# ---------------------------------------------------------------- oracle


def _prop_spectral_wall_zero():
    model = oracle.spectral_model(walk.Dirichlet(0, 9), 0.5)
    worst = max(abs(oracle.spectral_amplitude_dirichlet(model, 4, x, t))
                for x in (0, 9) for t in (0.5, 8.0))
    return _result("spectral_wall_zero", worst, 1e-13)


def _prop_single_mode_box_phase():
    # the width-2 box has one eigenvalue, 2 cos(pi/2) - q = -q, so both
    # solvers must return exactly e^{-i q t} on the lone interior site
    q = 0.9
    spec = walk.WalkSpec(boundary=walk.Dirichlet(L=0, R=2), x0=1, q=q)
    model = oracle.spectral_model(spec.boundary, q)
    worst = 0.0
    for t in (0.7, 3.0, 12.0):
        closed = complex(math.cos(q * t), -math.sin(q * t))
        k = truncation_k(t, 1e-12, 2).k
        worst = max(worst,
                    abs(walk.amplitude_dirichlet(spec, 1, t, k) - closed),
                    abs(oracle.spectral_amplitude_dirichlet(model, 1, 1, t)
                        - closed))
    return _result("single_mode_box_phase", worst, 1e-10)


def _prop_series_vs_spectral():
    worst = 0.0
    for boundary in (walk.Dirichlet(0, 16), walk.Periodic(0, 16)):
        spec = walk.WalkSpec(boundary=boundary, x0=6, q=1.3)
        sites = (np.arange(0, 17) if isinstance(boundary, walk.Dirichlet)
                 else np.arange(0, 16))
        times = [2.0, 9.0, 25.0]
        series = walk.evaluate_grid(spec, sites, times, epsilon=1e-8)
        spectral = oracle.spectral_grid(spec, sites, times)
        worst = max(worst, float(np.max(np.abs(series.data - spectral.data))))
    return _result("series_vs_spectral", worst, 1e-6)


def _prop_series_vs_ode_free():
    spec = walk.WalkSpec(boundary=walk.Unbounded(), x0=0, q=0.0)
    run = oracle.ode_evolve(spec, 1.0, dt=1e-3)
    worst = max(abs(walk.amplitude_unbounded(spec, x, 1.0) - run.amplitude(x))
                for x in (-2, 0, 1, 3))
    return _result("series_vs_ode_free", worst, 1e-7)


def _prop_spectral_vs_ode_box():
    spec = walk.WalkSpec(boundary=walk.Dirichlet(0, 12), x0=5, q=0.8)
    model = oracle.spectral_model(spec.boundary, spec.q)
    run = oracle.ode_evolve(spec, 3.0, dt=2e-3)
    worst = max(abs(oracle.spectral_amplitude_dirichlet(model, 5, x, 3.0)
                    - run.amplitude(x)) for x in range(1, 12))
    return _result("spectral_vs_ode_box", worst, 1e-8)


def _prop_ode_norm_drift():
    spec = walk.WalkSpec(boundary=walk.Periodic(0, 10), x0=3, q=0.5)
    run = oracle.ode_evolve(spec, 5.0, dt=5e-3)
    drift = abs(float(np.sum(np.abs(run.state) ** 2)) - 1.0)
    return _result("ode_norm_drift", drift, 1e-8)


def _prop_ode_window_independence():
    spec = walk.WalkSpec(boundary=walk.Unbounded(), x0=0, q=0.0)
    narrow = oracle.ode_evolve(spec, 4.0, dt=5e-3, window_pad=20)
    wide = oracle.ode_evolve(spec, 4.0, dt=5e-3, window_pad=40)
    worst = max(abs(narrow.amplitude(x) - wide.amplitude(x))
                for x in range(-3, 4))
    return _result("ode_window_independence", worst, 1e-9)


def _prop_ode_time_reversal():
    spec = walk.WalkSpec(boundary=walk.Periodic(0, 11), x0=4, q=0.7)
    forward = oracle.ode_evolve(spec, 3.0, dt=2e-3)
    back_spec = spec
    lo, hi = forward.window
    deriv = oracle._derivative(back_spec)
    psi = np.conj(forward.state)
    psi = oracle._rk4_segment(psi, 3.0, 2e-3, deriv)
    psi = np.conj(psi)
    start = np.zeros(hi - lo + 1, dtype=complex)
    start[back_spec.x0 - lo] = 1.0
    worst = float(np.max(np.abs(psi - start)))
    return _result("ode_time_reversal", worst, 1e-9)


_PROPERTIES = (
    _prop_bessel_normalization,
    _prop_bessel_hansen_sum,
    _prop_bessel_quadrature,
    _prop_bessel_growth_bound,
    _prop_bessel_derivative_identity,
    _prop_bessel_batch_single_agreement,
    _prop_mirror_closed_form,
    _prop_image_bracketing,
    _prop_wall_zero_left,
    _prop_dirichlet_wall_bound,
    _prop_periodic_wraparound,
    _prop_phase_invariance,
    _prop_unitarity_unbounded,
    _prop_unitarity_box_series,
    _prop_unitarity_ring_series,
    _prop_unitarity_spectral,
    _prop_truncation_soundness,
    _prop_pde_residual_decay,
    _prop_bound_ordering,
    _prop_stirling_lower_bound,
    _prop_k_monotone,
    _prop_convergence_guard,
    _prop_zeta_floor,
    _prop_spectral_wall_zero,
    _prop_single_mode_box_phase,
    _prop_series_vs_spectral,
    _prop_series_vs_ode_free,
    _prop_spectral_vs_ode_box,
    _prop_ode_norm_drift,
    _prop_ode_window_independence,
    _prop_ode_time_reversal,
)


def run_suite(perturb: bool = False) -> list[PropertyResult]:
    """Run every property; optionally with the perturbed-kernel hook."""
    if perturb:
        with _perturbed_kernel():
            return [prop() for prop in _PROPERTIES]
    return [prop() for prop in _PROPERTIES]

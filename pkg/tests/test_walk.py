"""Propagator tests: closed forms, image families, grid evaluation.

The frozen amplitudes below come from the exact-rational Bessel series
in conftest.py, not from the package under test.
"""

import cmath
import math

import numpy as np
import pytest

from conftest import J0_AT_2, J1_AT_2, J3_AT_2
from qwalk import (
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
from qwalk.bounds import apriori_error_bound, truncation_k
from qwalk.oracle import (
    spectral_amplitude_dirichlet,
    spectral_amplitude_periodic,
    spectral_model,
)


def test_unbounded_origin_frozen():
    spec = WalkSpec(boundary=Unbounded(), x0=0)
    # stays-put amplitude at t=1 is J_0(2)
    assert amplitude_unbounded(spec, 0, 1.0) == pytest.approx(
        J0_AT_2, abs=1e-13)
    # one step out picks up the quarter phase i
    assert amplitude_unbounded(spec, 1, 1.0) == pytest.approx(
        1j * J1_AT_2, abs=1e-13)
    assert amplitude_unbounded(spec, -1, 1.0) == pytest.approx(
        1j * J1_AT_2, abs=1e-13)


def test_left_wall_frozen():
    # one mirror image: i (J_1 + J_3)(2) for x0=2, x=1, t=1
    spec = WalkSpec(boundary=LeftWall(L=0), x0=2)
    expected = 1j * (J1_AT_2 + J3_AT_2)
    assert amplitude_left_wall(spec, 1, 1.0) == pytest.approx(
        expected, abs=1e-13)
    assert expected == pytest.approx(1j * 0.7056680572312755, abs=1e-15)


def test_left_wall_vanishes_at_wall():
    spec = WalkSpec(boundary=LeftWall(L=3), x0=7)
    for t in (0.5, 1.0, 4.0, 17.25):
        # the two images coincide in order, so cancellation is exact
        assert amplitude_left_wall(spec, 3, t) == 0j


def test_uniform_potential_is_pure_phase():
    for q in (-1.5, 0.7, 4.0):
        base = WalkSpec(boundary=Unbounded(), x0=0)
        spun = WalkSpec(boundary=Unbounded(), x0=0, q=q)
        t = 2.75
        for x in (-3, 0, 5):
            expected = cmath.exp(-1j * q * t) * amplitude_unbounded(base, x, t)
            assert amplitude_unbounded(spun, x, t) == pytest.approx(
                expected, abs=1e-14)


@pytest.mark.parametrize("n,expected", [
    (0, 13), (-1, -13), (1, 47), (2, 73), (-2, -47),
])
def test_mirror_points_frozen(n, expected):
    assert mirror_points(0, 30, 13, n) == expected


def test_mirror_points_closed_form():
    rng = np.random.default_rng(7)
    for _ in range(50):
        L = int(rng.integers(-20, 20))
        N = int(rng.integers(2, 40))
        R = L + N
        x0 = int(rng.integers(L + 1, R))
        for n in range(-40, 41):
            expected = (x0 + n * N if n % 2 == 0
                        else 2 * R - x0 + (n - 1) * N)
            assert mirror_points(L, R, x0, n) == expected


@pytest.mark.parametrize("n,expected", [
    (0, 13), (-1, -17), (1, 43), (2, 73),
])
def test_periodic_points_frozen(n, expected):
    assert periodic_points(0, 30, 13, n) == expected


def test_box_collapses_to_single_mode():
    # N=2 leaves one interior site and one eigenvalue, 2 cos(pi/2) = 0,
    # so the amplitude is exactly 1 for all t when q = 0
    spec = WalkSpec(boundary=Dirichlet(L=0, R=2), x0=1)
    assert amplitude_dirichlet(spec, 1, 3.0, k=40) == pytest.approx(
        1.0 + 0j, abs=1e-10)


def test_dirichlet_matches_spectral_form():
    spec = WalkSpec(boundary=Dirichlet(L=0, R=8), x0=3, q=0.4)
    model = spectral_model(spec.boundary, spec.q)
    k = truncation_k(6.0, 1e-10, 8).k
    for x in range(0, 9):
        series = amplitude_dirichlet(spec, x, 6.0, k=k)
        spectral = spectral_amplitude_dirichlet(model, 3, x, 6.0)
        assert series == pytest.approx(spectral, abs=1e-9)


def test_dirichlet_wall_amplitude_below_bound():
    spec = WalkSpec(boundary=Dirichlet(L=0, R=12), x0=5)
    plan = truncation_k(9.0, 1e-6, 12)
    for x in (0, 12):
        wall = amplitude_dirichlet(spec, x, 9.0, k=plan.k)
        assert abs(wall) <= plan.apriori_bound


def test_periodic_wrap_alias():
    spec = WalkSpec(boundary=Periodic(L=0, R=10), x0=4)
    k = truncation_k(5.0, 1e-8, 10).k
    left = amplitude_periodic(spec, 0, 5.0, k=k)
    right = amplitude_periodic(spec, 10, 5.0, k=k)
    assert left == right


def test_single_site_ring_is_pure_phase():
    # both hops wrap onto the same site, so H is the scalar q - 2 and
    # the amplitude is the phase e^{i t (2 - q)}
    q = 0.3
    spec = WalkSpec(boundary=Periodic(L=0, R=1), x0=0, q=q)
    for t in (0.5, 2.0, 7.0):
        k = truncation_k(t, 1e-12, 1).k
        expected = cmath.exp(1j * t * (2.0 - q))
        assert amplitude_periodic(spec, 0, t, k=k) == pytest.approx(
            expected, abs=1e-11)


def test_small_ring_matches_circulant_oracle():
    spec = WalkSpec(boundary=Periodic(L=0, R=4), x0=1)
    model = spectral_model(spec.boundary, spec.q)
    series = amplitude_periodic(spec, 3, 2.0, k=30)
    spectral = spectral_amplitude_periodic(model, 1, 3, 2.0)
    assert series == pytest.approx(spectral, abs=1e-10)


def test_figure_grid_point_matches_spectral():
    spec = WalkSpec(boundary=Dirichlet(L=0, R=30), x0=13)
    model = spectral_model(spec.boundary, spec.q)
    series = amplitude_dirichlet(spec, 13, 5.0, k=12)
    spectral = spectral_amplitude_dirichlet(model, 13, 13, 5.0)
    assert series == pytest.approx(spectral, abs=1e-5)


def test_scalar_t_zero_is_delta():
    box = WalkSpec(boundary=Dirichlet(L=0, R=6), x0=2)
    assert amplitude_dirichlet(box, 2, 0.0, k=3) == 1.0 + 0j
    assert amplitude_dirichlet(box, 3, 0.0, k=3) == 0j
    free = WalkSpec(boundary=Unbounded(), x0=-4)
    assert amplitude_unbounded(free, -4, 0.0) == 1.0 + 0j
    assert amplitude_unbounded(free, 0, 0.0) == 0j
    ring = WalkSpec(boundary=Periodic(L=0, R=5), x0=1)
    assert amplitude_periodic(ring, 1, 0.0, k=2) == 1.0 + 0j
    # the start site aliases around the ring even at t=0
    assert amplitude_periodic(ring, 6, 0.0, k=2) == 1.0 + 0j


def test_more_images_only_refine():
    spec = WalkSpec(boundary=Dirichlet(L=0, R=8), x0=3)
    t = 5.0
    plan = truncation_k(t, 1e-7, 8)
    for x in range(1, 8):
        coarse = amplitude_dirichlet(spec, x, t, k=plan.k)
        fine = amplitude_dirichlet(spec, x, t, k=plan.k + 25)
        assert abs(coarse - fine) <= 1e-7


class TestSpecValidation:
    def test_width_floors(self):
        with pytest.raises(ValueError):
            Dirichlet(L=0, R=1)  # a box needs an interior site
        with pytest.raises(ValueError):
            Periodic(L=5, R=5)
        Periodic(L=5, R=6)  # the one-site ring is legal

    def test_start_site_domain(self):
        with pytest.raises(ValueError):
            WalkSpec(boundary=LeftWall(L=0), x0=0)
        with pytest.raises(ValueError):
            WalkSpec(boundary=Dirichlet(L=0, R=4), x0=0)
        with pytest.raises(ValueError):
            WalkSpec(boundary=Dirichlet(L=0, R=4), x0=4)
        with pytest.raises(ValueError):
            WalkSpec(boundary=Periodic(L=0, R=4), x0=4)
        WalkSpec(boundary=Periodic(L=0, R=4), x0=0)  # ring includes L

    def test_negative_time_rejected(self):
        spec = WalkSpec(boundary=Unbounded(), x0=0)
        with pytest.raises(ValueError):
            amplitude_unbounded(spec, 0, -1.0)

    def test_wrong_boundary_type_rejected(self):
        box = WalkSpec(boundary=Dirichlet(L=0, R=4), x0=2)
        with pytest.raises(ValueError):
            amplitude_unbounded(box, 2, 1.0)
        free = WalkSpec(boundary=Unbounded(), x0=0)
        with pytest.raises(ValueError):
            amplitude_dirichlet(free, 0, 1.0, k=3)

    def test_out_of_domain_site_named(self):
        box = WalkSpec(boundary=Dirichlet(L=0, R=4), x0=2)
        with pytest.raises(ValueError, match="-3"):
            amplitude_dirichlet(box, -3, 1.0, k=3)


class TestEvaluateGrid:
    def test_shape_and_metadata(self):
        spec = WalkSpec(boundary=Dirichlet(L=0, R=10), x0=4)
        sites = np.arange(0, 11)
        times = np.array([0.0, 1.0, 2.0])
        grid = evaluate_grid(spec, sites, times, epsilon=1e-5)
        assert grid.data.shape == (11, 3)
        assert grid.method == "series"
        assert grid.truncation_order == truncation_k(2.0, 1e-5, 10).k
        assert grid.spec is spec

    def test_unbounded_grid_has_no_order(self):
        spec = WalkSpec(boundary=Unbounded(), x0=0)
        grid = evaluate_grid(spec, np.arange(-5, 6), np.array([1.0]))
        assert grid.truncation_order is None

    def test_t_zero_column_is_delta(self):
        spec = WalkSpec(boundary=Dirichlet(L=0, R=10), x0=4)
        sites = np.arange(0, 11)
        grid = evaluate_grid(spec, sites, np.array([0.0, 1.5]))
        column = grid.data[:, 0]
        expected = np.where(sites == 4, 1.0 + 0j, 0j)
        assert np.array_equal(column, expected)

    def test_grid_matches_scalar_calls(self):
        spec = WalkSpec(boundary=Periodic(L=0, R=7), x0=2, q=0.3)
        sites = np.arange(0, 7)
        times = np.array([0.5, 2.0])
        grid = evaluate_grid(spec, sites, times, epsilon=1e-8)
        k = grid.truncation_order
        for i, x in enumerate(sites):
            for j, t in enumerate(times):
                scalar = amplitude_periodic(spec, int(x), float(t), k=k)
                assert grid.data[i, j] == pytest.approx(scalar, abs=1e-14)

    def test_bad_grids_rejected(self):
        spec = WalkSpec(boundary=Unbounded(), x0=0)
        with pytest.raises(ValueError):
            evaluate_grid(spec, np.array([]), np.array([1.0]))
        with pytest.raises(ValueError):
            evaluate_grid(spec, np.array([0]), np.array([-1.0]))
        with pytest.raises(ValueError):
            evaluate_grid(spec, np.array([0]), np.array([math.nan]))
        box = WalkSpec(boundary=Dirichlet(L=0, R=4), x0=2)
        with pytest.raises(ValueError, match="7"):
            evaluate_grid(box, np.array([2, 7]), np.array([1.0]))


def test_wall_term_is_first_neglected_image():
    # interior image pairs cancel exactly at the wall, leaving only the
    # unpaired edge term, so the wall amplitude equals one far Bessel value
    spec = WalkSpec(boundary=Dirichlet(L=0, R=6), x0=2)
    t, k = 3.0, 7
    wall = amplitude_dirichlet(spec, 0, t, k=k)
    assert abs(wall) <= apriori_error_bound(k, t, 6)

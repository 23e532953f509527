"""
Walls, mirrors and rings
========================

Boundaries enter through the method of images: a reflecting wall adds a
negated mirror source, a box an alternating family of mirrors, a ring a
translated family.  This script shows the image points, the exact zeros
on the walls, and the wrap-around identity on the ring.

Run with --plot to draw the box profile (needs matplotlib).
"""

import sys

import numpy as np

from qwalk import (
    Dirichlet,
    LeftWall,
    Periodic,
    WalkSpec,
    evaluate_grid,
    mirror_points,
    periodic_points,
)

# the first few image points of a box [0, 30] seeded at x0 = 13
print("mirror family of the box [0, 30], x0 = 13:")
print("  ", [mirror_points(0, 30, 13, n) for n in range(-3, 4)])
print("translated family of the matching ring:")
print("  ", [periodic_points(0, 30, 13, n) for n in range(-3, 4)])

# a walker beside a single reflecting wall
half = WalkSpec(boundary=LeftWall(L=0), x0=5)
t = np.array([8.0])
sites = np.arange(0, 40)
grid = evaluate_grid(half, sites, t)
print(f"\nhalf line at t=8: psi(0) = {grid.data[0, 0]}")
print(f"  interference near the wall, |psi(1)|^2 = "
      f"{abs(grid.data[1, 0]) ** 2:.6f}")

# the box pins both walls to zero; the plan picks the image count
box = WalkSpec(boundary=Dirichlet(L=0, R=30), x0=13)
box_sites = np.arange(0, 31)
box_grid = evaluate_grid(box, box_sites, np.array([25.0]), epsilon=1e-8)
k = box_grid.truncation_order
print(f"\nbox at t=25 truncated at k = {k} ({2 * k + 1} mirror images)")
print(f"  wall amplitudes: |psi(0)| = {abs(box_grid.data[0, 0]):.2e}, "
      f"|psi(30)| = {abs(box_grid.data[-1, 0]):.2e}")
print(f"  interior norm: "
      f"{np.sum(np.abs(box_grid.data[:, 0]) ** 2):.12f}")

# on the ring, site R is site L by definition
ring = WalkSpec(boundary=Periodic(L=0, R=30), x0=13)
ring_grid = evaluate_grid(ring, np.arange(0, 30), np.array([25.0]))
print(f"\nring at t=25: psi(0) = {ring_grid.data[0, 0]:.6f}")
print(f"  ring norm: {np.sum(np.abs(ring_grid.data[:, 0]) ** 2):.12f}")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    plt.plot(box_sites, np.abs(box_grid.data[:, 0]) ** 2, "o-", ms=3,
             label="box [0, 30]")
    plt.plot(np.arange(0, 30), np.abs(ring_grid.data[:, 0]) ** 2, "s--",
             ms=3, label="ring of 30")
    plt.xlabel("site x")
    plt.ylabel("|psi(x, t=25)|^2")
    plt.legend()
    plt.tight_layout()
    plt.show()

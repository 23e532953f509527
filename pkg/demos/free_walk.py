"""
A free walker and its light cone
================================

The walk on the unbounded line has a one-line answer: the amplitude at
distance n after time t is i^n J_n(2t) up to a global phase.  This
script evaluates it, checks that probability is conserved, and shows
the ballistic front at |x - x0| = 2t.

Run with --plot to draw the profile (needs matplotlib).
"""

import sys

import numpy as np

from qwalk import Unbounded, WalkSpec, evaluate_grid

# the walker starts at the origin of an infinite line
spec = WalkSpec(boundary=Unbounded(), x0=0)

# evaluate out to twice the light-cone radius for t = 12
t = 12.0
reach = int(2 * t)
sites = np.arange(-2 * reach, 2 * reach + 1)
grid = evaluate_grid(spec, sites, np.array([t]))
prob = np.abs(grid.data[:, 0]) ** 2

print(f"stay-put amplitude psi(0, {t}) = {grid.data[sites == 0, 0][0]:.6f}")
print(f"total probability over the window: {prob.sum():.15f}")

# the front: almost everything lives inside |x| <= 2t, and the edge
# carries the characteristic Airy-like peak
inside = prob[np.abs(sites) <= reach].sum()
print(f"probability inside the light cone |x| <= {reach}: {inside:.6f}")
peak = sites[np.argmax(prob)]
print(f"most likely site: x = {peak} (front at |x| = {reach})")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    plt.plot(sites, prob, lw=1)
    plt.axvline(-reach, color="gray", ls=":")
    plt.axvline(reach, color="gray", ls=":")
    plt.xlabel("site x")
    plt.ylabel(f"|psi(x, t={t})|^2")
    plt.title("free walk: ballistic spreading")
    plt.tight_layout()
    plt.show()

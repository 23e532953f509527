"""Shared helpers for the test suite.

The series oracle here is deliberately independent of the package: it
evaluates the ascending power series for J_n in exact rational
arithmetic, so it has no truncation or rounding error other than the
final conversion to float.  It is the reference that the recurrence
kernel and the quadrature oracle are measured against.
"""

from __future__ import annotations

import math
from fractions import Fraction


def bessel_series_value(n: int, x, terms: int = 80) -> float:
    """J_n(x) via the alternating ascending series, in exact rationals.

    ``x`` must be exactly representable (int, Fraction, or a float such
    as 0.5 that is a dyadic rational).  ``terms`` has to be large enough
    that the last term underflows the target precision; 80 covers
    x <= 60, use more for larger arguments.
    """
    half = Fraction(x) / 2
    total = Fraction(0)
    for m in range(terms):
        term = half ** (2 * m + n) / (math.factorial(m) * math.factorial(m + n))
        total = total + term if m % 2 == 0 else total - term
    return float(total)


# Frozen oracle outputs used across the suite.  Each value was produced
# by bessel_series_value above (and the suite re-derives them, so a
# broken oracle cannot hide).
J0_AT_2 = 0.22389077914123567
J1_AT_2 = 0.5767248077568734
J3_AT_2 = 0.12894324947440206

"""Truncation-order selection for the image-sum series.

On a box or ring of width N, images beyond the first k on either side
contribute at most

    e_k = 2 t^{2N} * sum_{n>=k} t^{nN} / (nN)!

to any single amplitude at horizon t.  Stirling's lower bound for the
factorial plus a geometric comparison collapse that tail into a closed
form, and inverting the closed form gives a near-optimal k for a target
accuracy epsilon.  The inversion is exact enough that the planned k is
conservative by orders of magnitude in practice.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

__all__ = [
    "TruncationPlan",
    "apriori_error_bound",
    "constant_c",
    "factorial_tail_bound",
    "t_threshold",
    "truncation_k",
    "zeta",
]


@dataclass(frozen=True)
class TruncationPlan:
    """Everything the series driver needs to know about a chosen k.

    ``fallback_used`` marks horizons at or below the validity threshold
    of the closed-form inversion, where a conservative k is substituted;
    ``zeta`` records the growth exponent the formula actually used.
    """

    k: int
    zeta: float
    t_threshold: float
    epsilon: float
    N: int
    apriori_bound: float
    fallback_used: bool


def constant_c() -> float:
    """Calibration constant of the truncation ansatz, 22/(e*sqrt(2*pi))."""
    return 22.0 / (math.e * math.sqrt(2.0 * math.pi))


def _check_width(N: int) -> None:
    # N = 1 is the one-site ring, the narrowest lattice with a plan
    if not (isinstance(N, int) and N >= 1):
        raise ValueError(f"N must be a positive integer, got {N}")


def _check_horizon(t: float) -> None:
    if not (math.isfinite(t) and t > 0.0):
        raise ValueError(f"t must be positive and finite, got {t}")


def _check_epsilon(epsilon: float) -> None:
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")


def zeta(t: float, epsilon: float, N: int) -> float:
    """Growth exponent 2 ln t + ln(c / (epsilon sqrt(t))) / N."""
    _check_width(N)
    _check_horizon(t)
    _check_epsilon(epsilon)
    return 2.0 * math.log(t) + math.log(constant_c() / (epsilon * math.sqrt(t))) / N


def t_threshold(epsilon: float, N: int) -> float:
    """Smallest horizon the closed-form inversion is valid for.

    Below this the exponent zeta dips under e and the ansatz
    k ~ zeta / ln zeta loses its meaning; at the threshold zeta equals
    e exactly.
    """
    _check_width(N)
    _check_epsilon(epsilon)
    base = math.exp(math.e) * (epsilon / constant_c()) ** (1.0 / N)
    return max(1.0, base ** (2.0 * N / (4.0 * N - 1.0)))


def truncation_k(t: float, epsilon: float, N: int) -> TruncationPlan:
    """Pick the image-sum truncation order for accuracy epsilon.

    From the validity threshold upward (where zeta >= e) the order is
    the closed-form ansatz k = ceil((t+N)/N * zeta/ln zeta).  Below the
    threshold a conservative fallback k = max(ceil(t*e/N) + 1, ansatz
    at the threshold) is used instead.  Either way k > t*e/N holds, so
    the tail the a-priori bound controls is convergent.
    """
    _check_width(N)
    _check_horizon(t)
    _check_epsilon(epsilon)
    threshold = t_threshold(epsilon, N)

    def ansatz(at: float) -> tuple[int, float]:
        z = zeta(at, epsilon, N)
        return math.ceil((at + N) / N * z / math.log(z)), z

    if t >= threshold:
        k, z = ansatz(t)
        fallback = False
    else:
        k_edge, z = ansatz(threshold)
        k = max(math.ceil(t * math.e / N) + 1, k_edge)
        fallback = True
    return TruncationPlan(
        k=k,
        zeta=z,
        t_threshold=threshold,
        epsilon=epsilon,
        N=N,
        apriori_bound=apriori_error_bound(k, t, N),
        fallback_used=fallback,
    )


def apriori_error_bound(k: int, t: float, N: int) -> float:
    """Closed-form bound on the image-sum tail beyond k terms.

    Stirling's lower bound (nN)! >= sqrt(2 pi nN) (nN/e)^{nN} and a
    geometric comparison of the remaining terms give

        e_k <= 2 t^{2N} / sqrt(2 pi N k)
               * exp(-Nk ln(kN / (t e))) / (1 - (t e / (kN))^N).

    Only defined for k > t*e/N, where the geometric ratio is below one.
    Evaluated in log space; a bound too large to represent comes back
    as inf, and one too small comes back as the smallest positive
    normal float (still an upper bound, just a slack one).
    """
    _check_width(N)
    _check_horizon(t)
    if not (isinstance(k, int) and k >= 1):
        raise ValueError(f"k must be a positive integer, got {k}")
    ratio_log = math.log(t * math.e / (k * N))
    if ratio_log >= 0.0:
        raise ValueError(
            f"bound inapplicable: k={k} must exceed t*e/N={t * math.e / N:.6g}")
    log_value = (
        math.log(2.0)
        + 2.0 * N * math.log(t)
        + N * k * ratio_log
        - 0.5 * math.log(2.0 * math.pi * N * k)
    )
    geometric = 1.0 - math.exp(N * ratio_log)
    try:
        value = math.exp(log_value) / geometric
    except OverflowError:
        return math.inf
    return max(value, sys.float_info.min)


def factorial_tail_bound(k: int, t: float, N: int, terms: int = 40) -> float:
    """Sharper tail bound: explicit leading terms plus a closed remainder.

    Sums ``terms`` leading terms of 2 t^{2N} sum_{n>=k} t^{nN}/(nN)!
    exactly (in log space) and caps the rest with the closed-form bound
    restarted at k + terms.  Never exceeds apriori_error_bound(k, t, N).
    """
    if not (isinstance(terms, int) and terms >= 1):
        raise ValueError(f"terms must be a positive integer, got {terms}")
    _check_width(N)
    _check_horizon(t)
    if not (isinstance(k, int) and k >= 1):
        raise ValueError(f"k must be a positive integer, got {k}")
    if math.log(t * math.e / (k * N)) >= 0.0:
        raise ValueError(
            f"bound inapplicable: k={k} must exceed t*e/N={t * math.e / N:.6g}")
    log_front = math.log(2.0) + 2.0 * N * math.log(t)
    partial = 0.0
    for n in range(k, k + terms):
        log_term = log_front + n * N * math.log(t) - math.lgamma(n * N + 1)
        if log_term > 709.0:
            return math.inf
        partial += math.exp(log_term)
    return partial + apriori_error_bound(k + terms, t, N)

"""The bomb trigger as a quantum momentum meter.

The bomb is prepared in a minimum-uncertainty Gaussian packet of position
spread ``delta_x``, so its momentum has standard deviation
``sigma_p = 1/(2 delta_x)`` (hbar = 1). After the probe, the trigger measures
the bomb's momentum along the probe axis and fires above ``p_th``. Deciding
whether a kick ``q`` happened is then a test between ``N(0, sigma_p^2)`` and
``N(q, sigma_p^2)``; its best achievable equal-prior error is
``Phi(-q / (2 sigma_p))``, which depends on ``q`` only through ``q * delta_x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import erfc, ndtr, ndtri


@dataclass(frozen=True)
class BombTrigger:
    delta_x: float
    p_th: float = math.inf

    def __post_init__(self):
        if not (self.delta_x > 0 and math.isfinite(self.delta_x)):
            raise ValueError(f"delta_x must be positive and finite, got {self.delta_x}")
        if not self.p_th >= 0:
            raise ValueError(f"threshold p_th must be >= 0, got {self.p_th}")

    @property
    def sigma_p(self) -> float:
        """Gaussian momentum standard deviation, 1/(2 delta_x)."""
        return 0.5 / self.delta_x

    @property
    def p_coarse(self) -> float:
        """Order-of-magnitude momentum spread 1/delta_x (= 2 sigma_p)."""
        return 1.0 / self.delta_x


@dataclass(frozen=True)
class DiscriminationReport:
    q: float
    false_trigger: float
    miss: float
    min_error: float
    optimal_threshold: float


def false_trigger_probability(t: BombTrigger) -> float:
    """P(|p| > p_th) for the unkicked packet (two-sided; no preferred direction)."""
    return float(erfc(t.p_th / (math.sqrt(2.0) * t.sigma_p)))


def min_error(t: BombTrigger, q: float) -> float:
    if q < 0:
        raise ValueError(f"kick q must be >= 0, got {q}")
    return float(ndtr(-q / (2.0 * t.sigma_p)))


def kick_discrimination(t: BombTrigger, q: float) -> DiscriminationReport:
    """One-sided threshold test of "kicked by q" against "not kicked".

    ``false_trigger`` and ``miss`` are evaluated at the trigger's own ``p_th``
    (fire when ``p > p_th``); ``min_error`` is the equal-prior error at the
    best threshold ``q/2``.
    """
    q = float(q)
    if not q >= 0:
        raise ValueError(f"kick q must be >= 0, got {q}")
    s = t.sigma_p
    return DiscriminationReport(
        q=q,
        false_trigger=float(ndtr(-t.p_th / s)),
        miss=float(ndtr((t.p_th - q) / s)),
        min_error=min_error(t, q),
        optimal_threshold=q / 2.0,
    )


def _check_budget(error_budget: float) -> float:
    error_budget = float(error_budget)
    if not 0.0 < error_budget < 0.5:
        raise ValueError(f"error budget must lie in (0, 0.5), got {error_budget}")
    return error_budget


def minimum_detectable_kick(t: BombTrigger, error_budget: float, rtol: float = 1e-12) -> float:
    """Smallest kick the trigger can detect with equal-prior error <= budget.

    Solved by bisection in the dimensionless kick ``z = q / (2 sigma_p)``;
    :func:`minimum_detectable_kick_closed_form` gives the same value.
    """
    error_budget = _check_budget(error_budget)
    lo, hi = 0.0, 1.0
    while ndtr(-hi) > error_budget:
        lo, hi = hi, 2.0 * hi
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if ndtr(-mid) > error_budget:
            lo = mid
        else:
            hi = mid
    return 2.0 * t.sigma_p * hi


def minimum_detectable_kick_closed_form(t: BombTrigger, error_budget: float) -> float:
    error_budget = _check_budget(error_budget)
    return float(2.0 * t.sigma_p * ndtri(1.0 - error_budget))

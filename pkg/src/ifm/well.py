"""Bomb held in the ground state of a harmonic well and kicked by a probe.

A sudden momentum kick ``q`` displaces the ground state in momentum, which
is a coherent state; its level populations are Poisson with mean
``lam = q^2 / (2 M omega)`` (hbar = 1). Watching whether the bomb leaves the
ground state is a trigger whose resolution is set by the well's own
momentum spread ``delta_p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import poisson


@dataclass(frozen=True)
class WellBomb:
    M: float
    omega: float

    def __post_init__(self):
        for name in ("M", "omega"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")

    @property
    def delta_x(self) -> float:
        return math.sqrt(1.0 / (2.0 * self.M * self.omega))

    @property
    def delta_p(self) -> float:
        return math.sqrt(self.M * self.omega / 2.0)

    @property
    def level_spacing(self) -> float:
        return self.omega

    @property
    def recoil_energy_scale(self) -> float:
        """delta_p^2 / (2M); equals omega / 4, a quarter of the level spacing."""
        return self.delta_p**2 / (2.0 * self.M)

    def poisson_mean(self, q: float) -> float:
        return q * q / (2.0 * self.M * self.omega)


@dataclass(frozen=True, eq=False)
class KickSpectrum:
    probabilities: np.ndarray
    q: float
    lam: float

    @property
    def n_max(self) -> int:
        return len(self.probabilities) - 1

    @property
    def levels(self) -> np.ndarray:
        return np.arange(len(self.probabilities))

    def p_excite(self) -> float:
        return 1.0 - float(self.probabilities[0])

    def mean_quanta(self) -> float:
        return float(np.dot(self.levels, self.probabilities))


def default_n_max(lam: float) -> int:
    """Truncation keeping the lost Poisson tail below 1e-12."""
    return int(math.ceil(lam + 12.0 * math.sqrt(lam) + 20.0))


def _check_kick(q: float) -> float:
    q = float(q)
    if not (q >= 0 and math.isfinite(q)):
        raise ValueError(f"kick q must be finite and >= 0, got {q}")
    return q


def excitation_spectrum(w: WellBomb, q: float, n_max: int | None = None) -> KickSpectrum:
    q = _check_kick(q)
    lam = w.poisson_mean(q)
    if n_max is None:
        n_max = default_n_max(lam)
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    n = np.arange(n_max + 1)
    if lam == 0.0:
        p = (n == 0).astype(float)
    else:
        p = poisson.pmf(n, lam)
    p.flags.writeable = False
    return KickSpectrum(p, q, lam)


def stay_probability(w: WellBomb, q: float) -> float:
    """Probability the kicked bomb is still in the ground state."""
    return math.exp(-w.poisson_mean(_check_kick(q)))


def well_trigger_bound(w: WellBomb) -> float:
    """Kick that excites the bomb with probability 1/2: sqrt(2 M omega ln 2).

    Its ratio to ``delta_p`` is ``sqrt(4 ln 2) ~ 1.665`` for every well.
    """
    return math.sqrt(2.0 * w.M * w.omega * math.log(2.0))

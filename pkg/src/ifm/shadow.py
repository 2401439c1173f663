"""Shadow scattering of a scalar plane wave off a black strip.

A unit plane wave crosses a periodic transverse window of width ``W`` sampled
at ``n_points`` cells. A centred strip of width ``a`` absorbs whatever hits
it. The transmitted field is expanded in the window's transverse plane-wave
modes ``k_j = 2 pi j / W``; the zero mode is the unscattered beam and every
other mode is a photon deflected by transverse momentum ``k_j`` (hbar = 1),
which the bomb absorbs as recoil.

The strip blackens the whole cells that fit inside it, so the width
actually simulated is ``a_eff = strip_cells * W / n_points <= a``; all closed
forms use ``a_eff``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .trigger import BombTrigger

MIN_POINTS = 2**10
# mode spacing 2 pi / W must be small compared with 1/a
MIN_WINDOW_RATIO = 64


class GridError(ValueError):
    """ApertureGrid parameters violate a sampling invariant."""


@dataclass(frozen=True)
class ApertureGrid:
    W: float
    n_points: int
    a: float
    k_in: float = 1e3

    def __post_init__(self):
        n = int(self.n_points)
        if n < MIN_POINTS or n & (n - 1):
            raise GridError(f"n_points must be a power of two >= {MIN_POINTS}, got {n}")
        if not (self.W > 0 and math.isfinite(self.W)):
            raise GridError(f"window width W must be positive, got {self.W}")
        if not (self.k_in > 0 and math.isfinite(self.k_in)):
            raise GridError(f"k_in must be positive, got {self.k_in}")
        if self.a != 0:
            if not 0 < self.a < self.W / 4:
                raise GridError(f"strip width must satisfy 0 < a < W/4, got a={self.a}, W={self.W}")
            if not self.W / n < self.a / 16:
                raise GridError(
                    f"grid spacing W/n_points={self.W / n:g} must be < a/16={self.a / 16:g}"
                )
        object.__setattr__(self, "n_points", n)

    @property
    def dx(self) -> float:
        return self.W / self.n_points

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.n_points) - self.n_points // 2) * self.dx

    @property
    def strip_cells(self) -> int:
        return int(math.floor(self.a / self.dx + 1e-9))

    @property
    def a_eff(self) -> float:
        return self.strip_cells * self.dx

    @property
    def k(self) -> np.ndarray:
        """Transverse wavevector of each mode, in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)

    def mask(self) -> np.ndarray:
        m = np.ones(self.n_points)
        start = self.n_points // 2 - self.strip_cells // 2
        m[start : start + self.strip_cells] = 0.0
        return m


def check_far_field_resolution(grid: ApertureGrid) -> None:
    """Raise unless W >= 64 a, so the forward lobe spans many modes."""
    if grid.a > 0 and grid.W < MIN_WINDOW_RATIO * grid.a:
        raise GridError(
            f"far-field analysis needs W >= {MIN_WINDOW_RATIO} a, got W={grid.W}, a={grid.a}"
        )


@dataclass(frozen=True, eq=False)
class AngularSpectrum:
    """Per-mode probabilities of the transmitted photon.

    ``weights[j]`` is the probability of leaving in mode ``k[j]``; the zero mode
    is ``p_forward`` and the rest sum to ``p_scattered``.
    """

    k: np.ndarray
    weights: np.ndarray
    p_absorbed: float
    p_forward: float
    p_scattered: float
    a: float
    k_in: float

    @property
    def angles(self) -> np.ndarray:
        """Small-angle deflection k / k_in of each mode (radians)."""
        return self.k / self.k_in

    def total(self) -> float:
        return self.p_absorbed + self.p_forward + self.p_scattered


@dataclass(frozen=True)
class ScatterOutcome:
    p_inconclusive: float
    p_detect_safe: float
    p_boom: float

    def total(self) -> float:
        return self.p_inconclusive + self.p_detect_safe + self.p_boom


def transmitted_field(grid: ApertureGrid) -> np.ndarray:
    """Unit plane wave behind the strip: 0 on strip cells, 1 elsewhere.

    With the incident photon normalised over the window, the surviving
    probability is ``mean(|field|^2) = (W - a_eff) / W``.
    """
    return grid.mask().astype(complex)


def angular_spectrum(grid: ApertureGrid) -> AngularSpectrum:
    field = transmitted_field(grid)
    n = grid.n_points
    coeffs = np.fft.fft(field) / n
    weights = np.abs(coeffs) ** 2
    weights.flags.writeable = False
    k = grid.k
    k.flags.writeable = False
    p_absorbed = 1.0 - float(np.sum(np.abs(field) ** 2)) / n
    p_forward = float(weights[0])
    p_scattered = float(np.sum(weights[1:]))
    return AngularSpectrum(k, weights, p_absorbed, p_forward, p_scattered, grid.a_eff, grid.k_in)


def closed_form_fractions(grid: ApertureGrid) -> tuple[float, float, float]:
    """(absorbed, forward, scattered) for a black strip of width ``a_eff``."""
    f = grid.a_eff / grid.W
    return f, (1.0 - f) ** 2, f * (1.0 - f)


def _abs_k_histogram(spec: AngularSpectrum):
    """Scattered weight folded onto |k| > 0, in increasing |k| order."""
    absk = np.abs(spec.k)
    scattered = absk > 0
    levels, inverse = np.unique(absk[scattered], return_inverse=True)
    w = np.bincount(inverse, weights=spec.weights[scattered])
    return levels, w


def _weighted_median(levels: np.ndarray, w: np.ndarray) -> float:
    """Median of a histogram whose bins are centred on uniformly spaced levels.

    Each level's weight is spread evenly over a bin one mode spacing wide,
    which removes the staircase error of picking a single mode.
    """
    dk = levels[0]
    cum = np.concatenate([[0.0], np.cumsum(w)])
    half = 0.5 * cum[-1]
    j = int(np.searchsorted(cum, half, side="left")) - 1
    j = max(j, 0)
    frac = (half - cum[j]) / w[j] if w[j] > 0 else 0.5
    return float(levels[j] - 0.5 * dk + frac * dk)


def momentum_transfer_stats(spec: AngularSpectrum, a: float | None = None) -> dict:
    """Median and mean recoil |k| over scattered modes, raw and times ``a``.

    ``a`` defaults to the simulated strip width. The mean is dominated by the
    1/k^2 tail and grows with grid resolution; the median does not.
    """
    if not spec.p_scattered > 0:
        raise ValueError("no scattered probability; momentum transfer undefined")
    if a is None:
        a = spec.a
    levels, w = _abs_k_histogram(spec)
    median = _weighted_median(levels, w)
    mean = float(np.sum(levels * w) / np.sum(w))
    return {
        "median_k": median,
        "mean_k": mean,
        "median_k_a": median * a,
        "mean_k_a": mean * a,
    }


def classify_outcomes(spec: AngularSpectrum, trigger: BombTrigger) -> ScatterOutcome:
    """Split the photon's fate by the recoil it gives the bomb.

    Forward: nothing learned. Scattered with recoil ``|k| <= p_th``: bomb seen,
    not triggered. Absorbed, or scattered harder than ``p_th``: explosion.
    """
    absk = np.abs(spec.k)
    safe = (absk > 0) & (absk <= trigger.p_th)
    p_safe = float(np.sum(spec.weights[safe]))
    p_hard = float(np.sum(spec.weights[(absk > 0) & ~safe]))
    return ScatterOutcome(
        p_inconclusive=spec.p_forward,
        p_detect_safe=p_safe,
        p_boom=spec.p_absorbed + p_hard,
    )

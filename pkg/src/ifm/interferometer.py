"""Mach-Zehnder bomb test: outcome statistics, trials and strategies.

Layout (both splitters of reflectivity ``R``)::

    photon in "lower" --BS--+-- lower arm -----------------+--BS--> lower: detector B
                            +-- upper arm [bomb] [phase] --+------> upper: detector D

The bomb sits in the arm the first splitter *reflects* into, so a blocking
bomb absorbs with probability ``R``. A phase of pi on the upper arm makes the
"upper" output exactly dark for every ``R`` when the beam line is clear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import streams
from .modes import AbsorberSpec, BeamSplitterSpec, ModeState, propagate
from .search import golden_section_max

LOWER, UPPER = "lower", "upper"
OUTCOMES = ("bright", "dark", "absorbed")
R_EPS = 1e-6

_ZERO_PROBABILITY = 1e-14


@dataclass(frozen=True)
class MzConfig:
    R: float = 0.5
    bomb_present: bool = True
    calibration_phase: float = math.pi

    def __post_init__(self):
        R = float(self.R)
        if not (0.0 < R < 1.0) or not math.isfinite(R):
            raise ValueError(f"reflectivity must satisfy R in (0,1), got R={R}")
        if not math.isfinite(self.calibration_phase):
            raise ValueError("calibration_phase must be finite")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "bomb_present", bool(self.bomb_present))

    def elements(self) -> list:
        bs = BeamSplitterSpec(self.R, (LOWER, UPPER))
        els = [bs]
        if self.bomb_present:
            els.append(AbsorberSpec(UPPER))
        els += [(UPPER, self.calibration_phase), bs]
        return els


@dataclass(frozen=True)
class OutcomeDistribution:
    p_bright: float
    p_dark: float
    p_absorbed: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p_bright, self.p_dark, self.p_absorbed])

    def total(self) -> float:
        return self.p_bright + self.p_dark + self.p_absorbed


@dataclass(frozen=True)
class TrialTally:
    counts: dict
    n_trials: int
    seed: int

    def frequencies(self) -> dict:
        return {k: v / self.n_trials for k, v in self.counts.items()}

    def as_array(self) -> np.ndarray:
        return np.array([self.counts[k] for k in OUTCOMES])


@dataclass(frozen=True)
class StrategyReport:
    """Repeat-on-Bright strategy: keep sending photons until D clicks, the
    bomb explodes, or ``max_photons`` have been spent (``None`` = no cap)."""

    p_detect: float
    p_explode: float
    p_give_up: float
    expected_photons_sent: float
    max_photons: int | None = field(default=None)


def propagate_photon(cfg: MzConfig) -> ModeState:
    return propagate(ModeState.single((LOWER, UPPER), LOWER), cfg.elements())


def outcome_distribution(cfg: MzConfig) -> OutcomeDistribution:
    """Single-photon outcome probabilities, from the element composition."""
    out = propagate_photon(cfg)
    return OutcomeDistribution(
        p_bright=out.probability(LOWER),
        p_dark=out.probability(UPPER),
        p_absorbed=out.p_absorbed,
    )


def closed_form_distribution(R: float, bomb_present: bool = True) -> OutcomeDistribution:
    if not bomb_present:
        return OutcomeDistribution(1.0, 0.0, 0.0)
    return OutcomeDistribution((1.0 - R) ** 2, R * (1.0 - R), R)


def _sampling_cdf(dist: OutcomeDistribution) -> np.ndarray:
    p = dist.as_array()
    p[p < _ZERO_PROBABILITY] = 0.0
    cdf = np.cumsum(p) / p.sum()
    # zero-probability tail categories must never be reachable
    last = np.flatnonzero(p)[-1]
    cdf[last:] = 1.0
    return cdf


def run_trials(cfg: MzConfig, n: int, seed: int = 0, workers: int = 1) -> TrialTally:
    """Send ``n`` independent single photons.

    Trial ``i`` uses position ``i`` of random stream ``(seed, 0)``; the tally
    does not depend on ``workers``.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"number of trials must be >= 1, got {n}")
    seed = streams.check_seed(seed)
    cdf = _sampling_cdf(outcome_distribution(cfg))

    def tally(start, stop):
        u = streams.uniforms(seed, 0, start, stop)
        idx = np.searchsorted(cdf, u, side="right")
        return np.bincount(idx, minlength=3)

    counts = sum(streams.parallel_map_chunks(tally, n, workers))
    return TrialTally(dict(zip(OUTCOMES, (int(c) for c in counts))), n, seed)


def _per_shot(R: float) -> tuple[float, float, float]:
    """(detect, explode, continue) probabilities of one photon, bomb present."""
    return R * (1.0 - R), R, (1.0 - R) ** 2


def sequential_strategy(cfg: MzConfig, max_photons: int | None = None) -> StrategyReport:
    """Closed-form geometric-series evaluation of the repeat-on-Bright strategy."""
    if not cfg.bomb_present:
        raise ValueError("sequential strategy is defined for bomb_present = true")
    if max_photons is not None:
        max_photons = int(max_photons)
        if max_photons < 1:
            raise ValueError(f"max_photons must be >= 1, got {max_photons}")
    detect, explode, cont = _per_shot(cfg.R)
    stop = cfg.R * (2.0 - cfg.R)  # 1 - cont without cancellation
    if max_photons is None:
        give_up = 0.0
    else:
        give_up = cont**max_photons
    # sum_{k<M} cont^k
    sent = (1.0 - give_up) / stop
    return StrategyReport(
        p_detect=detect * sent,
        p_explode=explode * sent,
        p_give_up=give_up,
        expected_photons_sent=sent,
        max_photons=max_photons,
    )


def simulate_strategy(
    cfg: MzConfig,
    max_photons: int | None,
    n_runs: int,
    seed: int = 0,
    workers: int = 1,
) -> dict:
    """Monte Carlo of the repeat-on-Bright strategy.

    Photon ``k`` of run ``i`` uses position ``i`` of stream ``(seed, k + 1)``.
    Returns counts of ``detect``, ``explode``, ``give_up`` and the total number
    of photons sent.
    """
    if not cfg.bomb_present:
        raise ValueError("sequential strategy is defined for bomb_present = true")
    n_runs = int(n_runs)
    if n_runs < 1:
        raise ValueError(f"n_runs must be >= 1, got {n_runs}")
    seed = streams.check_seed(seed)
    detect_p, explode_p, _ = _per_shot(cfg.R)

    def run_chunk(start, stop):
        alive = np.arange(stop - start)
        out = np.zeros(4, dtype=np.int64)  # detect, explode, give_up, photons
        k = 0
        while alive.size and (max_photons is None or k < max_photons):
            u = streams.uniforms(seed, k + 1, start, stop)[alive]
            out[3] += alive.size
            detected = u < detect_p
            exploded = (u >= detect_p) & (u < detect_p + explode_p)
            out[0] += int(detected.sum())
            out[1] += int(exploded.sum())
            alive = alive[~(detected | exploded)]
            k += 1
        out[2] += alive.size
        return out

    tot = sum(streams.parallel_map_chunks(run_chunk, n_runs, workers))
    return {
        "detect": int(tot[0]),
        "explode": int(tot[1]),
        "give_up": int(tot[2]),
        "photons": int(tot[3]),
        "n_runs": n_runs,
    }


def efficiency(R: float) -> float:
    """Fraction of conclusive bomb-present shots that end at the dark port."""
    R = float(R)
    if not 0.0 < R < 1.0:
        raise ValueError(f"efficiency needs R in (0,1), got R={R}")
    return (1.0 - R) / (2.0 - R)


def expected_photons(R: float, max_photons: int | None = None) -> float:
    return sequential_strategy(MzConfig(R), max_photons).expected_photons_sent


def reflectivity_objective(R: float, weight: float) -> float:
    """Efficiency minus ``weight`` times the expected photon count (uncapped)."""
    return efficiency(R) - weight / (R * (2.0 - R))


def optimize_reflectivity(weight: float, tol: float = 1e-8) -> tuple[float, float]:
    """Maximise :func:`reflectivity_objective` over ``R`` in ``[eps, 1-eps]``.

    The objective is concave in ``R`` (a concave efficiency minus a convex
    photon cost), so golden-section search finds the global maximum.
    """
    weight = float(weight)
    if not math.isfinite(weight):
        raise ValueError(f"weight must be finite, got {weight}")
    if weight < 0:
        raise ValueError(f"weight must be >= 0, got {weight}")
    return golden_section_max(
        lambda R: reflectivity_objective(R, weight), R_EPS, 1.0 - R_EPS, tol
    )

"""Single-photon mode amplitudes and the optical elements acting on them.

A photon is a complex amplitude vector over a small set of labelled spatial
modes. Absorptive elements remove amplitude and book the lost probability in
``p_absorbed`` so that the total probability stays exactly one.

Beam splitters use the symmetric convention: transmission amplitude
``t = sqrt(1 - R)`` is real and reflection amplitude is ``i * sqrt(R)``.

Natural units (hbar = 1) are used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np


class ConfigurationError(ValueError):
    """An element refers to a mode the state does not have, or is malformed."""


@dataclass(frozen=True, eq=False)
class ModeState:
    """Immutable single-photon state.

    Attributes
    ----------
    labels : tuple
        Mode labels, in amplitude order.
    amplitudes : ndarray of complex
        Read-only amplitude vector, one entry per label.
    p_absorbed : float
        Probability removed by absorbers so far.
    """

    labels: tuple
    amplitudes: np.ndarray
    p_absorbed: float = 0.0

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ConfigurationError(f"duplicate mode labels in {labels!r}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != len(labels):
            raise ConfigurationError(
                f"{amps.shape[0]} amplitudes given for {len(labels)} modes"
            )
        amps.flags.writeable = False
        p_abs = float(self.p_absorbed)
        if not 0.0 <= p_abs <= 1.0 + 1e-12:
            raise ConfigurationError(f"p_absorbed={p_abs} outside [0, 1]")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "p_absorbed", p_abs)

    @classmethod
    def single(cls, labels: Sequence[Hashable], occupied: Hashable) -> "ModeState":
        """Photon entirely in mode ``occupied``."""
        labels = tuple(labels)
        amps = np.zeros(len(labels), dtype=complex)
        amps[_index(labels, occupied)] = 1.0
        return cls(labels, amps)

    def index(self, label) -> int:
        return _index(self.labels, label)

    def amplitude(self, label) -> complex:
        return complex(self.amplitudes[self.index(label)])

    def probability(self, label) -> float:
        return float(abs(self.amplitudes[self.index(label)]) ** 2)

    def mode_norm(self) -> float:
        """Probability still carried by the modes (sum of |amplitude|^2)."""
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def total_probability(self) -> float:
        return self.mode_norm() + self.p_absorbed

    def _replace(self, amplitudes, p_absorbed=None) -> "ModeState":
        if p_absorbed is None:
            p_absorbed = self.p_absorbed
        return ModeState(self.labels, amplitudes, p_absorbed)


def _index(labels: tuple, label) -> int:
    try:
        return labels.index(label)
    except ValueError:
        raise ConfigurationError(
            f"unknown mode label {label!r}; state has {labels!r}"
        ) from None


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Lossless splitter of reflectivity ``R`` coupling two modes."""

    R: float
    mode_pair: tuple

    def __post_init__(self):
        R = float(self.R)
        if not (0.0 <= R <= 1.0):
            raise ConfigurationError(f"reflectivity R={R} outside [0, 1]")
        pair = tuple(self.mode_pair)
        if len(pair) != 2 or pair[0] == pair[1]:
            raise ConfigurationError(
                f"mode_pair must be two distinct labels, got {pair!r}"
            )
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "mode_pair", pair)

    def matrix(self) -> np.ndarray:
        return beamsplitter_matrix(self.R)


@dataclass(frozen=True)
class AbsorberSpec:
    """Perfect absorber placed in one mode."""

    mode: Hashable


def beamsplitter_matrix(R: float) -> np.ndarray:
    """2x2 unitary ``[[t, i r], [i r, t]]`` with ``t = sqrt(1-R)``, ``r = sqrt(R)``."""
    t = np.sqrt(1.0 - R)
    r = np.sqrt(R)
    return np.array([[t, 1j * r], [1j * r, t]], dtype=complex)


def apply_beamsplitter(state: ModeState, bs: BeamSplitterSpec) -> ModeState:
    i, j = state.index(bs.mode_pair[0]), state.index(bs.mode_pair[1])
    amps = state.amplitudes.copy()
    amps[[i, j]] = bs.matrix() @ state.amplitudes[[i, j]]
    return state._replace(amps)


def apply_phase(state: ModeState, mode, phi: float) -> ModeState:
    """Multiply the amplitude on ``mode`` by ``exp(i phi)``."""
    k = state.index(mode)
    amps = state.amplitudes.copy()
    amps[k] = amps[k] * np.exp(1j * phi)
    return state._replace(amps)


def apply_absorber(state: ModeState, absorber: AbsorberSpec) -> ModeState:
    k = state.index(absorber.mode)
    amps = state.amplitudes.copy()
    lost = float(abs(amps[k]) ** 2)
    if lost == 0.0:
        return state
    amps[k] = 0.0
    return state._replace(amps, min(state.p_absorbed + lost, 1.0))


def apply_element(state: ModeState, element) -> ModeState:
    """Dispatch on element type.

    Phase shifts are given as ``(mode, phi)`` tuples.
    """
    if isinstance(element, BeamSplitterSpec):
        return apply_beamsplitter(state, element)
    if isinstance(element, AbsorberSpec):
        return apply_absorber(state, element)
    if isinstance(element, tuple) and len(element) == 2:
        return apply_phase(state, *element)
    raise ConfigurationError(f"unrecognised element {element!r}")


def propagate(state: ModeState, elements) -> ModeState:
    for element in elements:
        state = apply_element(state, element)
    return state

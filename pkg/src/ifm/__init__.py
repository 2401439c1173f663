"""Simulation and analysis of "interaction-free" bomb-detection schemes.

Natural units, hbar = 1, everywhere.
"""

__version__ = "0.1.0"

from .modes import (
    AbsorberSpec,
    BeamSplitterSpec,
    ConfigurationError,
    ModeState,
    apply_absorber,
    apply_beamsplitter,
    apply_phase,
)
from .interferometer import (
    MzConfig,
    OutcomeDistribution,
    StrategyReport,
    TrialTally,
    efficiency,
    optimize_reflectivity,
    outcome_distribution,
    run_trials,
    sequential_strategy,
)
from .trigger import (
    BombTrigger,
    DiscriminationReport,
    false_trigger_probability,
    kick_discrimination,
    minimum_detectable_kick,
)
from .shadow import (
    AngularSpectrum,
    ApertureGrid,
    ScatterOutcome,
    angular_spectrum,
    classify_outcomes,
    momentum_transfer_stats,
    transmitted_field,
)
from .well import (
    KickSpectrum,
    WellBomb,
    excitation_spectrum,
    stay_probability,
    well_trigger_bound,
)

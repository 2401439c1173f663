"""Mach-Zehnder bomb test, one photon at a time.

Run:  python demos/01_interferometer.py
"""
import numpy as np

from ifm import MzConfig, outcome_distribution, run_trials, sequential_strategy

# %% Clear beam line: every photon exits toward the bright detector.
print("clear:", outcome_distribution(MzConfig(0.5, bomb_present=False)))

# %% Bomb in the upper arm: half the photons are absorbed, a quarter reach
# the dark detector and reveal the bomb without touching it.
print("bomb: ", outcome_distribution(MzConfig(0.5, bomb_present=True)))

# %% The same thing sampled, photon by photon.
tally = run_trials(MzConfig(0.5), 100_000, seed=1)
print("100k photons:", tally.frequencies())

# %% Keep sending photons while they come out bright.
for R in (0.5, 0.2, 0.05, 0.001):
    rep = sequential_strategy(MzConfig(R), max_photons=None)
    print(f"R={R:<6} detect={rep.p_detect:.4f} explode={rep.p_explode:.4f} "
          f"photons={rep.expected_photons_sent:.1f}")
# Detection creeps up toward one half as R -> 0, at the cost of many photons.

# %% Unequal splitters: the bomb sits in the reflected arm, so it absorbs R.
for R in np.linspace(0.1, 0.9, 5):
    d = outcome_distribution(MzConfig(R))
    print(f"R={R:.1f}  B={d.p_bright:.3f}  D={d.p_dark:.3f}  absorbed={d.p_absorbed:.3f}")

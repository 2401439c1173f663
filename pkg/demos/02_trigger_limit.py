"""How sensitive can a bomb trigger be?

A bomb placed to within delta_x carries momentum noise sigma_p = 1/(2 delta_x).
Its trigger measures momentum, so kicks below that noise cannot be told apart
from no kick at all.

Run:  python demos/02_trigger_limit.py
"""
import numpy as np

from ifm import BombTrigger, false_trigger_probability, kick_discrimination, minimum_detectable_kick

t = BombTrigger(delta_x=1.0)
print(f"sigma_p = {t.sigma_p}, 1/delta_x = {t.p_coarse}")

# %% A trigger set to fire on any momentum at all fires every time.
for p_th in (0.0, 0.5 * t.sigma_p, t.sigma_p, 3 * t.sigma_p):
    print(f"p_th = {p_th:.3f}: fires spontaneously with P = "
          f"{false_trigger_probability(BombTrigger(1.0, p_th)):.4f}")

# %% Best achievable error deciding "kicked by q" vs "not kicked".
for q_over_sigma in (0, 0.5, 1, 2, 4, 10):
    r = kick_discrimination(t, q_over_sigma * t.sigma_p)
    print(f"q = {q_over_sigma:>4} sigma_p: min error {r.min_error:.3g}")

# %% The smallest reliably detectable kick scales as 1/delta_x.
for dx in np.logspace(-2, 2, 5):
    q = minimum_detectable_kick(BombTrigger(dx), error_budget=0.05)
    print(f"delta_x = {dx:8.2f}: q_min = {q:10.4f}, q_min * delta_x = {q * dx:.6f}")

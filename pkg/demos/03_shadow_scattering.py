"""Seeing a black strip by the light it deflects.

A plane wave hits an absorbing strip of width a. As much light is scattered
into the shadow pattern as is absorbed, and the typical recoil is ~1/a.

Run:  python demos/03_shadow_scattering.py
"""
import math

from ifm import ApertureGrid, BombTrigger, angular_spectrum, classify_outcomes, momentum_transfer_stats

W, N = 1.0, 2**16
for d in (64, 128, 256):
    grid = ApertureGrid(W, N, W / d)
    spec = angular_spectrum(grid)
    stats = momentum_transfer_stats(spec)
    print(f"a = W/{d}: absorbed {spec.p_absorbed:.5f}  scattered {spec.p_scattered:.5f}  "
          f"median |k| a = {stats['median_k_a']:.4f}")

# %% A bomb localised to its own size has momentum noise ~1/a, so soft
# scatters below that threshold detect it without setting it off.
grid = ApertureGrid(W, N, W / 128)
spec = angular_spectrum(grid)
for c in (0.5, 1.0, 2.0, 2 * math.pi):
    out = classify_outcomes(spec, BombTrigger(grid.a_eff, c / grid.a_eff))
    print(f"p_th = {c:.3f}/a: inconclusive {out.p_inconclusive:.5f}  "
          f"safe detection {out.p_detect_safe:.5f}  boom {out.p_boom:.5f}")

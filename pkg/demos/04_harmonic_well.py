"""A bomb held in a harmonic well, kicked by a probe.

Run:  python demos/04_harmonic_well.py
"""
from ifm import WellBomb, excitation_spectrum, stay_probability, well_trigger_bound

w = WellBomb(M=1.0, omega=1.0)
print(f"delta_x = {w.delta_x:.4f}, delta_p = {w.delta_p:.4f}")
print(f"delta_p^2/(2M) = {w.recoil_energy_scale} (level spacing {w.level_spacing})")

# %% Kicks well under delta_p almost never lift the bomb out of the ground state.
for frac in (0.01, 0.1, 0.5, 1.0, 2.0):
    print(f"q = {frac:>4} delta_p: stays put with P = {stay_probability(w, frac * w.delta_p):.5f}")

# %% Level populations after a kick of 2 delta_p.
spec = excitation_spectrum(w, 2 * w.delta_p, n_max=6)
for n, p in zip(spec.levels, spec.probabilities):
    print(f"  n = {n}: {p:.5f}")

# %% The kick that excites the bomb half the time.
q = well_trigger_bound(w)
print(f"trigger bound {q:.4f} = {q / w.delta_p:.4f} delta_p; times delta_x = {q * w.delta_x:.4f}")

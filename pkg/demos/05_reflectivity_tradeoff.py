"""Choosing splitter reflectivity: detection efficiency against photons spent.

Run:  python demos/05_reflectivity_tradeoff.py
"""
from ifm import efficiency, optimize_reflectivity
from ifm.interferometer import expected_photons

for weight in (0.0, 1e-3, 1e-2, 1e-1, 1.0):
    R, value = optimize_reflectivity(weight)
    print(f"weight {weight:<6}: R* = {R:.6f}  efficiency {efficiency(R):.4f}  "
          f"photons {expected_photons(R):.2f}  objective {value:.4f}")

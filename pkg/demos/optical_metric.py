"""Constitutive tensors of a medium co-rotating with the frame.

Compares the closed form with the general route (ADM metric, Gordon optical
metric, then xi and G) at a few radii, and shows how the gyration vector
grows toward the optical cylinder rho = c / (n Omega).
"""

import numpy as np

from spinlight import CODATA2018, MediumParams
from spinlight.geometry import Event
from spinlight.optics import rotating_constitutive_exact, rotating_medium_pipeline

c = CODATA2018.c
Om, glass = 1e5, MediumParams(2.25, 1.0)
rho_opt = c / (glass.n * Om)
print(f"optical cylinder: {rho_opt:.1f} m; light cylinder: {c / Om:.1f} m")

for frac in (0.0, 0.1, 0.5, 0.9):
    r = np.array([frac * rho_opt, 0.0, 0.0])
    a = rotating_constitutive_exact(Om, glass, r)
    b = rotating_medium_pipeline(Om, glass, Event.at(r))
    dxi = np.abs(a.xi - b.xi).max() / np.abs(a.xi).max()
    print(f"rho/rho_opt {frac:3.1f}: |G| c = {np.linalg.norm(a.G) * c:.4e}, "
          f"xi_yy c/n = {a.xi[1, 1] * c / glass.n:.6f}, closed vs pipeline {dxi:.1e}")

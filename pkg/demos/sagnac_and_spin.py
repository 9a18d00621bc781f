"""Sagnac phase of a ring interferometer and the spin-rotation energy scale on Earth."""

import math

from spinlight import CODATA2018, sagnac_phase
from spinlight.kinematics import spin_rotation_energy

c, hbar, eV = CODATA2018.c, CODATA2018.hbar, CODATA2018.e_charge
w_hene = 2 * math.pi * c / 633e-9
earth = 7.292e-5

for area in (1.0, 100.0, 834.0):
    phase = sagnac_phase(w_hene, (0, 0, earth), (0, 0, area))
    print(f"HeNe ring, A = {area:6.1f} m^2: phase {phase:.4e} rad")
print("tilted into the loop plane:", sagnac_phase(w_hene, (earth, 0, 0), (0, 0, 1.0)))

# one unit of spin along the rotation axis (sidereal rate 11.6 µHz)
Om = 2 * math.pi * 11.6e-6
for h in (1, -1):
    E = spin_rotation_energy((0, 0, h * hbar), (0, 0, Om))
    print(f"helicity {h:+d}: H = {E / eV:+.3e} eV")

# Helicity splitting of light in a rotating medium.
# Closed-form k± = n(ω ± Ω)/c next to the value recovered by minimizing the
# curl residual of the mode ansatz on a 17^3 grid, then the residual itself
# under refinement for the right and a wrong wavenumber.

import math

from spinlight import VACUUM, MediumParams, dispersion_axial, dispersion_recover
from spinlight.constants import SCALED
from spinlight.grid import GridSpec
from spinlight.solver import HelicityMode, RotatingMedium, ansatz_field, curl_residual

glass = MediumParams(2.25, 1.0)

print(f"{'omega':>8} {'Omega':>7} {'n':>4} {'h':>3} {'k_closed':>22} {'rel_diff':>10}")
for w in (1e14, 1e15):
    for Om in (0.0, 1e3):
        for m in (VACUUM, glass):
            for h in (1, -1):
                k = dispersion_axial(w, Om, m, h)
                kr = dispersion_recover(w, Om, m, h)
                print(f"{w:8.0e} {Om:7.0e} {m.n:4.2f} {h:+3d} {k:22.15e} {abs(kr - k) / k:10.2e}")

# residual convergence, scaled units (c = 1), thin box along the axis
w, Om = 2 * math.pi, 2 * math.pi * 1e-3
medium = RotatingMedium(Om, VACUUM, const=SCALED)
good = HelicityMode.closed_form(1, w, Om, VACUUM, const=SCALED)
bad = good.with_k(w)
print(f"\n{'nz':>5} {'good':>12} {'wrong k':>12}")
for nz in (33, 65, 129, 257, 513):
    g = GridSpec((0, 0, 0), (0.05, 0.05, 0.5), (9, 9, nz))
    r_good = curl_residual(lambda r: ansatz_field(good, r, SCALED), 1, w, medium, g, SCALED,
                           estimate_order=False).max_norm
    r_bad = curl_residual(lambda r: ansatz_field(bad, r, SCALED), 1, w, medium, g, SCALED,
                          estimate_order=False).max_norm
    print(f"{nz:5d} {r_good:12.4e} {r_bad:12.4e}")
print(f"wrong-k floor |dk||F| = {Om * math.sqrt(2):.4e}")

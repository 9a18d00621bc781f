# Weak-field gravitomagnetism of the Earth: potentials and fields on and off
# the spin axis, the spin-gravity energy at the surface, and the rotation of
# the polarization plane for light climbing the axis.

from spinlight import CODATA2018, EARTH, faraday_rotation_axial, faraday_rotation_numeric, gem_fields
from spinlight.gem import gem_potentials, larmor_frequency, spin_gravity_energy

R = EARTH.body_radius
c, hbar, eV = CODATA2018.c, CODATA2018.hbar, CODATA2018.e_charge

for label, x in (("pole", (0, 0, R)), ("2R axis", (0, 0, 2 * R)), ("equator", (R, 0, 0))):
    f = gem_fields(EARTH, x)
    Phi = gem_potentials(EARTH, x).Phi_g
    print(f"{label:8s} Phi/c^2 {Phi / c**2:.3e}  B_g {f.B_g[2]:+.3e} m/s^2  "
          f"Larmor {larmor_frequency(f.B_g)[2]:+.3e} rad/s")

B = gem_fields(EARTH, (0, 0, R)).B_g
print(f"spin-gravity energy at the pole: {spin_gravity_energy((0, 0, hbar), B) / eV:.3e} eV")

for zf in (2, 10, 100, float("inf")):
    closed = faraday_rotation_axial(EARTH, R, zf * R)
    line = f"R -> {zf:>4} R: {closed:.6e} rad"
    if zf != float("inf"):
        num = faraday_rotation_numeric(EARTH, R, zf * R, 1e15)
        line += f"  quadrature {num:.6e} (rel {abs(num - closed) / closed:.1e})"
    print(line)

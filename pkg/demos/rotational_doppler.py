# Observers spinning about the propagation axis: project a circularly
# polarized plane wave onto their frame, sample one component and read the
# frequency off an FFT.  Scaled units (c = 1), omega0 = 2π·100, Omega = 2π.

import math
import warnings

import numpy as np

from spinlight import PlaneWave, measured_frequency
from spinlight.constants import SCALED
from spinlight.kinematics import MeasuredSignal, helicity_frequency, tetrad_projected_wave

w0, Om = 2 * math.pi * 100, 2 * math.pi
dt, n = 1e-4, 2048
t = np.arange(n) * dt

for h in (1, -1):
    F = tetrad_projected_wave(PlaneWave(w0, 1.0, h), Om, t, 0.0, const=SCALED)
    sig = MeasuredSignal(F[:, 0], dt)
    got = measured_frequency(sig)
    want = w0 - h * Om
    print(f"helicity {h:+d}: measured {got / (2 * math.pi):9.4f} x 2π, "
          f"expected {want / (2 * math.pi):6.1f}, bin {sig.bin_width / (2 * math.pi):.3f}")

# the same shift straight from the frequency formula, with its slow-rotation warning muted
with warnings.catch_warnings():
    warnings.simplefilter("ignore", RuntimeWarning)
    for h in (1, -1):
        w = helicity_frequency(w0, (0, 0, 1), (0, 0, Om), h)[0]
        print(f"formula, helicity {h:+d}: {w / (2 * math.pi):.6f} x 2π")

"""What rotating observers measure: Doppler shifts, spin-rotation energies, Sagnac phase.

Also the measurement chain for observers on the rotation axis: project an
inertial plane wave onto their rotating tetrad, sample a component in time,
and read off its frequency from the spectrum.

``spin_rotation_energy`` omits the Lorentz factor (it is a first-order
coupling), while ``energy_total`` keeps the overall gamma of the Doppler
formula.  Matter-wave Sagnac interferometry is not covered.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constants import CODATA2018, Constants
from .errors import InvalidInputError, SamplingError, SuperluminalError, UnsupportedMetricError
from .fields import PlaneWave, check_helicity, plane_wave_fields
from .geometry import rotating_observer_tetrad
from .solver import SLOW_ROTATION_LIMIT


@dataclass(frozen=True, eq=False)
class RayState:
    """Plane wave ``(omega0, k0)`` seen by an observer at ``r`` rotating with ``Omega``."""

    omega0: float
    k0: np.ndarray
    r: np.ndarray
    Omega: np.ndarray
    helicity: int | None = None

    def __post_init__(self):
        for name in ("k0", "r", "Omega"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float).reshape(3))
        if self.helicity is not None:
            check_helicity(self.helicity)
        if not np.linalg.norm(self.k0) > 0:
            raise InvalidInputError("k0 must be nonzero")

    @property
    def k_hat(self) -> np.ndarray:
        return self.k0 / np.linalg.norm(self.k0)

    @property
    def orbital(self) -> np.ndarray:
        """``r x k0`` (orbital angular momentum per hbar)."""
        return np.cross(self.r, self.k0)

    def spin(self, const: Constants = CODATA2018) -> np.ndarray:
        if self.helicity is None:
            raise InvalidInputError("helicity is required for the photon spin")
        return self.helicity * const.hbar * self.k_hat

    def gamma(self, const: Constants = CODATA2018) -> float:
        beta = np.linalg.norm(np.cross(self.Omega, self.r)) / const.c
        if beta >= 1:
            raise SuperluminalError(f"observer speed {beta:.6g} c is not subluminal")
        return 1.0 / math.sqrt(1.0 - beta**2)


def doppler_frequency(s: RayState, const: Constants = CODATA2018) -> float:
    return s.gamma(const) * (s.omega0 - s.Omega @ s.orbital)


def doppler_energy(s: RayState, const: Constants = CODATA2018) -> float:
    L = const.hbar * s.orbital
    return s.gamma(const) * (const.hbar * s.omega0 - s.Omega @ L)


def energy_total(s: RayState, const: Constants = CODATA2018) -> float:
    """Photon energy measured by the rotating observer, orbital plus spin coupling [J]."""
    L = const.hbar * s.orbital
    S = s.spin(const)
    return s.gamma(const) * (const.hbar * s.omega0 - s.Omega @ L - s.Omega @ S)


def helicity_frequency(omega0: float, k0, Omega, helicity: int):
    """Frequency seen from rotating axes; the wave vector is unchanged.

    Returns ``(omega0 - (+-k_hat) . Omega, k0)``.
    """
    s = check_helicity(helicity)
    k0 = np.asarray(k0, dtype=float)
    k_hat = k0 / np.linalg.norm(k0)
    Om = np.asarray(Omega, dtype=float)
    if np.linalg.norm(Om) > SLOW_ROTATION_LIMIT * omega0:
        warnings.warn("rotation not slow compared with the wave frequency", RuntimeWarning,
                      stacklevel=2)
    return omega0 - s * (k_hat @ Om), k0.copy()


def sagnac_phase(omega0: float, Omega, A, const: Constants = CODATA2018) -> float:
    """Sagnac phase ``4 omega0 (Omega . A) / c^2`` for oriented area ``A`` [m^2]."""
    return 4.0 * omega0 * float(np.asarray(Omega) @ np.asarray(A)) / const.c**2


def spin_rotation_energy(S, Omega) -> float:
    return -float(np.asarray(S) @ np.asarray(Omega))


def tetrad_projected_wave(
    w: PlaneWave,
    Omega_z: float,
    t0,
    z0: float = 0.0,
    x0: float = 0.0,
    y0: float = 0.0,
    const: Constants = CODATA2018,
) -> np.ndarray:
    """Field tensor of ``w`` on the rotating frame of an observer on the z axis.

    Returns components ``(F_01, F_02, F_03, F_23, F_31, F_12)`` along the last
    axis; ``t0`` may be an array of times.
    """
    if not np.allclose(w.axis, (0.0, 0.0, 1.0), rtol=0, atol=1e-15):
        raise UnsupportedMetricError("projection is implemented for waves along +z only")
    if x0 != 0 or y0 != 0:
        raise UnsupportedMetricError("projection is implemented for observers on the axis only")
    t0 = np.asarray(t0, dtype=float)
    r = np.zeros(t0.shape + (3,))
    r[..., 2] = z0
    F = plane_wave_fields(w, (t0, r), const).field_tensor()
    out = np.empty(t0.shape + (6,), dtype=complex)
    for idx, t in np.ndenumerate(t0):
        e = rotating_observer_tetrad(Omega_z, float(t)).vectors
        Fh = e @ F[idx] @ e.T
        out[idx] = (Fh[0, 1], Fh[0, 2], Fh[0, 3], Fh[2, 3], Fh[3, 1], Fh[1, 2])
    return out


@dataclass(frozen=True, eq=False)
class MeasuredSignal:
    """Uniformly sampled complex time series."""

    samples: np.ndarray
    dt: float

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex).reshape(-1)
        if s.size < 16:
            raise InvalidInputError("signal needs at least 16 samples")
        if not self.dt > 0:
            raise InvalidInputError("dt must be positive")
        object.__setattr__(self, "samples", s)

    @property
    def bin_width(self) -> float:
        """Angular-frequency spacing of the DFT bins [rad/s]."""
        return 2 * math.pi / (self.samples.size * self.dt)

    @classmethod
    def from_csv(cls, path) -> "MeasuredSignal":
        """Read ``re,im,dt=<seconds>`` header followed by ``re,im`` rows."""
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            raise InvalidInputError(f"{path}: empty file")
        header = [h.strip() for h in rows[0]]
        if len(header) != 3 or header[:2] != ["re", "im"] or not header[2].startswith("dt="):
            raise InvalidInputError(f"{path}: header must be 're,im,dt=<seconds>'")
        dt = float(header[2][3:])
        data = np.array([[float(a), float(b)] for a, b in rows[1:]])
        return cls(data[:, 0] + 1j * data[:, 1], dt)

    def to_csv(self, path) -> None:
        with open(Path(path), "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["re", "im", f"dt={float(self.dt)!r}"])
            for z in self.samples:
                w.writerow([repr(float(z.real)), repr(float(z.imag))])


def measured_frequency(sig: MeasuredSignal) -> float:
    """Dominant angular frequency of ``sig`` in the ``exp(-i omega t)`` convention.

    Hann window, DFT, then a parabola through the log-magnitudes of the peak
    bin and its neighbours.  Accurate to well within half a bin for a single
    tone.
    """
    x = sig.samples
    n = x.size
    spec = np.abs(np.fft.fft(x * np.hanning(n)))
    p = int(np.argmax(spec))
    freqs = np.fft.fftfreq(n, sig.dt)
    if n % 2 == 0 and abs(p - n // 2) <= 1:
        raise SamplingError("spectral peak at the Nyquist frequency: signal is aliased")
    lo, mid, hi = (np.log(max(spec[(p + d) % n], 1e-300)) for d in (-1, 0, 1))
    denom = lo - 2 * mid + hi
    delta = 0.5 * (lo - hi) / denom if denom != 0 else 0.0
    f = freqs[p] + delta / (n * sig.dt)
    # exp(-i omega t) puts a positive omega at negative DFT frequency
    return -2 * math.pi * f

"""Weak-field gravitoelectromagnetism outside a slowly rotating body.

Potentials take the exterior multipole form::

    Phi_g = G M / r           A_g = (G / c) J x r / r^3
    E_g = -grad Phi_g         B_g = curl A_g = -grad chi_g,   chi_g = (G / c) J . r / r^3

``Phi_g`` is positive, so ``-Phi_g`` is the Newtonian potential and
``E_g = G M r / r^3`` points away from the body; the Newtonian acceleration
of a test mass is ``-E_g``.

Light of helicity +-1 moving along ``n_hat`` obeys, to first order,
``c k = omega -+ (n_hat . B_g) / c``.  The two helicities split, and a
linearly polarized wave running up the spin axis from ``z_i`` to ``z_f``
rotates its polarization plane by ``(G J / c^3)(1/z_i^2 - 1/z_f^2)``.  The
sense of that rotation relative to J and the propagation direction depends
on convention; this module reports it as positive for outward propagation
along +J.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from scipy import integrate

from .constants import CODATA2018, Constants
from .errors import InteriorPointError, InvalidInputError, NumericalError, WeakFieldError
from .fields import check_helicity
from .geometry import Event, MetricComponents, _position

WEAK_FIELD_LIMIT = 0.01


@dataclass(frozen=True, eq=False)
class GEMSource:
    M: float
    J: np.ndarray
    body_radius: float
    name: str = ""

    def __post_init__(self):
        if not (self.M > 0 and self.body_radius > 0):
            raise InvalidInputError("mass and body radius must be positive")
        object.__setattr__(self, "J", np.asarray(self.J, dtype=float).reshape(3))

    def _exterior(self, x) -> tuple[np.ndarray, float]:
        x = _position(x)
        r = float(np.linalg.norm(x))
        if r < self.body_radius:
            raise InteriorPointError(
                f"|x| = {r:.6g} m is inside the body (radius {self.body_radius:.6g} m)"
            )
        return x, r


@dataclass(frozen=True, eq=False)
class GEMPotentials:
    Phi_g: float
    A_g: np.ndarray


@dataclass(frozen=True, eq=False)
class GEMFields:
    E_g: np.ndarray
    B_g: np.ndarray


def _catalog_text(path) -> str:
    if path is not None:
        return Path(path).read_text()
    return resources.files("spinlight").joinpath("data/catalog.json").read_text()


def load_catalog(path=None) -> dict[str, GEMSource]:
    """Read a source catalog.

    Schema: a JSON object mapping a name to ``{"mass_kg": float,
    "angular_momentum_kg_m2_per_s": [Jx, Jy, Jz], "radius_m": float}``.
    Without ``path`` the bundled catalog (Earth, Sun) is used.
    """
    raw = json.loads(_catalog_text(path))
    out = {}
    for name, entry in raw.items():
        try:
            out[name] = GEMSource(
                float(entry["mass_kg"]),
                entry["angular_momentum_kg_m2_per_s"],
                float(entry["radius_m"]),
                name,
            )
        except KeyError as exc:
            raise InvalidInputError(f"catalog entry {name!r} lacks {exc.args[0]!r}") from exc
    return out


CATALOG = load_catalog()
EARTH = CATALOG["earth"]


def gem_potentials(src: GEMSource, x, const: Constants = CODATA2018) -> GEMPotentials:
    x, r = src._exterior(x)
    return GEMPotentials(
        const.G * src.M / r,
        (const.G / const.c) * np.cross(src.J, x) / r**3,
    )


def gem_fields(src: GEMSource, x, const: Constants = CODATA2018) -> GEMFields:
    x, r = src._exterior(x)
    E = const.G * src.M * x / r**3
    B = const.G / (const.c * r**5) * (3 * (src.J @ x) * x - src.J * r**2)
    return GEMFields(E, B)


def gravitomagnetic_scalar_potential(src: GEMSource, x, const: Constants = CODATA2018) -> float:
    x, r = src._exterior(x)
    return float((const.G / const.c) * (src.J @ x) / r**3)


def gem_metric(src: GEMSource, at: Event, const: Constants = CODATA2018) -> MetricComponents:
    """Linearized stationary metric in ``(t, x, y, z)``; raises WeakFieldError if Phi_g/c^2 > 0.01."""
    pot = gem_potentials(src, at, const)
    c = const.c
    phi = pot.Phi_g / c**2
    if phi > WEAK_FIELD_LIMIT:
        raise WeakFieldError(f"Phi_g/c^2 = {phi:.3g} is not small")
    g = np.zeros((4, 4))
    g[0, 0] = -(1 - 2 * phi) * c**2
    g[0, 1:] = g[1:, 0] = -(2 / c) * pot.A_g
    g[1:, 1:] = (1 + 2 * phi) * np.eye(3)
    return MetricComponents(g)


def larmor_frequency(B_g, const: Constants = CODATA2018) -> np.ndarray:
    return -np.asarray(B_g, dtype=float) / const.c


def spin_gravity_energy(S, B_g, const: Constants = CODATA2018) -> float:
    return float(np.asarray(S) @ np.asarray(B_g)) / const.c


def gravitomagnetic_wavenumber_shift(
    src: GEMSource, x, n_hat, helicity: int, const: Constants = CODATA2018
) -> float:
    """``k - omega/c`` for helicity +-1: ``-+ (n_hat . B_g) / c^2``."""
    s = check_helicity(helicity)
    n_hat = np.asarray(n_hat, dtype=float)
    if abs(np.linalg.norm(n_hat) - 1.0) > 1e-12:
        raise InvalidInputError("n_hat must be a unit vector")
    B = gem_fields(src, x, const).B_g
    return -s * float(n_hat @ B) / const.c**2


def gravitomagnetic_dispersion(
    omega: float, src: GEMSource, x, n_hat, helicity: int, const: Constants = CODATA2018
) -> float:
    shift = gravitomagnetic_wavenumber_shift(src, x, n_hat, helicity, const)
    if abs(shift) * const.c > 1e-3 * omega:
        warnings.warn("gravitomagnetic shift is not small compared with omega", RuntimeWarning,
                      stacklevel=2)
    return omega / const.c + shift


def _axial_J(src: GEMSource) -> float:
    Jx, Jy, Jz = src.J
    if Jx != 0 or Jy != 0:
        raise InvalidInputError("axial Faraday rotation needs J along e_z")
    return float(Jz)


def _check_path(src: GEMSource, z_i: float, z_f: float):
    if not z_f >= z_i:
        raise InvalidInputError("need z_f >= z_i")
    if z_i < src.body_radius:
        raise InteriorPointError(f"z_i = {z_i:.6g} m is inside the body")


def faraday_rotation_axial(src: GEMSource, z_i: float, z_f: float,
                           const: Constants = CODATA2018) -> float:
    """Closed-form polarization rotation along the spin axis [rad]."""
    J = _axial_J(src)
    _check_path(src, z_i, z_f)
    return const.G * J / const.c**3 * (1 / z_i**2 - 1 / z_f**2)


def faraday_rotation_numeric(
    src: GEMSource, z_i: float, z_f: float, omega: float, const: Constants = CODATA2018,
    rtol: float = 1e-10,
) -> float:
    """Polarization rotation ``(1/2) integral (k- - k+) dz`` by adaptive quadrature.

    The integrand is built from :func:`gravitomagnetic_wavenumber_shift` at
    points on the axis.  The common ``omega / c`` part of ``k+`` and ``k-``
    cancels identically, so it is dropped before subtracting; otherwise the
    split (about 1e-22 of ``k`` near the Earth) would be lost to rounding.
    The integral runs in ``u = 1 / z^2``.
    """
    _axial_J(src)
    _check_path(src, z_i, z_f)
    if not omega > 0:
        raise InvalidInputError("omega must be positive")
    if z_f == z_i:
        return 0.0
    e_z = np.array([0.0, 0.0, 1.0])

    def half_split(z):
        x = np.array([0.0, 0.0, z])
        return 0.5 * (
            gravitomagnetic_wavenumber_shift(src, x, e_z, -1, const)
            - gravitomagnetic_wavenumber_shift(src, x, e_z, +1, const)
        )

    def integrand(u):
        z = u**-0.5
        return half_split(z) * 0.5 * u**-1.5  # |dz/du|

    u_f, u_i = 1 / z_f**2, 1 / z_i**2
    val, err = integrate.quad(integrand, u_f, u_i, epsrel=rtol, epsabs=0.0, limit=200)
    if not np.isfinite(val) or abs(err) > 10 * rtol * abs(val) + 1e-300:
        raise NumericalError(f"Faraday quadrature did not converge (estimate {val}, error {err})")
    return float(val)

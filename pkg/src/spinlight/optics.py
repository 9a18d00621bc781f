"""Optical metric of a moving medium and the equivalent anisotropic medium.

A homogeneous isotropic medium (relative ``eps``, ``mu``) moving with
4-velocity ``u`` through a metric ``g`` responds to light as if it lived in
the optical metric ``g_opt``.  Splitting ``g_opt`` into space and time gives a
permittivity/permeability density ``xi`` and a gyration vector ``G``::

    D = lambda xi E - G x H
    B = xi H / lambda + G x E

``xi`` carries a factor 1/c, so ``lambda * xi`` is in F/m and ``xi / lambda``
in H/m; in vacuum at rest ``xi = I / c``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import CODATA2018, DEFAULT_POLICY, Constants, NumericPolicy
from .errors import InvalidInputError, NumericalError, OutOfRegionError, SingularMediumError
from .geometry import (
    Event,
    FourVelocity,
    MetricComponents,
    _position,
    adm_to_metric,
    rotating_frame_adm,
)


@dataclass(frozen=True)
class MediumParams:
    eps: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if not (self.eps > 0 and self.mu > 0):
            raise InvalidInputError(f"eps and mu must be positive, got {self.eps}, {self.mu}")

    @property
    def n(self) -> float:
        """Refractive index sqrt(eps * mu)."""
        return float(np.sqrt(self.eps * self.mu))


VACUUM = MediumParams()


@dataclass(frozen=True, eq=False)
class OpticalMetric:
    contravariant: np.ndarray
    covariant: np.ndarray
    sqrt_neg_det: float

    def inverse_error(self, const: Constants = CODATA2018) -> float:
        """Max deviation of ``contravariant @ covariant`` from the identity.

        Measured in components with ``x^0 = c t`` so that time and space
        entries are comparable.
        """
        S = np.diag([const.c, 1.0, 1.0, 1.0])
        prod = S @ self.contravariant @ self.covariant @ np.linalg.inv(S)
        return float(np.max(np.abs(prod - np.eye(4))))


@dataclass(frozen=True, eq=False)
class ConstitutiveTensors:
    """``xi`` (..., 3, 3), gyration ``G`` (..., 3) and impedance factor ``lam``.

    Arrays may carry leading batch dimensions when built on a grid.
    """

    xi: np.ndarray
    G: np.ndarray
    lam: float

    @property
    def eps_tensor(self) -> np.ndarray:
        return self.lam * self.xi

    @property
    def mu_tensor(self) -> np.ndarray:
        return self.xi / self.lam


def impedance_lambda(m: MediumParams, const: Constants = CODATA2018) -> float:
    return float(np.sqrt(m.eps * const.eps0 / (m.mu * const.mu0)))


def optical_metric(
    g: MetricComponents, u: FourVelocity, m: MediumParams, const: Constants = CODATA2018
) -> OpticalMetric:
    c2 = const.c**2
    nn = m.eps * m.mu
    try:
        g_inv = np.linalg.inv(g.g)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("metric is singular") from exc
    u_up = u.components
    u_dn = g.g @ u_up
    contra = g_inv + (1.0 - nn) * np.outer(u_up, u_up) / c2
    co = g.g + (1.0 - 1.0 / nn) * np.outer(u_dn, u_dn) / c2
    det = np.linalg.det(co)
    if not det < 0:
        raise InvalidInputError("optical metric is not Lorentzian")
    return OpticalMetric(contra, co, float(np.sqrt(-det)))


def constitutive_from_optical(
    om: OpticalMetric, m: MediumParams, const: Constants = CODATA2018
) -> ConstitutiveTensors:
    g00 = om.covariant[0, 0]
    if g00 == 0:
        raise SingularMediumError("g_opt_00 vanishes: medium description breaks down")
    xi = -om.sqrt_neg_det * om.contravariant[1:, 1:] / g00
    G = -om.covariant[0, 1:] / g00
    return ConstitutiveTensors(xi, G, impedance_lambda(m, const))


def _omega_cross_r(Omega, r):
    return np.cross(np.broadcast_to(np.asarray(Omega, dtype=float), np.shape(r)), r)


def rotating_constitutive_exact(
    Omega_z: float,
    m: MediumParams,
    at,
    const: Constants = CODATA2018,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> ConstitutiveTensors:
    """Closed-form medium for a frame rotating about z, all orders in ``Omega_z``.

    ``at`` is an Event or positions of shape (..., 3).  Raises
    OutOfRegionError beyond the optical light cylinder
    ``eps*mu*Omega^2*rho^2/c^2 < 1`` and beyond the coordinate cylinder
    ``|K| < policy.admissible_fraction``.
    """
    r = _position(at)
    c = const.c
    nn = m.eps * m.mu
    x, y = r[..., 0], r[..., 1]
    a = Omega_z**2 / c**2
    inv_chi2 = 1.0 - nn * a * (x**2 + y**2)
    if np.any(inv_chi2 <= 0):
        raise OutOfRegionError("point lies outside the optical light cylinder")
    if np.any(np.sqrt(a * (x**2 + y**2)) >= policy.admissible_fraction):
        raise OutOfRegionError("point lies outside the light cylinder")
    chi2 = 1.0 / inv_chi2
    pref = chi2 * np.sqrt(nn) / c
    xi = np.zeros(np.shape(x) + (3, 3))
    xi[..., 0, 0] = 1.0 - nn * a * y**2
    xi[..., 0, 1] = xi[..., 1, 0] = nn * a * x * y
    xi[..., 1, 1] = 1.0 - nn * a * x**2
    xi[..., 2, 2] = 1.0
    xi *= np.asarray(pref)[..., None, None]
    K = -_omega_cross_r((0.0, 0.0, Omega_z), r) / c
    G = -(np.asarray(chi2) * nn / c)[..., None] * K
    return ConstitutiveTensors(xi, G, impedance_lambda(m, const))


def rotating_constitutive_linear(
    Omega, m: MediumParams, at, const: Constants = CODATA2018
) -> ConstitutiveTensors:
    """First order in ``Omega``: isotropic ``xi = n/c`` and ``G = (eps mu / c^2) Omega x r``."""
    r = _position(at)
    c = const.c
    xi = np.broadcast_to(np.eye(3) * (m.n / c), np.shape(r)[:-1] + (3, 3)).copy()
    G = (m.eps * m.mu / c**2) * _omega_cross_r(Omega, r)
    return ConstitutiveTensors(xi, G, impedance_lambda(m, const))


def rotating_medium_pipeline(
    Omega_z: float, m: MediumParams, at: Event, const: Constants = CODATA2018
) -> ConstitutiveTensors:
    """Medium comoving with a rotating frame, built through the generic route.

    rotating ADM data -> metric -> comoving 4-velocity (the Fermi frame's time
    leg) -> optical metric -> constitutive tensors.  Used to cross-check
    :func:`rotating_constitutive_exact`.
    """
    adm = rotating_frame_adm((0.0, 0.0, Omega_z), const)
    g = adm_to_metric(adm, at, const)
    K = adm.shift(at)
    u = FourVelocity.of(adm, const.c * K, at, const)
    return constitutive_from_optical(optical_metric(g, u, m, const), m, const)

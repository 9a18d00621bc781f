"""Time-harmonic RS field equation in a rotating optical medium.

For ``F`` varying as ``exp(-i omega t)`` the source-free equations reduce to::

    curl F+- = +-omega Z+-,      Z+- = xi F+- +- i G x F+-

For a medium rotating slowly about z (first order in Omega) the helicity
modes are

    F+- = eta (e_x +- i e_y) exp(i k z) + e_z zeta(x, y) exp(i k z)
    zeta = +-i (n Omega / c) eta (x +- i y)
    c k+- = n (omega +- Omega)

This module evaluates those closed forms, measures the finite-difference
residual of the field equation on a grid, and recovers ``k`` numerically by
minimizing that residual.

Test runs use ``Omega / omega`` far above realistic values (up to 1e-3).
That is safe because every retained term is linear in Omega: the relative
size of rotational effects scales with ``Omega / omega`` and nothing else.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import CODATA2018, Constants
from .errors import InvalidInputError, WindowError
from .fields import check_helicity, rs_constitutive
from .geometry import _position
from .grid import GridSpec, ResidualReport, curl, divergence, two_grid_report
from .optics import (
    VACUUM,
    ConstitutiveTensors,
    MediumParams,
    rotating_constitutive_exact,
    rotating_constitutive_linear,
)

#: ratio |Omega|/omega above which first-order formulas warn
SLOW_ROTATION_LIMIT = 1e-3


def _warn_fast(Omega: float, omega: float):
    if abs(Omega) > SLOW_ROTATION_LIMIT * omega:
        warnings.warn(
            f"|Omega|/omega = {abs(Omega) / omega:.3g} exceeds {SLOW_ROTATION_LIMIT}; "
            "first-order result may be inaccurate",
            RuntimeWarning,
            stacklevel=3,
        )


@dataclass(frozen=True)
class HelicityMode:
    helicity: int
    omega: float
    k: float
    eta: complex = 1.0
    medium: MediumParams = VACUUM
    Omega_z: float = 0.0

    def __post_init__(self):
        check_helicity(self.helicity)
        if not self.omega > 0:
            raise InvalidInputError("omega must be positive")

    @classmethod
    def closed_form(
        cls,
        helicity: int,
        omega: float,
        Omega_z: float = 0.0,
        medium: MediumParams = VACUUM,
        eta: complex = 1.0,
        const: Constants = CODATA2018,
    ) -> "HelicityMode":
        """Mode whose wavenumber follows the first-order dispersion relation."""
        k = dispersion_axial(omega, Omega_z, medium, helicity, const)
        return cls(helicity, omega, k, eta, medium, Omega_z)

    def with_k(self, k: float) -> "HelicityMode":
        return HelicityMode(self.helicity, self.omega, k, self.eta, self.medium, self.Omega_z)


def zeta_profile(mode: HelicityMode, x, y, const: Constants = CODATA2018):
    """Longitudinal amplitude of the mode at transverse position ``(x, y)``."""
    s = mode.helicity
    return s * 1j * (mode.medium.n * mode.Omega_z / const.c) * mode.eta * (x + s * 1j * y)


def _mode_profile(mode: HelicityMode, r: np.ndarray, phase, const: Constants) -> np.ndarray:
    s = mode.helicity
    phase = np.asarray(phase)
    F = np.empty(np.shape(r)[:-1] + (3,), dtype=complex)
    F[..., 0] = mode.eta * phase
    F[..., 1] = s * 1j * mode.eta * phase
    F[..., 2] = zeta_profile(mode, r[..., 0], r[..., 1], const) * phase
    return F


def ansatz_field(mode: HelicityMode, at, const: Constants = CODATA2018) -> np.ndarray:
    """Mode field ``F`` at an Event or at positions of shape (..., 3)."""
    r = _position(at)
    return _mode_profile(mode, r, np.exp(1j * mode.k * r[..., 2]), const)


def dispersion_axial(
    omega: float, Omega_z: float, m: MediumParams, helicity: int, const: Constants = CODATA2018
) -> float:
    """``k = n (omega +- Omega) / c`` for propagation along the rotation axis."""
    s = check_helicity(helicity)
    if not omega > 0:
        raise InvalidInputError("omega must be positive")
    _warn_fast(Omega_z, omega)
    return m.n * (omega + s * Omega_z) / const.c


def helicity_splitting(Omega_z: float, m: MediumParams, const: Constants = CODATA2018) -> float:
    """``k+ - k-`` along the axis, evaluated without cancellation: ``2 n Omega / c``."""
    return 2.0 * m.n * Omega_z / const.c


def dispersion_oblique(
    omega: float, Omega, n_hat, helicity: int, const: Constants = CODATA2018
) -> float:
    """First-order vacuum wavenumber for propagation along ``n_hat``.

    ``c k = omega +- n_hat . Omega`` with the wave direction held fixed at
    ``n_hat``.  Off the rotation axis this is the first-order (average
    frequency) result only.
    """
    s = check_helicity(helicity)
    n_hat = np.asarray(n_hat, dtype=float)
    if abs(np.linalg.norm(n_hat) - 1.0) > 1e-12:
        raise InvalidInputError("n_hat must be a unit vector")
    proj = float(n_hat @ np.asarray(Omega, dtype=float))
    _warn_fast(proj, omega)
    return (omega + s * proj) / const.c


class RotatingMedium:
    """Constitutive tensors of a medium comoving with a frame rotating about z.

    Callable on positions of shape (..., 3).  ``exact=False`` gives the
    first-order tensors, ``exact=True`` the all-orders closed form.
    """

    def __init__(self, Omega_z: float, medium: MediumParams = VACUUM, exact: bool = False,
                 const: Constants = CODATA2018):
        self.Omega_z = float(Omega_z)
        self.medium = medium
        self.exact = exact
        self.const = const

    def __call__(self, r) -> ConstitutiveTensors:
        if self.exact:
            return rotating_constitutive_exact(self.Omega_z, self.medium, r, self.const)
        return rotating_constitutive_linear((0.0, 0.0, self.Omega_z), self.medium, r, self.const)

    def __repr__(self):
        kind = "exact" if self.exact else "linear"
        return f"RotatingMedium(Omega_z={self.Omega_z!r}, {self.medium!r}, {kind})"


def _grid_points(grid: GridSpec) -> np.ndarray:
    return np.stack(grid.mesh(), axis=-1)


def _curl_residual_array(field, helicity, omega, ct_field, grid, carrier_k):
    r = _grid_points(grid)
    F = np.asarray(field(r), dtype=complex)
    R = curl(F, grid.spacing)
    if carrier_k:
        # F is the envelope of exp(i carrier_k z) F; the carrier is differentiated exactly
        R[..., 0] -= 1j * carrier_k * F[..., 1]
        R[..., 1] += 1j * carrier_k * F[..., 0]
    R -= helicity * omega * rs_constitutive(F, helicity, ct_field(r))
    return R


def curl_residual(
    field: Callable[[np.ndarray], np.ndarray],
    helicity: int,
    omega: float,
    ct_field: Callable[[np.ndarray], ConstitutiveTensors],
    grid: GridSpec,
    const: Constants = CODATA2018,
    carrier_k: float = 0.0,
    estimate_order: bool = True,
) -> ResidualReport:
    """Finite-difference residual ``curl F -+ omega Z(F)`` over ``grid``.

    ``field`` and ``ct_field`` are evaluated on an array of grid positions of
    shape (nx, ny, nz, 3).  With the first-order rotating medium this is::

        curl F -+ (omega n / c) F - (i omega n^2 / c^2) (Omega x r) x F

    When ``carrier_k`` is nonzero, ``field`` must return the slowly varying
    envelope ``f`` of ``F = exp(i carrier_k z) f``; the carrier's derivative is
    taken analytically, so only the envelope is finite-differenced.
    """
    s = check_helicity(helicity)
    if isinstance(ct_field, RotatingMedium):
        grid.check_inside_cylinder(ct_field.Omega_z, const)
    return two_grid_report(
        lambda g: _curl_residual_array(field, s, omega, ct_field, g, carrier_k),
        grid,
        estimate_order,
    )


def divergence_residual(
    Z: Callable[[np.ndarray], np.ndarray], grid: GridSpec, estimate_order: bool = True
) -> ResidualReport:
    """Finite-difference ``div Z`` norms over interior nodes of ``grid``."""
    return two_grid_report(
        lambda g: divergence(np.asarray(Z(_grid_points(g))), g.spacing), grid, estimate_order
    )


def mode_excitation(mode: HelicityMode, ct_field, const: Constants = CODATA2018):
    """Callable ``r -> Z`` for the RS excitation of ``mode`` in medium ``ct_field``."""

    def Z(r):
        return rs_constitutive(ansatz_field(mode, r, const), mode.helicity, ct_field(r))

    return Z


def default_grid(omega: float, m: MediumParams = VACUUM, const: Constants = CODATA2018,
                 wavelengths: float = 10.0, points: int = 17) -> GridSpec:
    """Cube of side ``wavelengths`` in-medium wavelengths centred on the axis."""
    lam = 2 * math.pi * const.c / (m.n * omega)
    return GridSpec.cube(wavelengths * lam, points)


def golden_section(f, a: float, b: float, xtol: float, max_iter: int = 500) -> float:
    """Minimize a unimodal ``f`` on ``[a, b]`` by golden-section search."""
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2


def dispersion_recover(
    omega: float,
    Omega_z: float,
    m: MediumParams,
    helicity: int,
    grid: GridSpec | None = None,
    const: Constants = CODATA2018,
    exact_medium: bool = False,
    rtol: float = 1e-12,
) -> float:
    """Recover ``k`` by minimizing the RMS curl residual of the mode ansatz.

    The search runs over ``k = n omega / c + dk`` with
    ``|dk| <= 4 n |Omega| / c`` (or ``1e-9 n omega / c`` when Omega is 0).
    The carrier ``exp(i n omega z / c)`` is differentiated analytically, so the
    grid only needs to resolve the envelope ``exp(i dk z)`` and the
    finite-difference phase error of the carrier does not bias the result.
    A minimizer on the window edge raises WindowError.

    The first-order ansatz leaves a residual of order ``Omega^2 r^2`` whose
    box average pulls the minimizer off the closed form by roughly
    ``(Omega/omega)^2 (box / lambda)^2`` relative, common to both helicities.
    That is negligible for laboratory and astronomical rotation rates but
    visible if Omega/omega approaches 1e-3.
    """
    s = check_helicity(helicity)
    if grid is None:
        grid = default_grid(omega, m, const)
    medium = RotatingMedium(Omega_z, m, exact=exact_medium, const=const)
    grid.check_inside_cylinder(Omega_z, const)
    k_c = m.n * omega / const.c
    half = m.n * (4 * abs(Omega_z) if Omega_z else 1e-9 * omega) / const.c
    mode = HelicityMode(s, omega, k_c, 1.0, m, Omega_z)

    def objective(dk):
        def envelope(pts):
            return _mode_profile(mode, pts, np.exp(1j * dk * pts[..., 2]), const)

        R = _curl_residual_array(envelope, s, omega, medium, grid, k_c)
        inner = R[1:-1, 1:-1, 1:-1]
        return float(np.sqrt(np.mean(np.sum(np.abs(inner) ** 2, axis=-1))))

    dk = golden_section(objective, -half, half, xtol=rtol * 2 * half)
    if abs(abs(dk) - half) <= 1e-3 * 2 * half:
        raise WindowError(
            f"residual minimum at the edge of the search window (dk = {dk:.6g}); "
            "check helicity / rotation sign conventions"
        )
    return k_c + dk

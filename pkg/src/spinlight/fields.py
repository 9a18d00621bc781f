"""Electromagnetic fields, definite-helicity plane waves and Riemann-Silberstein vectors.

Complex fields use the ``exp(-i omega t)`` convention; physical fields are
the real parts.  Positive helicity is the ``e_x + i e_y`` wave travelling
along +z, whose real electric vector turns in the positive sense about the
propagation direction.

With ``lambda`` from :func:`spinlight.optics.impedance_lambda`::

    F+- = lambda E +- i H        Z+- = D +- i lambda B

In vacuum ``F+`` carries only positive helicity and ``F-`` only negative, and
``curl F+- = +-(omega/c) F+-``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import CODATA2018, Constants
from .errors import InvalidInputError
from .geometry import Event
from .grid import GridSpec, ResidualReport, curl, two_grid_report
from .optics import ConstitutiveTensors


@dataclass(frozen=True, eq=False)
class FieldTriplets:
    """``E`` [V/m], ``B`` [T], ``D`` [C/m^2], ``H`` [A/m]; complex, shape (..., 3)."""

    E: np.ndarray
    B: np.ndarray
    D: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        for name in ("E", "B", "D", "H"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape[-1:] != (3,):
                raise InvalidInputError(f"{name} must have a trailing axis of length 3")
            if not np.all(np.isfinite(arr)):
                raise InvalidInputError(f"{name} has non-finite components")
            object.__setattr__(self, name, arr)

    @property
    def real(self) -> "FieldTriplets":
        return FieldTriplets(self.E.real, self.B.real, self.D.real, self.H.real)

    def field_tensor(self) -> np.ndarray:
        """Covariant ``F_{mu nu}`` with ``E_a = F_a0`` and ``B^1 = F_23`` etc."""
        E, B = self.E, self.B
        F = np.zeros(E.shape[:-1] + (4, 4), dtype=complex)
        F[..., 1:, 0] = E
        F[..., 0, 1:] = -E
        F[..., 2, 3], F[..., 3, 1], F[..., 1, 2] = B[..., 0], B[..., 1], B[..., 2]
        F[..., 3, 2], F[..., 1, 3], F[..., 2, 1] = -B[..., 0], -B[..., 1], -B[..., 2]
        return F

    def excitation_tensor(self) -> np.ndarray:
        """``H^{mu nu}`` with ``D^a = H^{0a}`` and ``H_1 = H^{23}`` etc."""
        D, H = self.D, self.H
        X = np.zeros(D.shape[:-1] + (4, 4), dtype=complex)
        X[..., 0, 1:] = D
        X[..., 1:, 0] = -D
        X[..., 2, 3], X[..., 3, 1], X[..., 1, 2] = H[..., 0], H[..., 1], H[..., 2]
        X[..., 3, 2], X[..., 1, 3], X[..., 2, 1] = -H[..., 0], -H[..., 1], -H[..., 2]
        return X


@dataclass(frozen=True, eq=False)
class RSVectors:
    F_plus: np.ndarray
    F_minus: np.ndarray
    Z_plus: np.ndarray
    Z_minus: np.ndarray

    def F(self, sign: int) -> np.ndarray:
        return self.F_plus if sign > 0 else self.F_minus

    def Z(self, sign: int) -> np.ndarray:
        return self.Z_plus if sign > 0 else self.Z_minus


def check_helicity(h) -> int:
    if h not in (1, -1):
        raise InvalidInputError(f"helicity must be +1 or -1, got {h!r}")
    return int(h)


def complete_triad(axis) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed orthonormal ``(e1, e2, axis)``.

    ``e1`` comes from Gram-Schmidt on the coordinate axis along which ``axis``
    has its smallest component (first such axis on ties), so ``e_z`` maps to
    ``(e_x, e_y, e_z)``.
    """
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    seed = np.zeros(3)
    seed[np.argmin(np.abs(a))] = 1.0
    e1 = seed - (seed @ a) * a
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(a, e1)
    return e1, e2, a


@dataclass(frozen=True, eq=False)
class PlaneWave:
    """Monochromatic vacuum plane wave of definite helicity."""

    omega0: float
    amplitude: complex = 1.0
    helicity: int = 1
    axis: np.ndarray = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if not self.omega0 > 0:
            raise InvalidInputError("omega0 must be positive")
        check_helicity(self.helicity)
        ax = np.asarray(self.axis, dtype=float).reshape(3)
        if abs(np.linalg.norm(ax) - 1.0) > 1e-12:
            raise InvalidInputError("axis must be a unit vector")
        object.__setattr__(self, "axis", ax)
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    def wave_vector(self, const: Constants = CODATA2018) -> np.ndarray:
        return (self.omega0 / const.c) * self.axis

    @property
    def helicity_vector(self) -> np.ndarray:
        return self.helicity * self.axis

    def polarization(self) -> np.ndarray:
        e1, e2, _ = complete_triad(self.axis)
        return e1 + 1j * self.helicity * e2


def _coords(at):
    """``(t, r)`` from an Event or from a tuple ``(t, r)`` with ``r`` of shape (..., 3)."""
    if isinstance(at, Event):
        return at.t, at.position
    t, r = at
    return np.asarray(t, dtype=float), np.asarray(r, dtype=float)


def plane_wave_fields(w: PlaneWave, at, const: Constants = CODATA2018) -> FieldTriplets:
    """Vacuum fields of ``w`` at an Event or at ``(t, r)`` arrays."""
    t, r = _coords(at)
    c = const.c
    phase = np.exp(-1j * w.omega0 * (t - (r @ w.axis) / c))
    pol = w.polarization()
    E = w.amplitude * np.multiply.outer(phase, pol)
    B = (-1j * w.helicity / c) * E
    return FieldTriplets(E, B, const.eps0 * E, B / const.mu0)


def rs_compose(f: FieldTriplets, lam: float) -> RSVectors:
    if not lam > 0:
        raise InvalidInputError(f"lambda must be positive, got {lam}")
    return RSVectors(
        lam * f.E + 1j * f.H,
        lam * f.E - 1j * f.H,
        f.D + 1j * lam * f.B,
        f.D - 1j * lam * f.B,
    )


def rs_decompose(rs: RSVectors, lam: float) -> FieldTriplets:
    if not lam > 0:
        raise InvalidInputError(f"lambda must be positive, got {lam}")
    return FieldTriplets(
        E=(rs.F_plus + rs.F_minus) / (2 * lam),
        B=(rs.Z_plus - rs.Z_minus) / (2j * lam),
        D=(rs.Z_plus + rs.Z_minus) / 2,
        H=(rs.F_plus - rs.F_minus) / 2j,
    )


def rs_constitutive(F, sign: int, ct: ConstitutiveTensors) -> np.ndarray:
    """``Z = xi F +- i G x F`` for helicity sign +-1, broadcasting over leading axes."""
    sign = check_helicity(sign)
    F = np.asarray(F, dtype=complex)
    xi = np.asarray(ct.xi)
    G = np.broadcast_to(np.asarray(ct.G), F.shape)
    return np.einsum("...ab,...b->...a", xi, F) + sign * 1j * np.cross(G, F)


def vacuum_curl_eigen_residual(
    w: PlaneWave, grid: GridSpec, const: Constants = CODATA2018, t: float = 0.0,
    estimate_order: bool = True,
) -> dict[str, ResidualReport]:
    """Finite-difference check of ``curl F+- = +-(omega0/c) F+-`` for a vacuum plane wave.

    Returns reports for both RS vectors keyed ``"plus"`` and ``"minus"``; the
    one opposite to the wave's helicity is identically zero.
    """
    lam = const.lambda0
    k0 = w.omega0 / const.c

    def residual(sign):
        def evaluate(g: GridSpec):
            X, Y, Z = g.mesh()
            r = np.stack([X, Y, Z], axis=-1)
            F = rs_compose(plane_wave_fields(w, (t, r), const), lam).F(sign)
            return curl(F, g.spacing) - sign * k0 * F

        return evaluate

    return {
        "plus": two_grid_report(residual(1), grid, estimate_order),
        "minus": two_grid_report(residual(-1), grid, estimate_order),
    }

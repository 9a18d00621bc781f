"""Stationary spacetimes in lapse/shift/spatial-metric form.

Coordinates are ``x^0 = t`` in seconds and Cartesian ``x, y, z`` in metres,
so the Minkowski metric is ``diag(-c**2, 1, 1, 1)`` and ``g_00`` carries a
factor ``c**2``.  Only Cartesian spatial coordinates are used; the rotation
between inertial and rotating axes has unit Jacobian determinant, so tensor
densities and tensors coincide numerically everywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import CODATA2018, DEFAULT_POLICY, Constants, NumericPolicy
from .errors import (
    InvalidInputError,
    OutOfRegionError,
    SuperluminalError,
    UnsupportedMetricError,
)


@dataclass(frozen=True)
class Event:
    """Spacetime point ``(t, x, y, z)``; also used for inertial ``(t0, x0, y0, z0)``."""

    t: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not np.all(np.isfinite([self.t, self.x, self.y, self.z])):
            raise InvalidInputError(f"non-finite event coordinates: {self}")

    @classmethod
    def at(cls, position, t: float = 0.0) -> "Event":
        x, y, z = np.asarray(position, dtype=float)
        return cls(float(t), float(x), float(y), float(z))

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z])


def _position(at) -> np.ndarray:
    """Spatial position of an Event, or an array-like of shape (..., 3) as is."""
    if isinstance(at, Event):
        return at.position
    return np.asarray(at, dtype=float)


@dataclass(frozen=True, eq=False)
class ADMForm:
    """Lapse ``V``, shift ``K`` and spatial metric as functions of an Event.

    ``ds^2 = -V^2 c^2 dt^2 + g_ab (dx^a - c K^a dt)(dx^b - c K^b dt)``.
    The shift is dimensionless (velocity in units of c).
    """

    lapse: Callable[[Event], float]
    shift: Callable[[Event], np.ndarray]
    spatial_metric: Callable[[Event], np.ndarray]

    @classmethod
    def constant(cls, lapse=1.0, shift=(0.0, 0.0, 0.0), spatial_metric=None) -> "ADMForm":
        V = float(lapse)
        K = np.array(shift, dtype=float)
        gs = np.eye(3) if spatial_metric is None else np.array(spatial_metric, dtype=float)
        return cls(lambda e: V, lambda e: K.copy(), lambda e: gs.copy())

    def evaluate(self, at: Event) -> tuple[float, np.ndarray, np.ndarray]:
        """Return ``(V, K, g_ab)`` at ``at`` after checking the ADM invariants."""
        V = float(self.lapse(at))
        K = np.asarray(self.shift(at), dtype=float).reshape(3)
        gs = np.asarray(self.spatial_metric(at), dtype=float).reshape(3, 3)
        if not V > 0:
            raise InvalidInputError(f"lapse must be positive, got {V}")
        if not np.array_equal(gs, gs.T):
            raise InvalidInputError("spatial metric is not symmetric")
        if np.any(np.linalg.eigvalsh(gs) <= 0):
            raise InvalidInputError("spatial metric is not positive definite")
        return V, K, gs


def minkowski_adm() -> ADMForm:
    return ADMForm.constant()


@dataclass(frozen=True, eq=False)
class MetricComponents:
    """Covariant metric ``g_{mu nu}`` in ``(t, x, y, z)``."""

    g: np.ndarray

    def __post_init__(self):
        g = np.array(self.g, dtype=float)
        if g.shape != (4, 4):
            raise InvalidInputError(f"metric must be 4x4, got shape {g.shape}")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @classmethod
    def minkowski(cls, const: Constants = CODATA2018) -> "MetricComponents":
        return cls(np.diag([-const.c**2, 1.0, 1.0, 1.0]))

    def validate(self, const: Constants = CODATA2018) -> "MetricComponents":
        """Check symmetry, Lorentzian signature and negative determinant."""
        g = self.g
        if not np.array_equal(g, g.T):
            raise InvalidInputError("metric is not symmetric")
        scale = np.diag([1.0 / const.c, 1.0, 1.0, 1.0])
        eig = np.linalg.eigvalsh(scale @ g @ scale)
        if not (eig[0] < 0 and np.all(eig[1:] > 0)):
            raise InvalidInputError(f"metric signature is not (-,+,+,+): {eig}")
        if not np.linalg.det(g) < 0:
            raise InvalidInputError("metric determinant is not negative")
        return self

    def inverse(self) -> np.ndarray:
        return np.linalg.inv(self.g)

    def det(self) -> float:
        return float(np.linalg.det(self.g))

    def inner(self, a, b) -> float:
        return float(np.asarray(a) @ self.g @ np.asarray(b))


def adm_to_metric(adm: ADMForm, at: Event, const: Constants = CODATA2018) -> MetricComponents:
    V, K, gs = adm.evaluate(at)
    c = const.c
    cK = c * K
    g = np.empty((4, 4))
    g[0, 0] = -(V**2) * c**2 + cK @ gs @ cK
    g[0, 1:] = g[1:, 0] = -gs @ cK
    g[1:, 1:] = gs
    return MetricComponents(g).validate(const)


def metric_to_adm(metric: MetricComponents, const: Constants = CODATA2018):
    """Invert :func:`adm_to_metric`: return ``(V, K, g_ab)`` for one point."""
    g = metric.g
    c = const.c
    gs = g[1:, 1:].copy()
    K = -np.linalg.solve(gs, g[0, 1:]) / c
    V2 = ((c * K) @ gs @ (c * K) - g[0, 0]) / c**2
    if not V2 > 0:
        raise InvalidInputError("metric has no real lapse")
    return float(np.sqrt(V2)), K, gs


def rotating_frame_adm(
    Omega, const: Constants = CODATA2018, policy: NumericPolicy = DEFAULT_POLICY
) -> ADMForm:
    """ADM data of Minkowski space seen from axes rotating with angular velocity ``Omega``.

    Unit lapse, flat spatial metric, shift ``K = -(Omega x r)/c``.  Evaluating
    the shift at ``|K| >= policy.admissible_fraction`` raises OutOfRegionError.
    """
    Om = np.array(Omega, dtype=float).reshape(3)
    limit = policy.admissible_fraction

    def shift(at):
        K = -np.cross(Om, _position(at)) / const.c
        if np.linalg.norm(K) >= limit:
            raise OutOfRegionError(
                f"|K| = {np.linalg.norm(K):.6g} at {at}: outside the light cylinder"
            )
        return K

    return ADMForm(lambda e: 1.0, shift, lambda e: np.eye(3))


def inertial_to_rotating(e: Event, Omega_z: float) -> Event:
    ph = Omega_z * e.t
    cs, sn = np.cos(ph), np.sin(ph)
    return Event(e.t, e.x * cs + e.y * sn, -e.x * sn + e.y * cs, e.z)


def rotating_to_inertial(e: Event, Omega_z: float) -> Event:
    ph = Omega_z * e.t
    cs, sn = np.cos(ph), np.sin(ph)
    return Event(e.t, e.x * cs - e.y * sn, e.x * sn + e.y * cs, e.z)


def rotation_jacobian(e: Event, Omega_z: float) -> np.ndarray:
    """``d(t0, x0, y0, z0)/d(t, x, y, z)`` at the rotating-frame event ``e``.

    Pulling back the inertial metric, ``J.T @ eta @ J`` is the rotating-frame
    metric.  The determinant is exactly one.
    """
    ph = Omega_z * e.t
    cs, sn = np.cos(ph), np.sin(ph)
    i = rotating_to_inertial(e, Omega_z)
    J = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [-Omega_z * i.y, cs, -sn, 0.0],
            [Omega_z * i.x, sn, cs, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    assert abs(np.linalg.det(J) - 1.0) < 1e-12
    return J


@dataclass(frozen=True, eq=False)
class Tetrad:
    """Four frame vectors stored as rows: ``vectors[alpha]`` is ``e_alpha^mu``."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.shape != (4, 4):
            raise InvalidInputError("tetrad must be 4x4")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    def __getitem__(self, alpha: int) -> np.ndarray:
        return self.vectors[alpha]

    def gram(self, metric: MetricComponents) -> np.ndarray:
        return self.vectors @ metric.g @ self.vectors.T

    def orthonormality_error(self, metric: MetricComponents, const: Constants = CODATA2018) -> float:
        """Largest deviation of the normalized Gram matrix from diag(-1, 1, 1, 1)."""
        s = np.array([1.0 / const.c, 1.0, 1.0, 1.0])
        n = self.gram(metric) * np.outer(s, s)
        return float(np.max(np.abs(n - np.diag([-1.0, 1.0, 1.0, 1.0]))))

    def is_orthonormal(
        self,
        metric: MetricComponents,
        const: Constants = CODATA2018,
        policy: NumericPolicy = DEFAULT_POLICY,
    ) -> bool:
        return self.orthonormality_error(metric, const) <= policy.orthonormal_rtol


def rotating_observer_tetrad(Omega_z: float, t: float) -> Tetrad:
    """Frame of the observer at the origin whose spatial axes rotate about z.

    Components are in inertial coordinates ``(t0, x0, y0, z0)``.
    """
    cs, sn = np.cos(Omega_z * t), np.sin(Omega_z * t)
    return Tetrad(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, cs, sn, 0.0],
            [0.0, -sn, cs, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def fermi_tetrad(adm: ADMForm, at: Event, const: Constants = CODATA2018) -> Tetrad:
    """Frame ``e_t = d_t + c K^a d_a``, ``e_a = d_a`` in rotating coordinates.

    Only defined for unit lapse and flat spatial metric.
    """
    V, K, gs = adm.evaluate(at)
    if V != 1.0 or not np.array_equal(gs, np.eye(3)):
        raise UnsupportedMetricError("fermi_tetrad needs V = 1 and a flat spatial metric")
    vec = np.eye(4)
    vec[0, 1:] = const.c * K
    return Tetrad(vec)


@dataclass(frozen=True, eq=False)
class FourVelocity:
    """``u^mu = gamma (1, v)`` with coordinate 3-velocity ``v`` in m/s."""

    gamma: float
    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=float).reshape(3)
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @classmethod
    def of(cls, adm: ADMForm, v, at: Event, const: Constants = CODATA2018) -> "FourVelocity":
        return cls(lorentz_factor(adm, v, at, const), v)

    @property
    def components(self) -> np.ndarray:
        return self.gamma * np.concatenate([[1.0], self.v])

    def norm_error(self, metric: MetricComponents, const: Constants = CODATA2018) -> float:
        u = self.components
        return abs(metric.inner(u, u) / -(const.c**2) - 1.0)


def lorentz_factor(adm: ADMForm, v, at: Event, const: Constants = CODATA2018) -> float:
    V, K, gs = adm.evaluate(at)
    c = const.c
    w = np.asarray(v, dtype=float) - c * K
    inv_g2 = V**2 - w @ gs @ w / c**2
    if not inv_g2 > 0:
        raise SuperluminalError(f"velocity {v} is not timelike here (gamma^-2 = {inv_g2:.6g})")
    return float(1.0 / np.sqrt(inv_g2))

"""Uniform Cartesian grids, finite-difference operators and residual reports.

Derivatives are second-order central differences at interior nodes and
second-order one-sided stencils on the faces (``numpy.gradient`` with
``edge_order=2``).  Residual norms are taken over interior nodes only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import CODATA2018, Constants
from .errors import InvalidGridError


@dataclass(frozen=True)
class GridSpec:
    """Uniform Cartesian box ``center +- half_extent`` with ``points`` nodes per axis."""

    center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    half_extent: tuple[float, float, float] = (1.0, 1.0, 1.0)
    points: tuple[int, int, int] = (17, 17, 17)

    def __post_init__(self):
        for name in ("center", "half_extent"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        pts = self.points
        if isinstance(pts, (int, np.integer)):
            pts = (pts,) * 3
        object.__setattr__(self, "points", tuple(int(p) for p in pts))
        if len(self.center) != 3 or len(self.half_extent) != 3 or len(self.points) != 3:
            raise InvalidGridError("grid needs three axes")
        if min(self.points) < 5:
            raise InvalidGridError(f"grid too coarse: {self.points} (need >= 5 per axis)")
        if not all(h > 0 for h in self.half_extent):
            raise InvalidGridError("grid half extents must be positive")

    @classmethod
    def cube(cls, side: float, points: int = 17, center=(0.0, 0.0, 0.0)) -> "GridSpec":
        return cls(center, (side / 2,) * 3, (points,) * 3)

    @property
    def spacing(self) -> np.ndarray:
        return 2 * np.asarray(self.half_extent) / (np.asarray(self.points) - 1)

    def axes(self) -> list[np.ndarray]:
        return [
            np.linspace(c - h, c + h, n)
            for c, h, n in zip(self.center, self.half_extent, self.points)
        ]

    def mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(np.meshgrid(*self.axes(), indexing="ij"))

    def refined(self) -> "GridSpec":
        """Same box, spacing halved."""
        return GridSpec(self.center, self.half_extent, tuple(2 * n - 1 for n in self.points))

    def coarsened(self) -> "GridSpec | None":
        """Same box, spacing doubled; None when that is impossible or too coarse."""
        if any(n % 2 == 0 or (n + 1) // 2 < 5 for n in self.points):
            return None
        return GridSpec(self.center, self.half_extent, tuple((n + 1) // 2 for n in self.points))

    def max_cylindrical_radius(self) -> float:
        cx, cy, _ = self.center
        hx, hy, _ = self.half_extent
        return float(np.hypot(abs(cx) + hx, abs(cy) + hy))

    def check_inside_cylinder(self, Omega: float, const: Constants = CODATA2018, fraction=0.1):
        if Omega != 0 and self.max_cylindrical_radius() >= fraction * const.c / abs(Omega):
            raise InvalidGridError(
                f"grid reaches rho = {self.max_cylindrical_radius():.3g} m, beyond "
                f"{fraction} c/Omega"
            )


@dataclass(frozen=True)
class ResidualReport:
    """Norms of a residual over interior grid nodes.

    ``l2_norm`` is the root-mean-square over interior nodes.  ``order_estimate``
    is ``log2`` of the ratio of max norms between the grid with twice the
    spacing and this grid (or this grid and the refined one when the grid
    cannot be coarsened); NaN when not requested.
    """

    max_norm: float
    l2_norm: float
    order_estimate: float = float("nan")


def curl(F: np.ndarray, spacing) -> np.ndarray:
    """Curl of a (nx, ny, nz, 3) field; central differences inside, one-sided 2nd order on faces."""
    hx, hy, hz = spacing
    d = [
        [np.gradient(F[..., comp], h, axis=ax, edge_order=2) for ax, h in enumerate((hx, hy, hz))]
        for comp in range(3)
    ]
    # d[component][axis]
    return np.stack(
        [d[2][1] - d[1][2], d[0][2] - d[2][0], d[1][0] - d[0][1]],
        axis=-1,
    )


def divergence(F: np.ndarray, spacing) -> np.ndarray:
    return sum(
        np.gradient(F[..., ax], h, axis=ax, edge_order=2) for ax, h in enumerate(spacing)
    )


def interior_norms(R: np.ndarray) -> tuple[float, float]:
    inner = R[1:-1, 1:-1, 1:-1]
    mag2 = np.sum(np.abs(inner) ** 2, axis=-1) if inner.ndim == 4 else np.abs(inner) ** 2
    return float(np.sqrt(mag2.max())), float(np.sqrt(mag2.mean()))


def two_grid_report(evaluate, grid: GridSpec, estimate_order: bool = True) -> ResidualReport:
    """Build a ResidualReport from ``evaluate(grid) -> residual array``."""
    mx, l2 = interior_norms(evaluate(grid))
    order = float("nan")
    if estimate_order:
        coarse = grid.coarsened()
        if coarse is not None:
            mx_c, _ = interior_norms(evaluate(coarse))
            order = _log2_ratio(mx_c, mx)
        else:
            mx_f, _ = interior_norms(evaluate(grid.refined()))
            order = _log2_ratio(mx, mx_f)
    return ResidualReport(mx, l2, order)


def _log2_ratio(a: float, b: float) -> float:
    if a == 0 and b == 0:
        return float("inf")
    if b == 0:
        return float("inf")
    return float(np.log2(a / b))

"""Physical constants and numerical tolerances shared by every module."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

#: Environment variable naming a JSON file with constant overrides.
CONSTANTS_ENV_VAR = "SPINLIGHT_CONSTANTS"


@dataclass(frozen=True)
class Constants:
    """SI constants (CODATA 2018 by default).

    ``eps0`` is derived from ``mu0`` and ``c`` so that ``eps0 * mu0 * c**2 == 1``
    holds to rounding; overriding ``c`` or ``mu0`` keeps the relation intact.
    """

    c: float = 299_792_458.0
    mu0: float = 1.25663706212e-6
    G: float = 6.67430e-11
    hbar: float = 1.054571817e-34
    e_charge: float = 1.602176634e-19

    @property
    def eps0(self) -> float:
        return 1.0 / (self.mu0 * self.c**2)

    @property
    def lambda0(self) -> float:
        """Inverse impedance of free space, sqrt(eps0/mu0) [1/ohm]."""
        return (self.eps0 / self.mu0) ** 0.5

    def joules_to_ev(self, energy: float) -> float:
        return energy / self.e_charge

    def replace(self, **changes: float) -> "Constants":
        return dataclasses.replace(self, **changes)


CODATA2018 = Constants()

#: Unit-free constants for scaled verification runs (c = mu0 = 1).
SCALED = Constants(c=1.0, mu0=1.0, G=1.0, hbar=1.0, e_charge=1.0)


def load_constants(path: str | os.PathLike | None = None) -> Constants:
    """Return CODATA 2018 constants, optionally overridden from a JSON file.

    When ``path`` is None the file named by ``$SPINLIGHT_CONSTANTS`` is used, if
    set.  The file maps field names (``c``, ``mu0``, ``G``, ``hbar``,
    ``e_charge``) to numbers; unknown keys raise ``ValueError``.
    """
    if path is None:
        path = os.environ.get(CONSTANTS_ENV_VAR)
    if not path:
        return CODATA2018
    overrides = json.loads(Path(path).read_text())
    known = {f.name for f in dataclasses.fields(Constants)}
    unknown = set(overrides) - known
    if unknown:
        raise ValueError(f"unknown constant(s) in {path}: {sorted(unknown)}")
    return CODATA2018.replace(**{k: float(v) for k, v in overrides.items()})


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerances used by invariant checks."""

    orthonormal_rtol: float = 1e-12
    roundtrip_atol: float = 1e-14
    symmetry_rtol: float = 0.0
    inverse_rtol: float = 1e-12
    # fraction of the light-cylinder radius c/Omega beyond which rotating
    # coordinates are rejected
    admissible_fraction: float = 0.999


DEFAULT_POLICY = NumericPolicy()

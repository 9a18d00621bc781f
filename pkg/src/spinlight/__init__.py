"""Photon helicity in rotating media and weak gravitomagnetic fields.

Submodules:

geometry
    Events, ADM metrics, rotating frames and tetrads.
optics
    Gordon optical metric and the constitutive tensors it induces.
fields
    Field triplets, helicity plane waves, Riemann-Silberstein vectors.
solver
    Helicity modes in a rotating medium, residuals, dispersion recovery.
kinematics
    Doppler shifts, spin-rotation energy, Sagnac phase, FFT frequency readout.
gem
    Exterior gravitoelectromagnetic fields and gravitational Faraday rotation.
cli
    The ``spinlight`` command.
"""

from .constants import CODATA2018, SCALED, Constants, load_constants
from .errors import (
    ConfigError,
    DomainError,
    InvalidInputError,
    NumericalError,
    SpinlightError,
)
from .fields import PlaneWave, plane_wave_fields, rs_compose, rs_decompose
from .gem import EARTH, GEMSource, faraday_rotation_axial, faraday_rotation_numeric, gem_fields
from .geometry import Event, rotating_frame_adm
from .grid import GridSpec
from .kinematics import RayState, measured_frequency, sagnac_phase
from .optics import VACUUM, MediumParams
from .solver import HelicityMode, dispersion_axial, dispersion_recover

__version__ = "0.1.0"

__all__ = [
    "CODATA2018", "SCALED", "Constants", "load_constants",
    "SpinlightError", "ConfigError", "InvalidInputError", "DomainError", "NumericalError",
    "Event", "rotating_frame_adm", "MediumParams", "VACUUM", "GridSpec",
    "PlaneWave", "plane_wave_fields", "rs_compose", "rs_decompose",
    "HelicityMode", "dispersion_axial", "dispersion_recover",
    "RayState", "sagnac_phase", "measured_frequency",
    "GEMSource", "EARTH", "gem_fields", "faraday_rotation_axial", "faraday_rotation_numeric",
]

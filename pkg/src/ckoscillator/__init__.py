"""Harmonic oscillator dynamics on the nine two-dimensional Cayley-Klein spaces."""

from .cktrig import ck_atan, ck_cos, ck_sin, ck_tan
from .conics import ConicKind, conic_from_AB, conic_from_orbit, physical_from_conic
from .dynamics import Chart, Oscillator, PhaseState, energy, fradkin, noether_momenta
from .errors import CKError
from .geometry import CKParams, SpaceKind, classify_space, params_from_name
from .integrator import IntegratorConfig, Trajectory, simulate
from .orbits import OrbitTag, classify, orbit_from_ej, orbit_radius, period

__all__ = [
    "CKError",
    "CKParams",
    "Chart",
    "ConicKind",
    "IntegratorConfig",
    "OrbitTag",
    "Oscillator",
    "PhaseState",
    "SpaceKind",
    "Trajectory",
    "ck_atan",
    "ck_cos",
    "ck_sin",
    "ck_tan",
    "classify",
    "classify_space",
    "conic_from_AB",
    "conic_from_orbit",
    "energy",
    "fradkin",
    "noether_momenta",
    "orbit_from_ej",
    "orbit_radius",
    "params_from_name",
    "period",
    "physical_from_conic",
    "simulate",
]

__version__ = "0.1.0"

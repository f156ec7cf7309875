"""Harmonic oscillator on a Cayley-Klein space.

The potential is ``V = omega0_sq/2 * T1(r)^2`` around the chart origin.  The
module provides equations of motion in the polar and (u, y) parallel charts,
the three Noether momenta (rescaled so they stay finite when kappa2 = 0),
the energy and the symmetric tensor of quadratic constants of motion
(Fradkin tensor).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .cktrig import ck_cos, ck_sin, check_label
from .errors import InfiniteWallError, SingularChartError
from .geometry import (
    CKParams,
    ParallelPointUY,
    PolarPoint,
    ambient_to_polar,
    ambient_to_uy,
    ambient_velocity_to_polar,
    ambient_velocity_to_uy,
    metric_parallel_uy,
    metric_polar,
    polar_to_ambient,
    polar_velocity_to_ambient,
    uy_to_ambient,
    uy_velocity_to_ambient,
)


@dataclass(frozen=True)
class Oscillator:
    omega0_sq: float

    def __post_init__(self):
        object.__setattr__(self, "omega0_sq", check_label(self.omega0_sq))

    @classmethod
    def from_omega0(cls, omega0: float) -> "Oscillator":
        return cls(float(omega0) ** 2)


class Chart(Enum):
    POLAR = "polar"
    PARALLEL_UY = "parallel_uy"


@dataclass(frozen=True)
class PhaseState:
    """Position (q1, q2) and velocity (v1, v2) in a chart.

    Polar: (r, phi, dr/dt, dphi/dt).  Parallel: (u, y, du/dt, dy/dt).
    """

    chart: Chart
    q1: float
    q2: float
    v1: float
    v2: float

    @classmethod
    def polar(cls, r, phi, vr, vphi) -> "PhaseState":
        return cls(Chart.POLAR, float(r), float(phi), float(vr), float(vphi))

    @classmethod
    def parallel(cls, u, y, vu, vy) -> "PhaseState":
        return cls(Chart.PARALLEL_UY, float(u), float(y), float(vu), float(vy))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return self.q1, self.q2, self.v1, self.v2


@dataclass(frozen=True)
class NoetherMomenta:
    p1: float
    p2: float
    j: float

    def unscaled(self, kappa2: float) -> tuple[float, float, float]:
        """Plain Noether charges (P1, P2, J); the last two vanish when kappa2 = 0."""
        return self.p1, kappa2 * self.p2, kappa2 * self.j


@dataclass(frozen=True)
class FradkinTensor:
    f11: float
    f12: float
    f22: float
    j_sq: float

    @property
    def det(self) -> float:
        return self.f11 * self.f22 - self.f12 * self.f12

    def det_residual(self, omega0_sq: float) -> float:
        return self.det - omega0_sq * self.j_sq


def _wall(kappa: float, where: float, name: str) -> InfiniteWallError:
    wall = math.pi / (2.0 * math.sqrt(kappa)) if kappa > 0 else None
    return InfiniteWallError(f"potential wall reached ({name})", location=wall, coordinate=where)


# ---------------------------------------------------------------- potential


def ho_potential(p: CKParams, osc: Oscillator, at: PolarPoint) -> float:
    c = ck_cos(p.kappa1, at.r)
    if abs(c) < 1e-14:
        raise _wall(p.kappa1, at.r, "r")
    t = ck_sin(p.kappa1, at.r) / c
    return 0.5 * osc.omega0_sq * t * t


def ho_potential_parallel(p: CKParams, osc: Oscillator, at: ParallelPointUY) -> float:
    k1, k = p.kappa1, p.kappa12
    c1 = ck_cos(k1, at.u)
    ck = ck_cos(k, at.y)
    if abs(c1) < 1e-14:
        raise _wall(k1, at.u, "u")
    if abs(ck) < 1e-14:
        raise _wall(k, at.y, "y")
    t1 = ck_sin(k1, at.u) / c1
    tk = ck_sin(k, at.y) / ck
    return 0.5 * osc.omega0_sq * (t1 * t1 / (ck * ck) + p.kappa2 * tk * tk)


def potential(p: CKParams, osc: Oscillator, s: PhaseState) -> float:
    if s.chart is Chart.POLAR:
        return ho_potential(p, osc, PolarPoint(s.q1, s.q2))
    return ho_potential_parallel(p, osc, ParallelPointUY(s.q1, s.q2))


# ---------------------------------------------------------------- equations of motion


def polar_accelerations(k1, k2, w2, r, phi, vr, vphi):
    """Raw-float polar right-hand side used by the integrator."""
    c1 = ck_cos(k1, r)
    s1 = ck_sin(k1, r)
    if abs(c1) < 1e-14:
        raise _wall(k1, r, "r")
    ar = k2 * s1 * c1 * vphi * vphi - w2 * s1 / (c1 * c1 * c1)
    if vphi == 0.0:
        aphi = 0.0
    elif s1 == 0.0:
        raise SingularChartError("polar chart singular at the origin with nonzero angular velocity")
    else:
        aphi = -2.0 * (c1 / s1) * vr * vphi
    return ar, aphi


def parallel_accelerations(k1, k2, w2, u, y, vu, vy):
    """Raw-float (u, y) right-hand side, Euler-Lagrange of the chart Lagrangian."""
    k = k1 * k2
    c1 = ck_cos(k1, u)
    s1 = ck_sin(k1, u)
    ck = ck_cos(k, y)
    sk = ck_sin(k, y)
    if abs(c1) < 1e-14:
        raise _wall(k1, u, "u")
    if abs(ck) < 1e-14:
        raise _wall(k, y, "y")
    tk = sk / ck
    t1 = s1 / c1
    c1sq = c1 * c1
    cksq = ck * ck
    au = 2.0 * k * tk * vy * vu - w2 * t1 / (c1sq * cksq * cksq)
    ay = -k1 * sk * ck * vu * vu - w2 * tk / (c1sq * cksq)
    return au, ay


def accelerations(p: CKParams, osc: Oscillator, s: PhaseState) -> tuple[float, float]:
    if s.chart is Chart.POLAR:
        return polar_accelerations(p.kappa1, p.kappa2, osc.omega0_sq, *s.as_tuple())
    return parallel_accelerations(p.kappa1, p.kappa2, osc.omega0_sq, *s.as_tuple())


# ---------------------------------------------------------------- conserved quantities


def noether_momenta(p: CKParams, s: PhaseState) -> NoetherMomenta:
    k1, k2 = p.kappa1, p.kappa2
    if s.chart is Chart.POLAR:
        r, phi, vr, vphi = s.as_tuple()
        c1, s1 = ck_cos(k1, r), ck_sin(k1, r)
        c2, s2 = ck_cos(k2, phi), ck_sin(k2, phi)
        return NoetherMomenta(
            p1=c2 * vr - k2 * c1 * s1 * s2 * vphi,
            p2=s2 * vr + c1 * s1 * c2 * vphi,
            j=s1 * s1 * vphi,
        )
    u, y, vu, vy = s.as_tuple()
    k = k1 * k2
    c1, s1 = ck_cos(k1, u), ck_sin(k1, u)
    ck, sk = ck_cos(k, y), ck_sin(k, y)
    return NoetherMomenta(
        p1=ck * ck * vu,
        p2=k1 * s1 * sk * ck * vu + c1 * vy,
        j=-c1 * sk * ck * vu + s1 * vy,
    )


def kinetic_energy(p: CKParams, m: NoetherMomenta) -> float:
    return 0.5 * (m.p1 ** 2 + p.kappa2 * m.p2 ** 2 + p.kappa12 * m.j ** 2)


def kinetic_energy_metric(p: CKParams, s: PhaseState) -> float:
    """Kinetic energy from the chart metric, 1/2 g(v, v)."""
    if s.chart is Chart.POLAR:
        g1, g2 = metric_polar(p, PolarPoint(s.q1, s.q2))
    else:
        g1, g2 = metric_parallel_uy(p, ParallelPointUY(s.q1, s.q2))
    return 0.5 * (g1 * s.v1 ** 2 + g2 * s.v2 ** 2)


def energy(p: CKParams, osc: Oscillator, s: PhaseState) -> float:
    return kinetic_energy(p, noether_momenta(p, s)) + potential(p, osc, s)


def _potential_pieces(p: CKParams, osc: Oscillator, s: PhaseState):
    w2 = osc.omega0_sq
    k1, k2 = p.kappa1, p.kappa2
    if s.chart is Chart.POLAR:
        c1 = ck_cos(k1, s.q1)
        if abs(c1) < 1e-14:
            raise _wall(k1, s.q1, "r")
        t = ck_sin(k1, s.q1) / c1
        c2, s2 = ck_cos(k2, s.q2), ck_sin(k2, s.q2)
        tt = w2 * t * t
        return tt * c2 * c2, tt * c2 * s2, tt * s2 * s2
    k = k1 * k2
    c1 = ck_cos(k1, s.q1)
    ck = ck_cos(k, s.q2)
    if abs(c1) < 1e-14:
        raise _wall(k1, s.q1, "u")
    if abs(ck) < 1e-14:
        raise _wall(k, s.q2, "y")
    t1 = ck_sin(k1, s.q1) / c1
    tk_over_c1 = ck_sin(k, s.q2) / ck / c1
    return w2 * t1 * t1, w2 * t1 * tk_over_c1, w2 * tk_over_c1 * tk_over_c1


def fradkin(p: CKParams, osc: Oscillator, s: PhaseState) -> FradkinTensor:
    m = noether_momenta(p, s)
    w11, w12, w22 = _potential_pieces(p, osc, s)
    return FradkinTensor(
        f11=m.p1 * m.p1 + w11,
        f12=m.p1 * m.p2 + w12,
        f22=m.p2 * m.p2 + w22,
        j_sq=m.j * m.j,
    )


# ---------------------------------------------------------------- chart changes


def convert_state(p: CKParams, s: PhaseState, chart: Chart) -> PhaseState:
    """Re-express a phase state in another chart (through the ambient model)."""
    if s.chart is chart:
        return s
    if s.chart is Chart.POLAR:
        src = PolarPoint(s.q1, s.q2)
        x = polar_to_ambient(p, src)
        xdot = polar_velocity_to_ambient(p, src, s.v1, s.v2)
        dst = ambient_to_uy(p, x)
        vu, vy = ambient_velocity_to_uy(p, dst, xdot)
        return PhaseState.parallel(dst.u, dst.y, vu, vy)
    src = ParallelPointUY(s.q1, s.q2)
    x = uy_to_ambient(p, src)
    xdot = uy_velocity_to_ambient(p, src, s.v1, s.v2)
    dst = ambient_to_polar(p, x)
    vr, vphi = ambient_velocity_to_polar(p, dst, xdot)
    return PhaseState.polar(dst.r, dst.phi, vr, vphi)


def state_position(p: CKParams, s: PhaseState) -> tuple[float, float, float]:
    """Ambient coordinates of the state's position."""
    if s.chart is Chart.POLAR:
        return polar_to_ambient(p, PolarPoint(s.q1, s.q2))
    return uy_to_ambient(p, ParallelPointUY(s.q1, s.q2))

"""Closed-form orbits, regime classification and the period law.

With ``E_P = E - kappa1 kappa2 J^2 / 2`` the orbit of the oscillator reads

    1 / T1(r)^2 = D - G * C2(2 (phi - phi0))
                = C2(phi - phi0)^2 / A^2 + S2(phi - phi0)^2 / B^2

where ``D = E_P / (kappa2 J^2)``, ``G = sqrt(E_P^2 - kappa2 w^2 J^2) / (kappa2 J^2)``,
``1/A^2 = D - G`` and ``1/B^2 = kappa2 (D + G)``.  The substitution
variables used to integrate the radial equation are not exposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .cktrig import ck_atan, ck_atan2, ck_cos, ck_sin, ck_tan
from .dynamics import Chart, Oscillator, PhaseState, convert_state, energy, fradkin, noether_momenta
from .errors import (
    DegenerateError,
    NoRealOrbitError,
    OpenOrbitError,
    OutsideBranchError,
    PoleError,
    SingularChartError,
    UnsupportedError,
)
from .geometry import CKParams

REL_TOL = 1e-12


def _close(a: float, b: float, rel: float = REL_TOL) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


# ---------------------------------------------------------------- thresholds


def min_energy(p: CKParams, osc: Oscillator, j: float) -> float:
    """Energy of the circular orbit with angular momentum j (kappa2 > 0)."""
    omega = math.sqrt(osc.omega0_sq)
    return math.sqrt(p.kappa2) * omega * abs(j) + 0.5 * p.kappa12 * j * j


def plateau_energy(p: CKParams, osc: Oscillator) -> float | None:
    """Asymptotic value of the potential at infinity (kappa1 < 0 only)."""
    if p.kappa1 >= 0:
        return None
    return osc.omega0_sq / (-2.0 * p.kappa1)


def critical_momentum(p: CKParams, osc: Oscillator) -> float | None:
    """Angular momentum above which the effective potential has no minimum."""
    if p.kappa1 >= 0 or p.kappa2 <= 0:
        return None
    return math.sqrt(osc.omega0_sq) / (math.sqrt(p.kappa2) * -p.kappa1)


def circular_radius(p: CKParams, osc: Oscillator, j: float) -> float | None:
    """Radius of the minimum of the effective potential, if it exists."""
    if j == 0:
        return 0.0
    t_sq = math.sqrt(p.kappa2) * abs(j) / math.sqrt(osc.omega0_sq)
    t = math.sqrt(t_sq)
    if p.kappa1 < 0 and t * math.sqrt(-p.kappa1) >= 1.0:
        return None
    return ck_atan(p.kappa1, t)


def effective_potential(p: CKParams, osc: Oscillator, j: float, r: float) -> float:
    s = ck_sin(p.kappa1, r)
    if s == 0.0:
        raise PoleError("centrifugal barrier singular at the origin", location=0.0)
    t = ck_tan(p.kappa1, r)
    return 0.5 * osc.omega0_sq * t * t + p.kappa2 * j * j / (2.0 * s * s)


def effective_potential_tan_form(p: CKParams, osc: Oscillator, j: float, r: float) -> float:
    """Same value written with the tangent only (plus the constant shift)."""
    t = ck_tan(p.kappa1, r)
    if t == 0.0:
        raise PoleError("centrifugal barrier singular at the origin", location=0.0)
    return 0.5 * osc.omega0_sq * t * t + p.kappa2 * j * j / (2.0 * t * t) + 0.5 * p.kappa12 * j * j


# ---------------------------------------------------------------- classification


class OrbitTag(Enum):
    CIRCLE = "Circle"
    ELLIPSE = "Ellipse"
    EQUIDISTANT = "Equidistant"
    ULTRAELLIPSE = "Ultraellipse"
    STRAIGHT_LINE = "StraightLine"
    FORBIDDEN = "Forbidden"
    LORENTZIAN_UNCLASSIFIED = "LorentzianUnclassified"


@dataclass(frozen=True)
class OrbitClass:
    tag: OrbitTag
    e_min: float | None
    e_inf: float | None
    j_inf: float | None
    r_m: float | None = None
    turning: tuple[float, float] | None = None
    bounded: bool | None = None

    def to_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "bounded": self.bounded,
            "E_min": self.e_min,
            "E_inf": self.e_inf,
            "J_inf": self.j_inf,
            "r_m": self.r_m,
            "r_min": None if self.turning is None else self.turning[0],
            "r_max": None if self.turning is None else self.turning[1],
        }


def _turning_points(p: CKParams, osc: Oscillator, e: float, j: float):
    """(r_min, r_max) of the radial oscillation; r_max may be inf."""
    if j == 0:
        # straight line through the origin: T1(r_max)^2 = 2E / w^2
        t_sq = 2.0 * e / osc.omega0_sq
        t = math.sqrt(t_sq)
        if p.kappa1 < 0 and t * math.sqrt(-p.kappa1) >= 1.0:
            return 0.0, math.inf
        return 0.0, ck_atan(p.kappa1, t)
    sol = orbit_from_ej(p, osc, e, j)
    inv_near = sol.d + sol.g
    inv_far = sol.d - sol.g
    r_min = ck_atan(p.kappa1, 1.0 / math.sqrt(inv_near))
    t_far = math.inf if inv_far <= 0 else 1.0 / math.sqrt(inv_far)
    if p.kappa1 < 0 and t_far * math.sqrt(-p.kappa1) >= 1.0:
        return r_min, math.inf
    return r_min, ck_atan(p.kappa1, t_far)


def classify(p: CKParams, osc: Oscillator, e: float, j: float) -> OrbitClass:
    if p.kappa2 == 0:
        raise UnsupportedError("orbit classification needs kappa2 != 0")
    if osc.omega0_sq <= 0:
        raise UnsupportedError("orbit classification needs omega0_sq > 0", omega0_sq=osc.omega0_sq)
    if p.kappa2 < 0:
        return OrbitClass(OrbitTag.LORENTZIAN_UNCLASSIFIED, None, None, None)

    e_inf = plateau_energy(p, osc)
    j_inf = critical_momentum(p, osc)
    e_min = min_energy(p, osc, j)
    r_m = circular_radius(p, osc, j)
    below_crit = j_inf is None or (abs(j) < j_inf and not _close(abs(j), j_inf))

    def make(tag, bounded, turning=None):
        return OrbitClass(tag, e_min if below_crit else None, e_inf, j_inf, r_m, turning, bounded)

    if j == 0:
        if e < 0:
            return make(OrbitTag.FORBIDDEN, None)
        if e == 0:
            return make(OrbitTag.CIRCLE, True, (0.0, 0.0))
        turning = _turning_points(p, osc, e, j)
        return make(OrbitTag.STRAIGHT_LINE, math.isfinite(turning[1]), turning)

    if not below_crit:
        # no minimum: the effective potential decreases monotonically to e_inf
        if e > e_inf and not _close(e, e_inf):
            return make(OrbitTag.ULTRAELLIPSE, False, _turning_points(p, osc, e, j))
        return make(OrbitTag.FORBIDDEN, None)

    if _close(e, e_min):
        return make(OrbitTag.CIRCLE, True, (r_m, r_m))
    if e < e_min:
        return make(OrbitTag.FORBIDDEN, None)
    if e_inf is None or (e < e_inf and not _close(e, e_inf)):
        return make(OrbitTag.ELLIPSE, True, _turning_points(p, osc, e, j))
    if _close(e, e_inf):
        return make(OrbitTag.EQUIDISTANT, False, _turning_points(p, osc, e_inf, j))
    return make(OrbitTag.ULTRAELLIPSE, False, _turning_points(p, osc, e, j))


# ---------------------------------------------------------------- closed-form orbit


@dataclass(frozen=True)
class OrbitSolution:
    """Orbit constants; everything else is derived.

    ``j`` is the signed angular momentum when known (orbits built from D and
    G alone only determine its square).
    """

    params: CKParams
    omega0_sq: float
    d: float
    g: float
    phi0: float = 0.0
    j: float | None = None

    @property
    def inv_a_sq(self) -> float:
        return self.d - self.g

    @property
    def inv_b_sq(self) -> float:
        return self.params.kappa2 * (self.d + self.g)

    @property
    def a_sq(self) -> float:
        return math.inf if self.inv_a_sq == 0 else 1.0 / self.inv_a_sq

    @property
    def b_sq(self) -> float:
        return 1.0 / self.inv_b_sq

    @property
    def j_sq(self) -> float:
        if self.j is not None:
            return self.j * self.j
        return self.omega0_sq / (self.inv_a_sq * self.inv_b_sq)

    @property
    def e_p(self) -> float:
        return self.d * self.params.kappa2 * self.j_sq

    @property
    def energy(self) -> float:
        return self.e_p + 0.5 * self.params.kappa12 * self.j_sq

    @property
    def e1(self) -> float:
        return 0.5 * self.omega0_sq * self.a_sq

    @property
    def e2(self) -> float:
        return 0.5 * self.omega0_sq * self.b_sq

    def to_dict(self) -> dict:
        return {
            "kappa1": self.params.kappa1,
            "kappa2": self.params.kappa2,
            "omega0_sq": self.omega0_sq,
            "E": self.energy,
            "J": self.j,
            "D": self.d,
            "G": self.g,
            "phi0": self.phi0,
            "A_sq": self.a_sq,
            "B_sq": self.b_sq,
            "E_P": self.e_p,
            "E1": self.e1,
            "E2": self.e2,
        }


def orbit_from_dg(p: CKParams, osc: Oscillator, d: float, g: float, phi0: float = 0.0) -> OrbitSolution:
    if p.kappa2 == 0:
        raise DegenerateError("closed-form orbit needs kappa2 != 0")
    return OrbitSolution(p, osc.omega0_sq, float(d), float(g), float(phi0))


def orbit_from_ej(p: CKParams, osc: Oscillator, e: float, j: float, phi0: float = 0.0) -> OrbitSolution:
    if j == 0:
        raise DegenerateError("closed-form orbit needs nonzero angular momentum (straight line)")
    if p.kappa2 == 0:
        raise DegenerateError("closed-form orbit divides by kappa2 J^2; kappa2 = 0 is degenerate")
    k2 = p.kappa2
    w2 = osc.omega0_sq
    e_p = e - 0.5 * p.kappa12 * j * j
    scale = k2 * j * j
    if k2 > 0 and w2 > 0:
        root = math.sqrt(k2 * w2) * abs(j)
        if _close(e, min_energy(p, osc, j)):
            disc = 0.0
        else:
            disc = (e_p - root) * (e_p + root)
    else:
        disc = e_p * e_p - k2 * w2 * j * j
    if disc < 0:
        raise NoRealOrbitError(
            "energy below the minimum for this angular momentum", E=e, J=j, discriminant=disc
        )
    return OrbitSolution(p, w2, e_p / scale, math.sqrt(disc) / scale, float(phi0), float(j))


def orbit_rhs(p: CKParams, sol: OrbitSolution, phi: float) -> float:
    """Right-hand side 1/T1(r)^2 of the orbit equation at angle phi."""
    delta = phi - sol.phi0
    c2, s2 = ck_cos(p.kappa2, delta), ck_sin(p.kappa2, delta)
    return sol.inv_a_sq * c2 * c2 + sol.inv_b_sq * s2 * s2


def orbit_radius(p: CKParams, sol: OrbitSolution, phi: float) -> float:
    """Radius of the orbit at angle phi; math.inf where it leaves the space."""
    rhs = orbit_rhs(p, sol, phi)
    if not rhs > 0:
        raise OutsideBranchError("orbit has no point in this direction", phi=phi, rhs=rhs)
    t = 1.0 / math.sqrt(rhs)
    if p.kappa1 < 0 and t * math.sqrt(-p.kappa1) >= 1.0:
        return math.inf
    return ck_atan(p.kappa1, t)


def orbit_from_state(p: CKParams, osc: Oscillator, s: PhaseState) -> OrbitSolution:
    """Closed-form orbit through a phase state, with phi0 fixed by the state."""
    if s.chart is not Chart.POLAR:
        s = convert_state(p, s, Chart.POLAR)
    e = energy(p, osc, s)
    j = noether_momenta(p, s).j
    sol = orbit_from_ej(p, osc, e, j)
    if sol.g == 0:
        return sol
    k1, k2 = p.kappa1, p.kappa2
    r, phi, vr, vphi = s.as_tuple()
    t = ck_tan(k1, r)
    c1 = ck_cos(k1, r)
    chi = 1.0 / (t * t)
    cos2 = (sol.d - chi) / sol.g
    if k2 > 0:
        cos2 = min(1.0, max(-1.0, cos2))
    else:
        cos2 = max(1.0, cos2)
    sin2_abs = math.sqrt(max(0.0, (1.0 - cos2 * cos2) / k2))
    # d chi / d phi = 2 kappa2 G S2(2 delta), and d chi/dt = -2 rdot / (T^3 C^2)
    dchi_dphi = (-2.0 * vr / (t ** 3 * c1 * c1)) / vphi
    sin2 = math.copysign(sin2_abs, dchi_dphi * k2 * sol.g)
    two_delta = ck_atan2(k2, sin2, cos2)
    return OrbitSolution(p, osc.omega0_sq, sol.d, sol.g, phi - 0.5 * two_delta, j)


def state_on_orbit(p: CKParams, sol: OrbitSolution, phi: float) -> PhaseState:
    """Polar phase state on the closed-form orbit at angle phi."""
    if sol.j is None:
        raise DegenerateError("state reconstruction needs the signed angular momentum")
    k1, k2 = p.kappa1, p.kappa2
    r = orbit_radius(p, sol, phi)
    if not math.isfinite(r):
        raise OutsideBranchError("orbit point at infinity", phi=phi)
    s1, c1 = ck_sin(k1, r), ck_cos(k1, r)
    if s1 == 0:
        raise SingularChartError("orbit passes through the origin")
    vphi = sol.j / (s1 * s1)
    rhs = orbit_rhs(p, sol, phi)
    two_delta = 2.0 * (phi - sol.phi0)
    drhs = 2.0 * k2 * sol.g * ck_sin(k2, two_delta)
    dt_dphi = -0.5 * rhs ** -1.5 * drhs
    vr = c1 * c1 * dt_dphi * vphi
    return PhaseState.polar(r, phi, vr, vphi)


# ---------------------------------------------------------------- residual checks


def binet_residual(
    p: CKParams,
    osc: Oscillator,
    j: float,
    radius_fn: Callable[[float], float],
    phi: float,
    h: float = 1e-4,
) -> float:
    """|u'' + kappa2 u - w^2 / (J^2 u^3)| with u = 1/T1(r(phi))."""

    def upsilon(angle):
        return 1.0 / ck_tan(p.kappa1, radius_fn(angle))

    u_m, u_0, u_p = upsilon(phi - h), upsilon(phi), upsilon(phi + h)
    second = (u_p - 2.0 * u_0 + u_m) / (h * h)
    return abs(second + p.kappa2 * u_0 - osc.omega0_sq / (j * j * u_0 ** 3))


def fradkin_orbit_residual(p: CKParams, osc: Oscillator, s: PhaseState) -> float:
    """Residual of the quadratic orbit relation built from the Fradkin tensor.

    In (u, y) coordinates every orbit satisfies
    F22 T1(u)^2 - 2 F12 T1(u) X + F11 X^2 = J^2 with X = Tk(y)/C1(u).
    """
    if s.chart is not Chart.PARALLEL_UY:
        s = convert_state(p, s, Chart.PARALLEL_UY)
    f = fradkin(p, osc, s)
    k1, k = p.kappa1, p.kappa12
    t1 = ck_tan(k1, s.q1)
    x = ck_tan(k, s.q2) / ck_cos(k1, s.q1)
    return f.f22 * t1 * t1 - 2.0 * f.f12 * t1 * x + f.f11 * x * x - f.j_sq


# ---------------------------------------------------------------- period


def period(p: CKParams, osc: Oscillator, e: float) -> float:
    """Orbital period, which depends on the energy only."""
    if osc.omega0_sq <= 0:
        raise UnsupportedError("period needs omega0_sq > 0", omega0_sq=osc.omega0_sq)
    if p.kappa2 <= 0:
        raise UnsupportedError("period law stated for kappa2 > 0 only", kappa2=p.kappa2)
    radicand = 1.0 + 2.0 * p.kappa1 * e / osc.omega0_sq
    if radicand <= 0 or _close(radicand, 0.0):
        raise OpenOrbitError("orbit is not closed at this energy; the period is infinite", E=e, radicand=radicand)
    return 2.0 * math.pi / math.sqrt(osc.omega0_sq) / math.sqrt(radicand)

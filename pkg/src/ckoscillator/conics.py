"""Oscillator orbits seen as conics.

The orbit constants A and B of a Riemannian orbit are tangents of the
geometric semiaxes: T1(a) = A for the major axis and Tk(b) = B for the minor
one (label kappa1 kappa2).  On the hyperbolic plane the major tangent is
bounded by 1/sqrt(-kappa1); at that bound the orbit is an equidistant curve,
and beyond it an ultraellipse whose "semiaxis" a~ satisfies
1 / (-kappa1 T1(a~)) = A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .cktrig import ck_atan, ck_atan2, ck_cos, ck_sin, ck_tan
from .dynamics import Oscillator
from .errors import DomainError, EmptyCurveError, UnsupportedError
from .geometry import CKParams
from .orbits import REL_TOL, OrbitSolution, _close


class ConicKind(Enum):
    CIRCLE = "Circle"
    ELLIPSE = "Ellipse"
    ULTRAELLIPSE = "Ultraellipse"
    EQUIDISTANT = "Equidistant"
    LINE = "Line"


@dataclass(frozen=True)
class Semiaxis:
    a: float


@dataclass(frozen=True)
class UltraSemiaxis:
    a_tilde: float


@dataclass(frozen=True)
class Infinite:
    pass


@dataclass(frozen=True)
class ConicGeometry:
    kind: ConicKind
    major: Semiaxis | UltraSemiaxis | Infinite
    b: float

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "a": None, "a_tilde": None, "b": self.b}
        if isinstance(self.major, Semiaxis):
            out["a"] = self.major.a
        elif isinstance(self.major, UltraSemiaxis):
            out["a_tilde"] = self.major.a_tilde
        else:
            out["a"] = math.inf
        return out


@dataclass(frozen=True)
class PhysicalConstants:
    e1: float
    e2: float
    j: float
    e: float


def _require_riemannian(p: CKParams) -> None:
    if p.kappa2 <= 0:
        raise UnsupportedError("conic identification is implemented for kappa2 > 0 only", kappa2=p.kappa2)


def conic_from_AB(p: CKParams, a_sq: float, b_sq: float) -> ConicGeometry:
    _require_riemannian(p)
    if not b_sq > 0:
        raise DomainError("B^2 must be positive", b_sq=b_sq)
    if not a_sq >= p.kappa2 * b_sq and not _close(a_sq, p.kappa2 * b_sq):
        raise DomainError("axis convention violated: need A^2 >= kappa2 B^2", a_sq=a_sq, b_sq=b_sq)
    k1, k = p.kappa1, p.kappa12
    big_b = math.sqrt(b_sq)
    if k < 0 and big_b * math.sqrt(-k) >= 1.0:
        raise EmptyCurveError("no real curve: B exceeds the bound of its tangent", b_sq=b_sq)
    b = ck_atan(k, big_b)
    if math.isinf(a_sq):
        return ConicGeometry(ConicKind.LINE, Infinite(), b)
    big_a = math.sqrt(a_sq)
    circle = _close(a_sq, p.kappa2 * b_sq)
    if k1 >= 0:
        kind = ConicKind.CIRCLE if circle else ConicKind.ELLIPSE
        return ConicGeometry(kind, Semiaxis(ck_atan(k1, big_a)), b)
    bound = 1.0 / math.sqrt(-k1)
    if _close(big_a, bound):
        return ConicGeometry(ConicKind.EQUIDISTANT, Infinite(), b)
    if big_a < bound:
        kind = ConicKind.CIRCLE if circle else ConicKind.ELLIPSE
        return ConicGeometry(kind, Semiaxis(ck_atan(k1, big_a)), b)
    return ConicGeometry(ConicKind.ULTRAELLIPSE, UltraSemiaxis(ck_atan(k1, 1.0 / (-k1 * big_a))), b)


def conic_from_orbit(sol: OrbitSolution) -> ConicGeometry:
    return conic_from_AB(sol.params, sol.a_sq, sol.b_sq)


def major_tangent(p: CKParams, c: ConicGeometry) -> float:
    """The orbit constant A belonging to the conic's major axis."""
    if isinstance(c.major, Semiaxis):
        return ck_tan(p.kappa1, c.major.a)
    if isinstance(c.major, UltraSemiaxis):
        t = ck_tan(p.kappa1, c.major.a_tilde)
        return math.inf if t == 0 else 1.0 / (-p.kappa1 * t)
    if c.kind is ConicKind.EQUIDISTANT:
        return 1.0 / math.sqrt(-p.kappa1)
    return math.inf


def physical_from_conic(p: CKParams, osc: Oscillator, c: ConicGeometry) -> PhysicalConstants:
    """Partial energies, angular momentum and energy of the orbit on a conic.

    A straight line through the origin (b = 0) has zero angular momentum; a
    line at distance b > 0 is the infinite-energy limit of the ultraellipse
    family and returns infinities.
    """
    _require_riemannian(p)
    w2 = osc.omega0_sq
    omega = math.sqrt(w2)
    big_b = ck_tan(p.kappa12, c.b)
    e2 = 0.5 * w2 * big_b * big_b
    if c.kind is ConicKind.LINE:
        if isinstance(c.major, Semiaxis) and c.b == 0:
            t = ck_tan(p.kappa1, c.major.a)
            e1 = 0.5 * w2 * t * t
            return PhysicalConstants(e1, 0.0, 0.0, e1)
        if c.b == 0:
            return PhysicalConstants(math.inf, 0.0, 0.0, math.inf)
        return PhysicalConstants(math.inf, e2, math.inf, math.inf)
    if c.kind is ConicKind.EQUIDISTANT:
        big_a = 1.0 / math.sqrt(-p.kappa1)
        e1 = 0.5 * w2 * big_a * big_a
        j = omega * big_b * big_a
        return PhysicalConstants(e1, e2, j, w2 / (-2.0 * p.kappa1))
    big_a = major_tangent(p, c)
    e1 = 0.5 * w2 * big_a * big_a
    j = omega * big_a * big_b
    e = e1 + p.kappa2 * e2 + 0.5 * p.kappa12 * j * j
    return PhysicalConstants(e1, e2, j, e)


def line_through_origin(p: CKParams, amplitude: float) -> ConicGeometry:
    """Radial oscillation of zero angular momentum with turning radius ``amplitude``."""
    return ConicGeometry(ConicKind.LINE, Semiaxis(float(amplitude)), 0.0)


def equidistant_at(p: CKParams, b: float) -> ConicGeometry:
    """Equidistant orbit at distance b from its base geodesic (kappa1 < 0)."""
    _require_riemannian(p)
    if p.kappa1 >= 0:
        raise UnsupportedError("equidistant orbits exist only for kappa1 < 0", kappa1=p.kappa1)
    return ConicGeometry(ConicKind.EQUIDISTANT, Infinite(), float(b))


def circle_at(p: CKParams, r_m: float) -> ConicGeometry:
    """Circular orbit of radius r_m."""
    _require_riemannian(p)
    big_a = ck_tan(p.kappa1, r_m)
    b = ck_atan(p.kappa12, big_a / math.sqrt(p.kappa2))
    return ConicGeometry(ConicKind.CIRCLE, Semiaxis(float(r_m)), b)


def focal_half_distance(p: CKParams, c: ConicGeometry) -> float:
    """Half the distance between the foci of an ellipse (kappa2 = 1 normalisation).

    Uses C1(f) = C1(a)/C1(b) and S1(f)^2 = (S1(a)^2 - S1(b)^2)/C1(b)^2, the
    curved analogue of f^2 = a^2 - b^2.
    """
    if c.kind not in (ConicKind.ELLIPSE, ConicKind.CIRCLE) or p.kappa2 != 1:
        raise UnsupportedError("focal elements are provided for ellipses with kappa2 = 1 only")
    k1 = p.kappa1
    a = c.major.a
    ca, sa = ck_cos(k1, a), ck_sin(k1, a)
    cb, sb = ck_cos(k1, c.b), ck_sin(k1, c.b)
    sf = math.sqrt(max(0.0, sa * sa - sb * sb)) / abs(cb)
    return ck_atan2(k1, sf, ca / cb)


__all__ = [
    "REL_TOL",
    "ConicGeometry",
    "ConicKind",
    "Infinite",
    "PhysicalConstants",
    "Semiaxis",
    "UltraSemiaxis",
    "circle_at",
    "conic_from_AB",
    "conic_from_orbit",
    "equidistant_at",
    "focal_half_distance",
    "line_through_origin",
    "major_tangent",
    "physical_from_conic",
]

"""Cayley-Klein spaces, their charts and Killing vector fields.

A space is fixed by a curvature ``kappa1`` and a signature parameter
``kappa2``.  Internally every point is also represented in the ambient
linear model

    x0^2 + kappa1 x1^2 + kappa1 kappa2 x2^2 = 1,

which gives closed-form conversions between the three charts:

    polar      (r, phi):  (C1(r),            S1(r) C2(phi),  S1(r) S2(phi))
    parallel   (u, y):    (C1(u) Ck(y),      S1(u) Ck(y),    Sk(y))
    parallel   (x, v):    (C1(x) Ck(v),      S1(x),          C1(x) Sk(v))

with ``C1``/``S1`` labelled by kappa1, ``C2``/``S2`` by kappa2 and
``Ck``/``Sk`` by kappa1*kappa2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .cktrig import ck_asin, ck_atan2, ck_cos, ck_sin, ck_tan, check_label
from .errors import (
    DomainError,
    OutOfChartError,
    OutOfRangeError,
    PoleError,
    SingularChartError,
    UndefinedAngleError,
    UnknownSpaceError,
)


@dataclass(frozen=True)
class CKParams:
    kappa1: float
    kappa2: float

    def __post_init__(self):
        object.__setattr__(self, "kappa1", check_label(self.kappa1))
        object.__setattr__(self, "kappa2", check_label(self.kappa2))

    @property
    def kappa12(self) -> float:
        """Label of the y (and v) coordinate."""
        return self.kappa1 * self.kappa2


class SpaceKind(Enum):
    SPHERE = "Sphere"
    EUCLIDEAN = "Euclidean"
    HYPERBOLIC = "Hyperbolic"
    OSCILLATING_NH = "Oscillating Newton-Hooke"
    GALILEAN = "Galilean"
    EXPANDING_NH = "Expanding Newton-Hooke"
    ANTI_DE_SITTER = "Anti-de Sitter"
    MINKOWSKIAN = "Minkowskian"
    DE_SITTER = "De Sitter"


def _sign(value: float) -> int:
    return (value > 0) - (value < 0)


_KIND_TABLE = {
    (1, 1): SpaceKind.SPHERE,
    (0, 1): SpaceKind.EUCLIDEAN,
    (-1, 1): SpaceKind.HYPERBOLIC,
    (1, 0): SpaceKind.OSCILLATING_NH,
    (0, 0): SpaceKind.GALILEAN,
    (-1, 0): SpaceKind.EXPANDING_NH,
    (1, -1): SpaceKind.ANTI_DE_SITTER,
    (0, -1): SpaceKind.MINKOWSKIAN,
    (-1, -1): SpaceKind.DE_SITTER,
}

# Short names accepted on the command line, mapped to the standard labels.
SPACE_NAMES = {
    "S2": (1.0, 1.0),
    "E2": (0.0, 1.0),
    "H2": (-1.0, 1.0),
    "ANH": (1.0, 0.0),
    "G": (0.0, 0.0),
    "NH": (-1.0, 0.0),
    "ADS": (1.0, -1.0),
    "M": (0.0, -1.0),
    "DS": (-1.0, -1.0),
}


def classify_space(p: CKParams) -> SpaceKind:
    return _KIND_TABLE[(_sign(p.kappa1), _sign(p.kappa2))]


def params_from_name(name: str) -> CKParams:
    key = name.strip().upper()
    for suffix in ("1+1", "^1+1", "^2"):
        if key.endswith(suffix) and key[: -len(suffix)] in SPACE_NAMES:
            key = key[: -len(suffix)]
            break
    if key not in SPACE_NAMES:
        valid = ", ".join(["S2", "E2", "H2", "ANH", "G", "NH", "AdS", "M", "dS"])
        raise UnknownSpaceError(f"unknown space {name!r}; valid names: {valid}", name=name)
    return CKParams(*SPACE_NAMES[key])


@dataclass(frozen=True)
class PolarPoint:
    r: float
    phi: float


@dataclass(frozen=True)
class ParallelPointUY:
    u: float
    y: float


@dataclass(frozen=True)
class ParallelPointXV:
    x: float
    v: float


def angle_period(p: CKParams) -> float | None:
    """Period of the polar angle, or None when kappa2 <= 0."""
    if p.kappa2 > 0:
        return 2.0 * math.pi / math.sqrt(p.kappa2)
    return None


def polar_points_equal(p: CKParams, a: PolarPoint, b: PolarPoint, tol: float = 1e-12) -> bool:
    if abs(a.r - b.r) > tol:
        return False
    period = angle_period(p)
    dphi = a.phi - b.phi
    if period is not None:
        dphi = math.remainder(dphi, period)
    return abs(dphi) <= tol or abs(a.r) <= tol


# ---------------------------------------------------------------- metrics


def metric_polar(p: CKParams, at: PolarPoint) -> tuple[float, float]:
    return 1.0, p.kappa2 * ck_sin(p.kappa1, at.r) ** 2


def metric_parallel_uy(p: CKParams, at: ParallelPointUY) -> tuple[float, float]:
    return ck_cos(p.kappa12, at.y) ** 2, p.kappa2


def metric_parallel_xv(p: CKParams, at: ParallelPointXV) -> tuple[float, float]:
    return 1.0, p.kappa2 * ck_cos(p.kappa1, at.x) ** 2


# ---------------------------------------------------------------- ambient model


def polar_to_ambient(p: CKParams, pt: PolarPoint) -> tuple[float, float, float]:
    s1 = ck_sin(p.kappa1, pt.r)
    return ck_cos(p.kappa1, pt.r), s1 * ck_cos(p.kappa2, pt.phi), s1 * ck_sin(p.kappa2, pt.phi)


def uy_to_ambient(p: CKParams, pt: ParallelPointUY) -> tuple[float, float, float]:
    cy = ck_cos(p.kappa12, pt.y)
    return ck_cos(p.kappa1, pt.u) * cy, ck_sin(p.kappa1, pt.u) * cy, ck_sin(p.kappa12, pt.y)


def xv_to_ambient(p: CKParams, pt: ParallelPointXV) -> tuple[float, float, float]:
    cx = ck_cos(p.kappa1, pt.x)
    return cx * ck_cos(p.kappa12, pt.v), ck_sin(p.kappa1, pt.x), cx * ck_sin(p.kappa12, pt.v)


def ambient_to_polar(p: CKParams, x: tuple[float, float, float]) -> PolarPoint:
    x0, x1, x2 = x
    k1, k2 = p.kappa1, p.kappa2
    radicand = x1 * x1 + k2 * x2 * x2
    if k2 <= 0 and (x1 <= 0 or radicand <= 0):
        raise OutOfChartError(
            "point lies outside the time-like region covered by polar coordinates",
            x0=x0, x1=x1, x2=x2,
        )
    s = math.sqrt(max(radicand, 0.0))
    if s == 0.0:
        raise UndefinedAngleError("polar angle undefined at the origin (or its antipode)")
    try:
        r = ck_atan2(k1, s, x0)
        phi = ck_atan2(k2, x2 / s, x1 / s)
    except OutOfRangeError as exc:
        raise OutOfChartError("point not covered by polar coordinates", **exc.details) from exc
    return PolarPoint(r, phi)


def ambient_to_uy(p: CKParams, x: tuple[float, float, float]) -> ParallelPointUY:
    x0, x1, x2 = x
    k = p.kappa12
    if k > 0 and math.sqrt(k) * abs(x2) >= 1.0:
        raise OutOfChartError("point outside the (u, y) parallel chart", x2=x2, kappa12=k)
    try:
        y = ck_asin(k, x2)
        u = ck_atan2(p.kappa1, x1, x0)
    except OutOfRangeError as exc:
        raise OutOfChartError("point outside the (u, y) parallel chart", **exc.details) from exc
    return ParallelPointUY(u, y)


def ambient_to_xv(p: CKParams, x: tuple[float, float, float]) -> ParallelPointXV:
    x0, x1, x2 = x
    k1 = p.kappa1
    if k1 > 0 and math.sqrt(k1) * abs(x1) >= 1.0:
        raise OutOfChartError("point outside the (x, v) parallel chart", x1=x1, kappa1=k1)
    try:
        xc = ck_asin(k1, x1)
        v = ck_atan2(p.kappa12, x2, x0)
    except OutOfRangeError as exc:
        raise OutOfChartError("point outside the (x, v) parallel chart", **exc.details) from exc
    return ParallelPointXV(xc, v)


def _check_polar_domain(p: CKParams, pt: PolarPoint) -> None:
    if not (math.isfinite(pt.r) and math.isfinite(pt.phi)):
        raise DomainError("polar coordinates must be finite", r=pt.r, phi=pt.phi)
    if pt.r < 0:
        raise OutOfChartError("polar radius must be nonnegative", r=pt.r)
    if p.kappa1 > 0 and pt.r >= math.pi / math.sqrt(p.kappa1):
        raise OutOfChartError("polar radius beyond the antipode", r=pt.r)


# ---------------------------------------------------------------- conversions


def polar_to_parallel_uy(p: CKParams, pt: PolarPoint) -> ParallelPointUY:
    _check_polar_domain(p, pt)
    return ambient_to_uy(p, polar_to_ambient(p, pt))


def parallel_uy_to_polar(p: CKParams, pt: ParallelPointUY) -> PolarPoint:
    return ambient_to_polar(p, uy_to_ambient(p, pt))


def polar_to_parallel_xv(p: CKParams, pt: PolarPoint) -> ParallelPointXV:
    _check_polar_domain(p, pt)
    return ambient_to_xv(p, polar_to_ambient(p, pt))


def parallel_xv_to_polar(p: CKParams, pt: ParallelPointXV) -> PolarPoint:
    return ambient_to_polar(p, xv_to_ambient(p, pt))


def parallel_uy_to_xv(p: CKParams, pt: ParallelPointUY) -> ParallelPointXV:
    return ambient_to_xv(p, uy_to_ambient(p, pt))


def parallel_xv_to_uy(p: CKParams, pt: ParallelPointXV) -> ParallelPointUY:
    return ambient_to_uy(p, xv_to_ambient(p, pt))


# ---------------------------------------------------------------- velocities


def polar_velocity_to_ambient(p, pt: PolarPoint, vr: float, vphi: float):
    k1, k2 = p.kappa1, p.kappa2
    c1, s1 = ck_cos(k1, pt.r), ck_sin(k1, pt.r)
    c2, s2 = ck_cos(k2, pt.phi), ck_sin(k2, pt.phi)
    return (
        -k1 * s1 * vr,
        c1 * c2 * vr - k2 * s1 * s2 * vphi,
        c1 * s2 * vr + s1 * c2 * vphi,
    )


def uy_velocity_to_ambient(p, pt: ParallelPointUY, vu: float, vy: float):
    k1, k = p.kappa1, p.kappa12
    c1, s1 = ck_cos(k1, pt.u), ck_sin(k1, pt.u)
    ck, sk = ck_cos(k, pt.y), ck_sin(k, pt.y)
    return (
        -k1 * s1 * ck * vu - k * c1 * sk * vy,
        c1 * ck * vu - k * s1 * sk * vy,
        ck * vy,
    )


def ambient_velocity_to_polar(p, pt: PolarPoint, xdot):
    k1, k2 = p.kappa1, p.kappa2
    c1, s1 = ck_cos(k1, pt.r), ck_sin(k1, pt.r)
    c2, s2 = ck_cos(k2, pt.phi), ck_sin(k2, pt.phi)
    d0, d1, d2 = xdot
    vr = c1 * (c2 * d1 + k2 * s2 * d2) - s1 * d0
    if s1 == 0.0:
        raise SingularChartError("angular velocity undefined at the polar origin")
    vphi = (c2 * d2 - s2 * d1) / s1
    return vr, vphi


def ambient_velocity_to_uy(p, pt: ParallelPointUY, xdot):
    k1, k = p.kappa1, p.kappa12
    c1, s1 = ck_cos(k1, pt.u), ck_sin(k1, pt.u)
    ck = ck_cos(k, pt.y)
    if ck == 0.0:
        raise SingularChartError("parallel chart singular where Ck(y) vanishes")
    d0, d1, d2 = xdot
    return (c1 * d1 - s1 * d0) / ck, d2 / ck


# ---------------------------------------------------------------- Killing fields


@dataclass(frozen=True)
class KillingFields:
    """Components of the three Killing fields in the chart's coordinate basis."""

    p1: tuple[float, float]
    p2: tuple[float, float]
    j: tuple[float, float]


def killing_fields_polar(p: CKParams, at: PolarPoint) -> KillingFields:
    k1, k2 = p.kappa1, p.kappa2
    if ck_sin(k1, at.r) == 0.0:
        raise SingularChartError("polar Killing fields singular at the origin", r=at.r)
    try:
        t1 = ck_tan(k1, at.r)
    except PoleError:
        t1 = math.inf
    c2, s2 = ck_cos(k2, at.phi), ck_sin(k2, at.phi)
    return KillingFields(
        p1=(c2, -s2 / t1),
        p2=(k2 * s2, c2 / t1),
        j=(0.0, 1.0),
    )


def killing_fields_parallel(p: CKParams, at: ParallelPointUY) -> KillingFields:
    k1, k2, k = p.kappa1, p.kappa2, p.kappa12
    c1, s1 = ck_cos(k1, at.u), ck_sin(k1, at.u)
    tk = ck_tan(k, at.y)
    return KillingFields(
        p1=(1.0, 0.0),
        p2=(k * s1 * tk, c1),
        j=(-k2 * c1 * tk, s1),
    )

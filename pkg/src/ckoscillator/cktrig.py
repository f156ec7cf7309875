"""Labelled trigonometric functions.

For a real label ``kappa`` the cosine, sine and tangent interpolate between
the circular functions (kappa > 0), the parabolic ones (1, x, x at kappa = 0)
and the hyperbolic functions (kappa < 0):

    C(x) = cos(sqrt(k) x)          1      cosh(sqrt(-k) x)
    S(x) = sin(sqrt(k) x)/sqrt(k)  x      sinh(sqrt(-k) x)/sqrt(-k)

and they satisfy C^2 + kappa S^2 = 1.  Labels are plain floats; the branch is
picked by sign at call time.  When ``|kappa| x^2`` is tiny a Taylor series in
``kappa x^2`` replaces the closed forms, so results are continuous across
kappa = 0 in floating point.
"""

from __future__ import annotations

import math

from .errors import DomainError, OutOfRangeError, PoleError

SERIES_THRESHOLD = 1e-8


def check_label(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa):
        raise DomainError("label must be finite", kappa=kappa)
    return kappa


def _check_arg(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite", **{name: x})
    return x


def ck_cos(kappa: float, x: float) -> float:
    kappa = check_label(kappa)
    x = _check_arg(x)
    z = kappa * x * x
    if abs(z) < SERIES_THRESHOLD:
        return 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0
    if kappa > 0:
        return math.cos(math.sqrt(kappa) * x)
    return math.cosh(math.sqrt(-kappa) * x)


def ck_sin(kappa: float, x: float) -> float:
    kappa = check_label(kappa)
    x = _check_arg(x)
    z = kappa * x * x
    if abs(z) < SERIES_THRESHOLD:
        return x * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0)
    if kappa > 0:
        s = math.sqrt(kappa)
        return math.sin(s * x) / s
    s = math.sqrt(-kappa)
    return math.sinh(s * x) / s


def ck_cos_sin(kappa: float, x: float) -> tuple[float, float]:
    """Both C and S in one call (the integrator needs the pair often)."""
    return ck_cos(kappa, x), ck_sin(kappa, x)


def ck_tan(kappa: float, x: float) -> float:
    c = ck_cos(kappa, x)
    s = ck_sin(kappa, x)
    if kappa > 0 and abs(c) < 1e-14:
        half_period = math.pi / math.sqrt(kappa)
        pole = (math.floor(x / half_period) + 0.5) * half_period
        raise PoleError("tangent is singular at this argument", location=pole, kappa=kappa, x=x)
    return s / c


def pole_location(kappa: float) -> float | None:
    """First positive zero of C, or None when C never vanishes."""
    kappa = check_label(kappa)
    if kappa <= 0:
        return None
    return math.pi / (2.0 * math.sqrt(kappa))


def ck_atan(kappa: float, t: float) -> float:
    """Principal inverse of ck_tan.

    For kappa < 0 the tangent is bounded by 1/sqrt(-kappa); arguments at or
    beyond that bound raise OutOfRangeError.
    """
    kappa = check_label(kappa)
    t = _check_arg(t, "t")
    z = kappa * t * t
    if abs(z) < SERIES_THRESHOLD:
        return t * (1.0 - z / 3.0 + z * z / 5.0 - z * z * z / 7.0)
    if kappa > 0:
        s = math.sqrt(kappa)
        return math.atan(s * t) / s
    s = math.sqrt(-kappa)
    if abs(s * t) >= 1.0:
        raise OutOfRangeError(
            "tangent value beyond the bound 1/sqrt(-kappa)", kappa=kappa, t=t, bound=1.0 / s
        )
    return math.atanh(s * t) / s


def ck_asin(kappa: float, s_val: float) -> float:
    """Inverse of ck_sin on its principal branch."""
    kappa = check_label(kappa)
    s_val = _check_arg(s_val, "s")
    z = kappa * s_val * s_val
    if abs(z) < SERIES_THRESHOLD:
        return s_val * (1.0 + z / 6.0 + 3.0 * z * z / 40.0 + 5.0 * z * z * z / 112.0)
    if kappa > 0:
        root = math.sqrt(kappa)
        arg = root * s_val
        if abs(arg) > 1.0:
            if abs(arg) - 1.0 > 1e-12:
                raise OutOfRangeError("sine value beyond 1/sqrt(kappa)", kappa=kappa, s=s_val)
            arg = math.copysign(1.0, arg)
        return math.asin(arg) / root
    root = math.sqrt(-kappa)
    return math.asinh(root * s_val) / root


def ck_atan2(kappa: float, s_val: float, c_val: float) -> float:
    """Angle x with (C(x), S(x)) proportional to (c_val, s_val).

    For kappa > 0 the full circle is resolved by the signs, as with atan2.
    For kappa <= 0 only c_val > 0 describes a real point; for kappa < 0 also
    |sqrt(-kappa) s_val| < c_val is needed.
    """
    kappa = check_label(kappa)
    s_val = _check_arg(s_val, "s")
    c_val = _check_arg(c_val, "c")
    if kappa > 0:
        root = math.sqrt(kappa)
        if c_val > 0 and abs(kappa * (s_val / c_val) ** 2) < SERIES_THRESHOLD:
            return ck_atan(kappa, s_val / c_val)
        return math.atan2(root * s_val, c_val) / root
    if c_val <= 0:
        raise OutOfRangeError("no real angle with nonpositive cosine", kappa=kappa, s=s_val, c=c_val)
    return ck_atan(kappa, s_val / c_val)

"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` and an optional
``details`` mapping; the CLI serializes both into its error JSON.
"""

from __future__ import annotations


class CKError(ValueError):
    code = "ck_error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {
            "type": type(self).__name__,
            "code": self.code,
            "message": str(self),
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(value):
    if isinstance(value, float) and value != value:
        return "nan"
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)


class DomainError(CKError):
    code = "domain"


class PoleError(CKError):
    """A labelled tangent (or a quantity built from it) hit its pole."""

    code = "pole"

    def __init__(self, message: str, location: float | None = None, **details):
        super().__init__(message, location=location, **details)
        self.location = location


class InfiniteWallError(PoleError):
    code = "infinite_wall"


class OutOfRangeError(DomainError):
    code = "out_of_range"


class ChartError(CKError):
    code = "chart"


class OutOfChartError(ChartError):
    code = "out_of_chart"


class SingularChartError(ChartError):
    code = "singular_chart"


class UndefinedAngleError(ChartError):
    code = "undefined_angle"


class NoRealOrbitError(CKError):
    code = "no_real_orbit"


class DegenerateError(CKError):
    code = "degenerate"


class UnsupportedError(CKError):
    code = "unsupported"


class OutsideBranchError(CKError):
    code = "outside_branch"


class OpenOrbitError(CKError):
    code = "open_orbit"


class NotPeriodicError(CKError):
    code = "not_periodic"


class StiffnessError(CKError):
    code = "stiffness"


class EmptyCurveError(CKError):
    code = "empty_curve"


class UnknownSpaceError(CKError):
    code = "unknown_space"

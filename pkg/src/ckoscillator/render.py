"""Planar projections and SVG/CSV figure output.

Projections map a polar point (r, phi) to drawing coordinates:

    Planar        S1(r) (C2(phi), s S2(phi))
    Beltrami      T1(r) (C2(phi), s S2(phi))        geodesics -> chords
    PoincareDisk  tanh(sqrt(-k1) r / 2) (cos, sin)   conformal, unit disk
    Orthographic  sqrt(k1) S1(r) (cos, sin)          upper hemisphere

with s = sqrt(|kappa2|) (s = 1 for kappa2 = 0), so Lorentzian pictures use
(cosh, sinh) and the isotropes are the +-45 degree lines.  Points outside a
projection's domain come back as ``None`` (the clip marker) and break the
polyline when drawn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .cktrig import ck_cos, ck_sin, ck_tan
from .dynamics import Oscillator
from .errors import CKError, DomainError, UnsupportedError
from .geometry import CKParams, PolarPoint
from .orbits import effective_potential, orbit_from_dg, orbit_radius

Point2 = tuple[float, float] | None


class ProjectionKind(Enum):
    BELTRAMI = "Beltrami"
    POINCARE_DISK = "PoincareDisk"
    ORTHOGRAPHIC = "Orthographic"
    PLANAR = "Planar"


@dataclass(frozen=True)
class Projection:
    kind: ProjectionKind
    scale: float = 1.0

    def check(self, p: CKParams) -> None:
        k1 = p.kappa1
        if self.kind is ProjectionKind.POINCARE_DISK and not k1 < 0:
            raise UnsupportedError("Poincare disk needs kappa1 < 0", kappa1=k1)
        if self.kind is ProjectionKind.ORTHOGRAPHIC and not k1 > 0:
            raise UnsupportedError("orthographic view needs kappa1 > 0", kappa1=k1)
        if self.kind is ProjectionKind.PLANAR and k1 != 0:
            raise UnsupportedError("planar view needs kappa1 = 0", kappa1=k1)


def default_projection(p: CKParams) -> Projection:
    if p.kappa2 < 0:
        return Projection(ProjectionKind.BELTRAMI)
    if p.kappa1 == 0:
        return Projection(ProjectionKind.PLANAR)
    if p.kappa1 > 0:
        return Projection(ProjectionKind.ORTHOGRAPHIC)
    return Projection(ProjectionKind.POINCARE_DISK)


def _direction(p: CKParams, phi: float, euclidean: bool) -> tuple[float, float]:
    k2 = p.kappa2
    if euclidean:
        root = math.sqrt(k2) if k2 > 0 else 1.0
        return math.cos(root * phi), math.sin(root * phi)
    factor = math.sqrt(abs(k2)) if k2 != 0 else 1.0
    return ck_cos(k2, phi), factor * ck_sin(k2, phi)


def project(p: CKParams, proj: Projection, pt: PolarPoint) -> Point2:
    proj.check(p)
    k1 = p.kappa1
    r, phi = pt.r, pt.phi
    if math.isnan(r) or math.isnan(phi):
        return None
    kind = proj.kind
    if kind is ProjectionKind.POINCARE_DISK:
        if not math.isfinite(r):
            return None
        rho = math.tanh(math.sqrt(-k1) * r / 2.0)
        dx, dy = _direction(p, phi, euclidean=True)
    elif kind is ProjectionKind.ORTHOGRAPHIC:
        if r > math.pi / (2.0 * math.sqrt(k1)):
            return None
        rho = math.sqrt(k1) * ck_sin(k1, r)
        dx, dy = _direction(p, phi, euclidean=True)
    elif kind is ProjectionKind.BELTRAMI:
        if k1 > 0 and r >= math.pi / (2.0 * math.sqrt(k1)):
            return None
        if not math.isfinite(r):
            if k1 >= 0:
                return None
            rho = 1.0 / math.sqrt(-k1)
        else:
            rho = ck_tan(k1, r)
        dx, dy = _direction(p, phi, euclidean=False)
    else:
        if not math.isfinite(r):
            return None
        rho = ck_sin(k1, r)
        dx, dy = _direction(p, phi, euclidean=False)
    return proj.scale * rho * dx, proj.scale * rho * dy


# ---------------------------------------------------------------- figure output


@dataclass
class Curve:
    label: str
    params: Sequence[float]
    points: Sequence[Point2]
    stroke_width: float = 1.5
    dashed: bool = False


@dataclass
class FigureStyle:
    width: int = 480
    height: int = 480
    viewbox: tuple[float, float, float, float] | None = None  # xmin, xmax, ymin, ymax
    title: str = ""
    disk: bool = False
    axes: bool = True
    palette: tuple[str, ...] = field(
        default_factory=lambda: (
            "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
        )
    )

    @classmethod
    def from_mapping(cls, style: dict | None) -> "FigureStyle":
        style = dict(style or {})
        unknown = set(style) - set(cls.__dataclass_fields__)
        if unknown:
            raise DomainError("unknown style keys", keys=",".join(sorted(unknown)))
        return cls(**style)


@dataclass(frozen=True)
class Figure:
    svg: str
    csv: str


def _fmt(x: float) -> str:
    text = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _csv_num(x: float) -> str:
    return repr(float(x))


def _auto_viewbox(curves: Sequence[Curve]) -> tuple[float, float, float, float]:
    xs = [pt[0] for c in curves for pt in c.points if pt is not None]
    ys = [pt[1] for c in curves for pt in c.points if pt is not None]
    if not xs:
        return -1.0, 1.0, -1.0, 1.0
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    padx = 0.05 * (xmax - xmin or 1.0)
    pady = 0.05 * (ymax - ymin or 1.0)
    return xmin - padx, xmax + padx, ymin - pady, ymax + pady


def _segments(points: Sequence[Point2]):
    run = []
    for pt in points:
        if pt is None or not (math.isfinite(pt[0]) and math.isfinite(pt[1])):
            if len(run) > 1:
                yield run
            run = []
        else:
            run.append(pt)
    if len(run) > 1:
        yield run


def emit_figure(curves: Sequence[Curve], style: dict | FigureStyle | None = None) -> Figure:
    """Render labelled polylines as a standalone SVG plus a CSV of the samples."""
    if not curves:
        raise DomainError("a figure needs at least one curve")
    st = style if isinstance(style, FigureStyle) else FigureStyle.from_mapping(style)
    xmin, xmax, ymin, ymax = st.viewbox or _auto_viewbox(curves)
    sx = st.width / (xmax - xmin)
    sy = st.height / (ymax - ymin)

    def to_px(x, y):
        return _fmt((x - xmin) * sx), _fmt((ymax - y) * sy)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{st.width}" '
        f'height="{st.height}" viewBox="0 0 {st.width} {st.height}">',
    ]
    if st.title:
        lines.append(f"<title>{_escape(st.title)}</title>")
    lines.append(f'<rect x="0" y="0" width="{st.width}" height="{st.height}" fill="white"/>')
    if st.axes:
        if xmin < 0 < xmax:
            x0, _ = to_px(0.0, 0.0)
            lines.append(f'<line x1="{x0}" y1="0" x2="{x0}" y2="{st.height}" stroke="#cccccc" stroke-width="0.5"/>')
        if ymin < 0 < ymax:
            _, y0 = to_px(0.0, 0.0)
            lines.append(f'<line x1="0" y1="{y0}" x2="{st.width}" y2="{y0}" stroke="#cccccc" stroke-width="0.5"/>')
    if st.disk:
        cx, cy = to_px(0.0, 0.0)
        lines.append(
            f'<ellipse cx="{cx}" cy="{cy}" rx="{_fmt(sx)}" ry="{_fmt(sy)}" '
            'fill="none" stroke="black" stroke-width="1"/>'
        )
    for i, curve in enumerate(curves):
        color = st.palette[i % len(st.palette)]
        dash = ' stroke-dasharray="4 3"' if curve.dashed else ""
        lines.append(f'<g id="curve-{i}" data-label="{_escape(curve.label)}">')
        for run in _segments(curve.points):
            coords = " ".join(",".join(to_px(x, y)) for x, y in run)
            lines.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="{_fmt(curve.stroke_width)}"{dash} '
                f'points="{coords}"/>'
            )
        lines.append("</g>")
    lines.append("</svg>")
    svg = "\n".join(lines) + "\n"

    rows = ["curve_label,t_or_phi,X,Y"]
    for curve in curves:
        label = _csv_label(curve.label)
        for t, pt in zip(curve.params, curve.points):
            if pt is None:
                rows.append(f"{label},{_csv_num(t)},,")
            else:
                rows.append(f"{label},{_csv_num(t)},{_csv_num(pt[0])},{_csv_num(pt[1])}")
    return Figure(svg, "\n".join(rows) + "\n")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _csv_label(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


# ---------------------------------------------------------------- figure builders


def _linspace(a: float, b: float, n: int) -> list[float]:
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def potential_family(
    omega0_sq: float = 1.0,
    kappas: Sequence[float] = (2.0, 1.0, 0.5, 0.0, -0.5, -1.0, -2.0),
    r_max: float = 3.0,
    v_max: float = 3.0,
    n: int = 301,
) -> tuple[list[Curve], FigureStyle]:
    """Potential 1/2 w^2 T_k(r)^2 against r for several curvatures."""
    curves = []
    for k in kappas:
        rs = _linspace(0.0, r_max, n)
        pts: list[Point2] = []
        for r in rs:
            if k > 0 and r >= math.pi / (2.0 * math.sqrt(k)):
                pts.append(None)
                continue
            v = 0.5 * omega0_sq * ck_tan(k, r) ** 2
            pts.append((r, v) if v <= v_max else None)
        curves.append(Curve(f"potential kappa1={k:g}", rs, pts))
    for k in kappas:
        if k > 0:
            wall = math.pi / (2.0 * math.sqrt(k))
            if wall <= r_max:
                curves.append(Curve(f"wall kappa1={k:g}", [wall, wall], [(wall, 0.0), (wall, v_max)], 0.75, True))
    style = FigureStyle(viewbox=(-0.1, r_max + 0.1, -0.1, v_max + 0.1), title="oscillator potential")
    return curves, style


def effective_potential_family(
    kappa1: float,
    js: Sequence[float] = (0.5, 1.0, 1.5),
    omega0_sq: float = 1.0,
    kappa2: float = 1.0,
    r_max: float = 3.0,
    v_max: float = 3.0,
    n: int = 301,
) -> tuple[list[Curve], FigureStyle]:
    """Effective radial potential for several angular momenta.

    On the hyperbolic plane the curve at the critical angular momentum is
    drawn thicker: it separates potentials with a minimum from monotone ones.
    """
    p = CKParams(kappa1, kappa2)
    osc = Oscillator(omega0_sq)
    j_crit = None
    if kappa1 < 0 and kappa2 > 0:
        j_crit = math.sqrt(omega0_sq) / (math.sqrt(kappa2) * -kappa1)
    curves = []
    r_start = r_max / (n - 1)
    for j in js:
        rs = _linspace(r_start, r_max, n)
        pts: list[Point2] = []
        for r in rs:
            try:
                v = effective_potential(p, osc, j, r)
            except CKError:
                pts.append(None)
                continue
            pts.append((r, v) if v <= v_max else None)
        width = 3.0 if j_crit is not None and abs(j - j_crit) <= 1e-12 else 1.5
        curves.append(Curve(f"effective potential J={j:g}", rs, pts, width))
    if kappa1 < 0:
        e_inf = omega0_sq / (-2.0 * kappa1)
        curves.append(Curve("plateau", [0.0, r_max], [(0.0, e_inf), (r_max, e_inf)], 0.75, True))
    if kappa1 > 0:
        wall = math.pi / (2.0 * math.sqrt(kappa1))
        if wall <= r_max:
            curves.append(Curve("wall", [wall, wall], [(wall, 0.0), (wall, v_max)], 0.75, True))
    style = FigureStyle(
        viewbox=(-0.1, r_max + 0.1, -0.1, v_max + 0.1),
        title=f"effective potential, kappa1={kappa1:g}",
    )
    return curves, style


def orbit_curve(
    p: CKParams,
    osc: Oscillator,
    a_sq: float,
    b_sq: float,
    label: str,
    proj: Projection | None = None,
    samples_per_turn: int = 512,
    width: float = 1.5,
) -> Curve:
    """Closed-form orbit with constants A^2, B^2 (phi0 = 0), sampled uniformly in phi."""
    proj = proj or default_projection(p)
    inv_a = 0.0 if math.isinf(a_sq) else 1.0 / a_sq
    inv_kb = 1.0 / (p.kappa2 * b_sq)
    sol = orbit_from_dg(p, osc, 0.5 * (inv_a + inv_kb), 0.5 * (inv_kb - inv_a))
    turn = 2.0 * math.pi / math.sqrt(p.kappa2)
    phis = [turn * i / samples_per_turn for i in range(samples_per_turn + 1)]
    pts: list[Point2] = []
    for phi in phis:
        try:
            r = orbit_radius(p, sol, phi)
        except CKError:
            pts.append(None)
            continue
        pts.append(project(p, proj, PolarPoint(r, phi)))
    return Curve(label, phis, pts, width)


def orbit_family(
    kappa1: float = -1.0,
    b: float = 0.4,
    n_ellipses: int = 7,
    n_ultra: int = 7,
    omega0_sq: float = 1.0,
) -> tuple[list[Curve], FigureStyle]:
    """Orbits sharing the minor semiaxis b on the hyperbolic plane.

    Ordered circle, ellipses of growing major axis, the equidistant,
    ultraellipses of shrinking a~, and the limiting straight line.
    """
    if kappa1 >= 0:
        raise UnsupportedError("the orbit family figure is drawn on the hyperbolic plane", kappa1=kappa1)
    p = CKParams(kappa1, 1.0)
    osc = Oscillator(omega0_sq)
    proj = Projection(ProjectionKind.POINCARE_DISK)
    big_b = ck_tan(kappa1, b)
    bound = 1.0 / math.sqrt(-kappa1)
    if not big_b < bound:
        raise DomainError("minor semiaxis too large for a real orbit", b=b)
    curves = [orbit_curve(p, osc, big_b ** 2, big_b ** 2, "circle", proj)]
    for i in range(1, n_ellipses + 1):
        big_a = big_b + (bound - big_b) * i / (n_ellipses + 1)
        curves.append(orbit_curve(p, osc, big_a ** 2, big_b ** 2, f"ellipse {i}", proj))
    curves.append(orbit_curve(p, osc, bound ** 2, big_b ** 2, "equidistant", proj, width=2.5))
    # ultraellipse a~ runs from the equidistant limit (T(a~) = bound) down to 0
    for i in range(1, n_ultra + 1):
        t_tilde = bound * (1.0 - i / (n_ultra + 1))
        big_a = 1.0 / (-kappa1 * t_tilde)
        curves.append(orbit_curve(p, osc, big_a ** 2, big_b ** 2, f"ultraellipse {i}", proj))
    curves.append(orbit_curve(p, osc, math.inf, big_b ** 2, "line", proj, width=2.5))
    style = FigureStyle(viewbox=(-1.05, 1.05, -1.05, 1.05), title="orbits with a common minor semiaxis", disk=True)
    return curves, style

"""Command-line interface.

Subcommands: info, simulate, orbit, classify, period, convert, plot.  Every
subcommand accepts the space either by name (--space H2) or by its labels
(--kappa1/--kappa2), and the oscillator strength as --omega0 or
--omega0-sq.  Values can also come from an INI file (--config) whose
[ckosc] section uses the long option names with dashes or underscores;
command-line flags win over the file, the file wins over built-in defaults.
Files are written to --output-dir, else $CKOSC_OUTPUT_DIR, else the current
directory.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from pathlib import Path

from .cktrig import ck_sin
from .conics import conic_from_orbit
from .dynamics import Chart, Oscillator, PhaseState
from .errors import CKError, DomainError, OpenOrbitError
from .geometry import (
    CKParams,
    ParallelPointUY,
    ParallelPointXV,
    PolarPoint,
    classify_space,
    params_from_name,
    parallel_uy_to_polar,
    parallel_xv_to_polar,
    polar_to_ambient,
    polar_to_parallel_uy,
    polar_to_parallel_xv,
)
from .integrator import CONSERVED, IntegratorConfig, orbital_period_measured, simulate
from .orbits import (
    classify,
    critical_momentum,
    orbit_from_ej,
    orbit_radius,
    period,
    plateau_energy,
)
from .render import (
    Projection,
    ProjectionKind,
    default_projection,
    effective_potential_family,
    emit_figure,
    orbit_curve,
    orbit_family,
    potential_family,
)

OUTPUT_ENV = "CKOSC_OUTPUT_DIR"
CONFIG_SECTION = "ckosc"

DEFAULTS = {
    "omega0_sq": 1.0,
    "r": None,
    "phi": 0.0,
    "vr": 0.0,
    "vphi": 0.0,
    "u": None,
    "y": 0.0,
    "vu": 0.0,
    "vy": 0.0,
    "x": None,
    "v": 0.0,
    "t_end": 20.0,
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "chart": None,
    "sample_dt": None,
    "phi0": 0.0,
    "samples": 512,
    "figure": "orbit",
    "projection": None,
    "out": None,
    "b": 0.4,
}

FLOAT_KEYS = {
    "kappa1", "kappa2", "omega0", "omega0_sq", "energy", "j", "r", "phi", "vr", "vphi",
    "u", "y", "vu", "vy", "x", "v", "t_end", "rel_tol", "abs_tol", "sample_dt", "phi0", "b",
}
INT_KEYS = {"samples"}


class UsageError(Exception):
    """Bad or missing arguments detected after parsing (exit status 2)."""


# ---------------------------------------------------------------- parsing


def _add_common(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("space and oscillator")
    g.add_argument("--space", help="S2, E2, H2, ANH, G, NH, AdS, M or dS")
    g.add_argument("--kappa1", type=float)
    g.add_argument("--kappa2", type=float)
    g.add_argument("--omega0", type=float, help="oscillator frequency (sets omega0_sq = omega0**2)")
    g.add_argument("--omega0-sq", dest="omega0_sq", type=float)
    sp.add_argument("--config", help="INI file with a [ckosc] section")
    sp.add_argument("--output-dir", dest="output_dir", help=f"overrides ${OUTPUT_ENV}")
    sp.add_argument("--json-errors", dest="json_errors", action="store_true", default=None)


def _add_integrator(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--t-end", dest="t_end", type=float)
    sp.add_argument("--rel-tol", dest="rel_tol", type=float)
    sp.add_argument("--abs-tol", dest="abs_tol", type=float)
    sp.add_argument("--chart", choices=["polar", "parallel"])
    sp.add_argument("--sample-dt", dest="sample_dt", type=float)


def _add_position(sp: argparse.ArgumentParser, velocities: bool) -> None:
    for name in ("r", "phi", "u", "y", "x", "v"):
        sp.add_argument(f"--{name}", type=float)
    if velocities:
        for name in ("vr", "vphi", "vu", "vy"):
            sp.add_argument(f"--{name}", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckosc", description="Harmonic oscillator on the two-dimensional Cayley-Klein spaces"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", help="describe a space")
    _add_common(sp)

    sp = sub.add_parser("simulate", help="integrate the equations of motion")
    _add_common(sp)
    _add_position(sp, velocities=True)
    _add_integrator(sp)
    sp.add_argument("--out", help="trajectory CSV file name (default trajectory.csv)")

    sp = sub.add_parser("orbit", help="closed-form orbit for given energy and angular momentum")
    _add_common(sp)
    sp.add_argument("--energy", type=float)
    sp.add_argument("--j", type=float)
    sp.add_argument("--phi0", type=float)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--out", help="also write the (phi, r) table to this CSV file")

    sp = sub.add_parser("classify", help="orbit type for given energy and angular momentum")
    _add_common(sp)
    sp.add_argument("--energy", type=float)
    sp.add_argument("--j", type=float)

    sp = sub.add_parser("period", help="period law against a simulated orbit")
    _add_common(sp)
    sp.add_argument("--energy", type=float)
    sp.add_argument("--j", type=float, help="angular momentum of the test orbit")
    _add_integrator(sp)

    sp = sub.add_parser("convert", help="convert a point between charts")
    _add_common(sp)
    _add_position(sp, velocities=False)

    sp = sub.add_parser("plot", help="write an SVG figure (and its CSV samples)")
    _add_common(sp)
    sp.add_argument("--figure", choices=["potentials", "effective", "family", "orbit"])
    sp.add_argument("--energy", type=float)
    sp.add_argument("--j", type=float)
    sp.add_argument("--b", type=float, help="minor semiaxis of the orbit family")
    sp.add_argument("--projection", choices=[k.value for k in ProjectionKind])
    sp.add_argument("--out", help="SVG file name")
    return parser


def _load_config(path: str) -> dict:
    cp = configparser.ConfigParser()
    if not cp.read(path, encoding="utf-8"):
        raise UsageError(f"cannot read config file {path!r}")
    if not cp.has_section(CONFIG_SECTION):
        return {}
    values = {}
    for key, raw in cp.items(CONFIG_SECTION):
        key = key.replace("-", "_")
        try:
            if key in FLOAT_KEYS:
                values[key] = float(raw)
            elif key in INT_KEYS:
                values[key] = int(raw)
            elif key == "json_errors":
                values[key] = raw.strip().lower() in ("1", "true", "yes", "on")
            else:
                values[key] = raw
        except ValueError as exc:
            raise UsageError(f"bad value for {key!r} in config: {raw!r}") from exc
    return values


def resolve(args: argparse.Namespace) -> dict:
    """Merge flags, config file and defaults into one flat settings dict."""
    flags = {k: v for k, v in vars(args).items() if v is not None}
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    settings = dict(DEFAULTS)
    settings.update(config)
    settings.update(flags)
    # omega0 given anywhere takes effect unless omega0_sq is given at a higher level
    if "omega0" in flags and "omega0_sq" not in flags:
        settings["omega0_sq"] = flags["omega0"] ** 2
    elif "omega0" in config and "omega0_sq" not in config and "omega0_sq" not in flags:
        settings["omega0_sq"] = config["omega0"] ** 2
    return settings


def _space(settings: dict) -> CKParams:
    if settings.get("space") is not None:
        base = params_from_name(settings["space"])
        return CKParams(settings.get("kappa1", base.kappa1), settings.get("kappa2", base.kappa2))
    if settings.get("kappa1") is None or settings.get("kappa2") is None:
        raise UsageError("give --space or both --kappa1 and --kappa2")
    return CKParams(settings["kappa1"], settings["kappa2"])


def _require(settings: dict, *keys: str) -> None:
    missing = [k for k in keys if settings.get(k) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))


def _output_dir(settings: dict) -> Path:
    path = Path(settings.get("output_dir") or os.environ.get(OUTPUT_ENV) or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _clean(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_clean(obj), indent=2)


def _space_dict(p: CKParams, w2: float) -> dict:
    return {"kappa1": p.kappa1, "kappa2": p.kappa2, "omega0_sq": w2}


# ---------------------------------------------------------------- commands


def cmd_info(settings: dict, out) -> None:
    p = _space(settings)
    osc = Oscillator(settings["omega0_sq"])
    kind = classify_space(p)
    lines = [
        f"{kind.value}, kappa1={p.kappa1:g}, kappa2={p.kappa2:g}",
        f"polar metric:     ds^2 = dr^2 + ({p.kappa2:g}) S^2(r) dphi^2   [S labelled by kappa1]",
        f"parallel metric:  ds^2 = C^2(y) du^2 + ({p.kappa2:g}) dy^2   [C labelled by kappa1*kappa2={p.kappa12:g}]",
        f"omega0_sq={osc.omega0_sq:g}",
    ]
    e_inf = plateau_energy(p, osc)
    if e_inf is not None:
        lines.append(f"E_inf = omega0_sq/(-2 kappa1) = {e_inf!r}")
    if osc.omega0_sq > 0:
        j_inf = critical_momentum(p, osc)
        if j_inf is not None:
            lines.append(f"J_inf = omega0/(sqrt(kappa2) (-kappa1)) = {j_inf!r}")
    out.write("\n".join(lines) + "\n")


def _initial_state(settings: dict) -> PhaseState:
    if settings.get("r") is not None:
        return PhaseState.polar(settings["r"], settings["phi"], settings["vr"], settings["vphi"])
    if settings.get("u") is not None:
        return PhaseState.parallel(settings["u"], settings["y"], settings["vu"], settings["vy"])
    raise UsageError("give an initial position with --r (polar) or --u (parallel)")


def _integrator_config(settings: dict) -> IntegratorConfig:
    chart = {"polar": Chart.POLAR, "parallel": Chart.PARALLEL_UY, None: None}[settings.get("chart")]
    return IntegratorConfig(
        rel_tol=settings["rel_tol"],
        abs_tol=settings["abs_tol"],
        chart=chart,
        sample_dt=settings.get("sample_dt"),
    )


def cmd_simulate(settings: dict, out) -> None:
    p = _space(settings)
    osc = Oscillator(settings["omega0_sq"])
    init = _initial_state(settings)
    traj = simulate(p, osc, init, settings["t_end"], _integrator_config(settings))
    outdir = _output_dir(settings)
    name = settings.get("out") or "trajectory.csv"
    rows = ["t,q1,q2,v1,v2," + ",".join(CONSERVED)]
    for t, y, q in zip(traj.t, traj.y, traj.conserved):
        rows.append(",".join(repr(float(v)) for v in (t, *y, *q)))
    (outdir / name).write_text("\n".join(rows) + "\n", encoding="utf-8")
    ev_rows = ["t,kind,q1,q2,v1,v2"]
    for ev in traj.events:
        ev_rows.append(",".join([repr(ev.t), ev.kind.value, *(repr(v) for v in ev.state.as_tuple())]))
    events_name = Path(name).stem + "_events.csv"
    (outdir / events_name).write_text("\n".join(ev_rows) + "\n", encoding="utf-8")
    report = {
        **_space_dict(p, osc.omega0_sq),
        "chart": traj.chart.value,
        "t_final": float(traj.t[-1]),
        "samples": len(traj),
        "events": len(traj.events),
        "terminated": traj.terminated,
        "drift": traj.drift_report(),
        "trajectory_file": str(outdir / name),
        "events_file": str(outdir / events_name),
    }
    out.write(_dump(report) + "\n")


def cmd_orbit(settings: dict, out) -> None:
    _require(settings, "energy", "j")
    p = _space(settings)
    osc = Oscillator(settings["omega0_sq"])
    sol = orbit_from_ej(p, osc, settings["energy"], settings["j"], settings["phi0"])
    result = sol.to_dict()
    if p.kappa2 > 0:
        try:
            result["conic"] = conic_from_orbit(sol).to_dict()
        except CKError as exc:
            result["conic"] = {"error": exc.to_dict()}
    if settings.get("out"):
        n = settings["samples"]
        turn = 2.0 * math.pi / math.sqrt(p.kappa2) if p.kappa2 > 0 else 2.0
        rows = ["phi,r"]
        for i in range(n + 1):
            phi = sol.phi0 + turn * i / n - (0.0 if p.kappa2 > 0 else 1.0)
            try:
                r = orbit_radius(p, sol, phi)
                rows.append(f"{phi!r},{r!r}")
            except CKError:
                rows.append(f"{phi!r},")
        path = _output_dir(settings) / settings["out"]
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        result["table_file"] = str(path)
    out.write(_dump(result) + "\n")


def cmd_classify(settings: dict, out) -> None:
    _require(settings, "energy", "j")
    p = _space(settings)
    osc = Oscillator(settings["omega0_sq"])
    cls = classify(p, osc, settings["energy"], settings["j"])
    result = {**_space_dict(p, osc.omega0_sq), "E": settings["energy"], "J": settings["j"], **cls.to_dict()}
    out.write(_dump(result) + "\n")


def _test_momentum(p: CKParams, osc: Oscillator, e: float) -> float:
    """Half the angular momentum of the circular orbit with energy e."""
    k2, k12 = p.kappa2, p.kappa12
    lin = math.sqrt(k2 * osc.omega0_sq)
    if k12 == 0:
        j_circ = e / lin
    else:
        j_circ = (-lin + math.sqrt(lin * lin + 2.0 * k12 * e)) / k12
    return 0.5 * j_circ


def cmd_period(settings: dict, out) -> None:
    _require(settings, "energy")
    p = _space(settings)
    osc = Oscillator(settings["omega0_sq"])
    e = settings["energy"]
    formula = period(p, osc, e)
    j = settings.get("j")
    if j is None:
        j = _test_momentum(p, osc, e)
    cls = classify(p, osc, e, j)
    if cls.turning is None or not math.isfinite(cls.turning[1]) or cls.turning[0] == cls.turning[1]:
        raise OpenOrbitError("test orbit is not a bounded non-circular orbit", tag=cls.tag.value)
    sol = orbit_from_ej(p, osc, e, j)
    r0 = orbit_radius(p, sol, 0.0)
    init = PhaseState.polar(r0, 0.0, 0.0, j / ck_sin(p.kappa1, r0) ** 2)
    traj = simulate(p, osc, init, 3.3 * formula, _integrator_config(settings))
    measured = orbital_period_measured(traj)
    result = {
        **_space_dict(p, osc.omega0_sq),
        "E": e,
        "J": j,
        "period_formula": formula,
        "period_measured": measured,
        "relative_error": abs(measured - formula) / formula,
    }
    out.write(_dump(result) + "\n")


def cmd_convert(settings: dict, out) -> None:
    p = _space(settings)
    if settings.get("r") is not None:
        polar = PolarPoint(settings["r"], settings["phi"])
    elif settings.get("u") is not None:
        polar = parallel_uy_to_polar(p, ParallelPointUY(settings["u"], settings["y"]))
    elif settings.get("x") is not None:
        polar = parallel_xv_to_polar(p, ParallelPointXV(settings["x"], settings["v"]))
    else:
        raise UsageError("give a point with --r/--phi, --u/--y or --x/--v")
    result = {"kappa1": p.kappa1, "kappa2": p.kappa2, "polar": {"r": polar.r, "phi": polar.phi}}
    for key, fn, fields in (
        ("parallel_uy", polar_to_parallel_uy, ("u", "y")),
        ("parallel_xv", polar_to_parallel_xv, ("x", "v")),
    ):
        try:
            pt = fn(p, polar)
            result[key] = {f: getattr(pt, f) for f in fields}
        except CKError as exc:
            result[key] = {"error": exc.to_dict()}
    result["ambient"] = list(polar_to_ambient(p, polar))
    out.write(_dump(result) + "\n")


def cmd_plot(settings: dict, out) -> None:
    fig = settings["figure"]
    w2 = settings["omega0_sq"]
    if fig == "potentials":
        curves, style = potential_family(w2)
    elif fig == "effective":
        p = _space(settings)
        curves, style = effective_potential_family(p.kappa1, omega0_sq=w2, kappa2=p.kappa2)
    elif fig == "family":
        kappa1 = _space(settings).kappa1 if (settings.get("space") or settings.get("kappa1") is not None) else -1.0
        curves, style = orbit_family(kappa1, settings["b"], omega0_sq=w2)
    else:
        _require(settings, "energy", "j")
        p = _space(settings)
        osc = Oscillator(w2)
        sol = orbit_from_ej(p, osc, settings["energy"], settings["j"])
        if settings.get("projection"):
            proj = Projection(ProjectionKind(settings["projection"]))
        else:
            proj = default_projection(p)
        if p.kappa2 <= 0:
            raise DomainError("orbit plots are drawn for kappa2 > 0; use simulate for Lorentzian spaces")
        curves = [orbit_curve(p, osc, sol.a_sq, sol.b_sq, "orbit", proj)]
        style = {
            "disk": proj.kind is ProjectionKind.POINCARE_DISK,
            "title": f"orbit E={settings['energy']:g} J={settings['j']:g}",
        }
        if proj.kind is ProjectionKind.POINCARE_DISK:
            style["viewbox"] = (-1.05, 1.05, -1.05, 1.05)
    figure = emit_figure(curves, style)
    outdir = _output_dir(settings)
    name = settings.get("out") or f"{fig}.svg"
    svg_path = outdir / name
    csv_path = svg_path.with_suffix(".csv")
    svg_path.write_text(figure.svg, encoding="utf-8")
    csv_path.write_text(figure.csv, encoding="utf-8")
    out.write(_dump({"svg": str(svg_path), "csv": str(csv_path), "curves": len(curves)}) + "\n")


COMMANDS = {
    "info": cmd_info,
    "simulate": cmd_simulate,
    "orbit": cmd_orbit,
    "classify": cmd_classify,
    "period": cmd_period,
    "convert": cmd_convert,
    "plot": cmd_plot,
}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve(args)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"ckosc: error: {exc}\n")
        return 2
    try:
        COMMANDS[args.command](settings, out)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"ckosc: error: {exc}\n")
        return 2
    except CKError as exc:
        if settings.get("json_errors"):
            out.write(json.dumps({"error": _clean(exc.to_dict())}, indent=2) + "\n")
        else:
            err.write(f"ckosc: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

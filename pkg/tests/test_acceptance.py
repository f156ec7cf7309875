"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from ckoscillator.cktrig import ck_sin, ck_tan
from ckoscillator.conics import ConicKind, conic_from_orbit
from ckoscillator.dynamics import (
    Chart,
    Oscillator,
    PhaseState,
    convert_state,
    energy,
    fradkin,
    noether_momenta,
    state_position,
)
from ckoscillator.geometry import CKParams, ambient_to_polar
from ckoscillator.integrator import EventKind, IntegratorConfig, orbital_period_measured, simulate
from ckoscillator.orbits import (
    OrbitTag,
    binet_residual,
    classify,
    fradkin_orbit_residual,
    min_energy,
    orbit_from_dg,
    orbit_from_ej,
    orbit_from_state,
    orbit_radius,
    orbit_rhs,
    period,
    state_on_orbit,
)
from ckoscillator.render import effective_potential_family, emit_figure, orbit_family, potential_family

RESULTS: dict[int, tuple[bool, str]] = {}
UNIT = Oscillator(1.0)


def _record(number, ok, detail):
    RESULTS[number] = (bool(ok), detail)
    return bool(ok), detail


def _circular_momentum(p, osc, e):
    """Angular momentum of the circular orbit with energy e (kappa2 > 0)."""
    lin = math.sqrt(p.kappa2 * osc.omega0_sq)
    if p.kappa12 == 0:
        return e / lin
    return (-lin + math.sqrt(lin * lin + 2.0 * p.kappa12 * e)) / p.kappa12


# ---------------------------------------------------------------- criterion 1 and 2

CONSERVATION_SPACES = [CKParams(k1, k2) for k1 in (1.0, 0.0, -1.0) for k2 in (1.0, -1.0)]
CONSERVATION_STATES = [
    PhaseState.polar(0.5, 0.1, 0.2, 0.8),
    PhaseState.polar(0.9, -0.3, -0.1, 0.4),
]
_conservation_runs = []


def _conservation_trajectories():
    if _conservation_runs:
        return _conservation_runs
    for p in CONSERVATION_SPACES:
        for init in CONSERVATION_STATES:
            t_end = 20.0
            if p.kappa2 > 0:
                cls = classify(p, UNIT, _energy(p, init), _momentum(p, init))
                if cls.bounded:
                    # ten radial periods; the radial period is half the orbital one
                    t_end = 5.0 * period(p, UNIT, _energy(p, init))
            _conservation_runs.append((p, init, t_end, simulate(p, UNIT, init, t_end)))
    return _conservation_runs


def _energy(p, s):
    return energy(p, UNIT, s)


def _momentum(p, s):
    return noether_momenta(p, s).j


def criterion_1():
    worst = 0.0
    runs = _conservation_trajectories()
    stopped = 0
    for _, _, t_end, traj in runs:
        worst = max(worst, max(traj.drift_report().values()))
        stopped += traj.terminated is not None
    return worst < 1e-8, (f"{len(runs)} runs ({stopped} stopped early at a chart boundary), "
                          f"worst relative drift of E,J,f11,f12,f22 = {worst:.2e} (< 1e-8)")


def criterion_2():
    worst_traj = 0.0
    samples = 0
    for _, _, _, traj in _conservation_trajectories():
        res = np.abs(traj.det_residuals())
        worst_traj = max(worst_traj, float(res.max()))
        samples += len(res)
    rng = random.Random(2024)
    worst_static = 0.0
    spaces = [CKParams(k1, k2) for k1 in (1.0, 0.0, -1.0) for k2 in (1.0, 0.0, -1.0)]
    for p in spaces:
        for _ in range(1000):
            s = PhaseState.parallel(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7),
                                    rng.uniform(-1, 1), rng.uniform(-1, 1))
            worst_static = max(worst_static, abs(fradkin(p, UNIT, s).det_residual(1.0)))
    ok = worst_traj < 1e-11 and worst_static < 1e-11
    return ok, (f"det(F) - w^2 J^2: {samples} trajectory samples max {worst_traj:.1e}, "
                f"9000 static states max {worst_static:.1e} (< 1e-11)")


# ---------------------------------------------------------------- criterion 3

BOUNDED_PAIRS = [
    (CKParams(1, 1), 1.0, 0.5), (CKParams(1, 1), 0.8, 1.0),
    (CKParams(0, 1), 1.0, 0.3), (CKParams(0, 1), 2.0, 1.5),
    (CKParams(-1, 1), 0.1, 0.4), (CKParams(-1, 1), 0.02, 0.7),
    (CKParams(0.5, 2.0), 0.5, 1.5), (CKParams(-0.5, 0.5), 0.4, 0.7),
]


def criterion_3():
    worst_binet = worst_fradkin = worst_closed = 0.0
    rng = random.Random(3)
    all_ellipses = True
    for p, de, j in BOUNDED_PAIRS:
        e = min_energy(p, UNIT, j) + de
        all_ellipses &= classify(p, UNIT, e, j).tag is OrbitTag.ELLIPSE
        sol = orbit_from_ej(p, UNIT, e, j)
        turn = 2 * math.pi / math.sqrt(p.kappa2)
        for _ in range(50):
            phi = rng.uniform(0, turn)
            worst_binet = max(worst_binet, binet_residual(p, UNIT, j, lambda a: orbit_radius(p, sol, a), phi))
        init = state_on_orbit(p, sol, 0.3)
        traj = simulate(p, UNIT, init, 2.0 * period(p, UNIT, e), IntegratorConfig(chart=Chart.POLAR))
        for i in range(len(traj)):
            s = traj.state(i)
            worst_fradkin = max(worst_fradkin, abs(fradkin_orbit_residual(p, UNIT, s)))
            worst_closed = max(worst_closed, abs(1.0 / ck_tan(p.kappa1, s.q1) ** 2 - orbit_rhs(p, sol, s.q2)))
    ok = all_ellipses and worst_binet < 1e-5 and worst_fradkin < 1e-8 and worst_closed < 1e-6
    return ok, (f"8 bounded orbits (all Ellipse: {all_ellipses}): Binet residual max {worst_binet:.1e} (< 1e-5), "
                f"Fradkin orbit identity max {worst_fradkin:.1e} (< 1e-8), "
                f"closed form vs integration max {worst_closed:.1e} (< 1e-6)")


# ---------------------------------------------------------------- criterion 4

def _measured_period(p, e):
    j = 0.5 * _circular_momentum(p, UNIT, e)
    sol = orbit_from_ej(p, UNIT, e, j)
    r0 = orbit_radius(p, sol, 0.0)
    init = PhaseState.polar(r0, 0.0, 0.0, j / ck_sin(p.kappa1, r0) ** 2)
    return orbital_period_measured(simulate(p, UNIT, init, 3.3 * period(p, UNIT, e)))


def criterion_4():
    worst = 0.0
    worst_euclid = 0.0
    energies = {1.0: (0.3, 1.0, 2.5), 0.5: (0.3, 1.0, 2.5), 0.0: (0.3, 1.0, 2.5), -0.5: (0.2, 0.5, 0.8)}
    for k1, es in energies.items():
        p = CKParams(k1, 1.0)
        for e in es:
            formula = period(p, UNIT, e)
            measured = _measured_period(p, e)
            worst = max(worst, abs(measured - formula) / formula)
            if k1 == 0.0:
                worst_euclid = max(worst_euclid, abs(measured - 2 * math.pi))
    ok = worst < 1e-6 and worst_euclid < 1e-8
    return ok, (f"12 orbits: worst relative period error {worst:.1e} (< 1e-6); Euclidean |T - 2pi| "
                f"max {worst_euclid:.1e} (< 1e-8)")


# ---------------------------------------------------------------- criterion 5

H2 = CKParams(-1.0, 1.0)


def _start_on_orbit(p, e, j):
    """Polar state at the inner turning point of the orbit with energy e and momentum j."""
    sol = orbit_from_ej(p, UNIT, e, j)
    r0 = orbit_radius(p, sol, sol.phi0 + math.pi / (2 * math.sqrt(p.kappa2)))
    return PhaseState.polar(r0, math.pi / 2, 0.0, j / ck_sin(p.kappa1, r0) ** 2)


def _radii(p, traj):
    return np.array([convert_state(p, traj.state(i), Chart.POLAR).q1 for i in range(len(traj))])


def criterion_5():
    j = 0.3
    bounded = simulate(H2, UNIT, _start_on_orbit(H2, 0.45, j), 50.0)
    rmax_events = [ev.state.q1 for ev in bounded.events_of(EventKind.RADIAL_MAX)]
    r_max_closed = classify(H2, UNIT, 0.45, j).turning[1]
    err_rmax = max(abs(r - r_max_closed) for r in rmax_events)
    r_all = _radii(H2, bounded).max()
    escape = simulate(H2, UNIT, _start_on_orbit(H2, 0.55, j), 50.0)
    r_escape = _radii(H2, escape)[-1]
    ok = math.isfinite(r_all) and err_rmax < 1e-6 and r_all <= r_max_closed + 1e-6 and r_escape > 10

    disagreements = 0
    checked = 0
    for e in np.linspace(0.05, 0.95, 10):
        for jj in np.linspace(0.05, 1.4, 10):
            e, jj = float(e), float(jj)
            cls = classify(H2, UNIT, e, jj)
            if cls.tag is OrbitTag.FORBIDDEN:
                continue
            kind = conic_from_orbit(orbit_from_ej(H2, UNIT, e, jj)).kind
            traj = simulate(H2, UNIT, _start_on_orbit(H2, e, jj), 60.0)
            radii = _radii(H2, traj)
            predicted_bounded = kind in (ConicKind.ELLIPSE, ConicKind.CIRCLE)
            if predicted_bounded:
                observed_ok = radii.max() <= cls.turning[1] + 1e-6
            else:
                observed_ok = radii.max() > 10
            if cls.bounded != predicted_bounded or not observed_ok:
                disagreements += 1
            checked += 1
    ok = ok and disagreements == 0
    return ok, (f"E=0.45: r_max error {err_rmax:.1e} (< 1e-6); E=0.55: r(50) = {r_escape:.1f} (> 10); "
                f"grid: {checked} allowed (E,J) points, {disagreements} disagreements")


# ---------------------------------------------------------------- criterion 6

def criterion_6():
    worst = 0.0
    for p in (CKParams(1.0, 1.0), CKParams(-1.0, 1.0)):
        for init in (PhaseState.polar(0.6, 0.2, 0.3, 0.9), PhaseState.polar(1.0, -1.0, -0.2, 0.5)):
            polar = simulate(p, UNIT, init, 5.0, IntegratorConfig(chart=Chart.POLAR))
            parallel = simulate(p, UNIT, init, 5.0, IntegratorConfig(chart=Chart.PARALLEL_UY))
            a = np.array(state_position(p, polar.final_state))
            b = np.array(state_position(p, parallel.final_state))
            worst = max(worst, float(np.max(np.abs(a - b))))
    return worst < 1e-7, f"sphere and hyperbolic, 4 runs: max ambient position gap at t=5 {worst:.1e} (< 1e-7)"


# ---------------------------------------------------------------- criterion 7

def criterion_7():
    a_sq, b_sq = 2.0, 0.5
    worst_r = 0.0
    for phi in np.linspace(0, 2 * math.pi, 17):
        radii = []
        for k1 in (1e-6, 0.0):
            p = CKParams(k1, 1.0)
            d = 0.5 * (1 / a_sq + 1 / b_sq)
            g = 0.5 * (1 / b_sq - 1 / a_sq)
            radii.append(orbit_radius(p, orbit_from_dg(p, UNIT, d, g), float(phi)))
        worst_r = max(worst_r, abs(radii[0] - radii[1]))
    # period of the same orbit: E = (A^2 + B^2) / 2 at kappa1 = 0, omega0 = 1
    e = 0.5 * (a_sq + b_sq)
    worst_t = abs(period(CKParams(1e-6, 1), UNIT, e) - period(CKParams(0, 1), UNIT, e))
    ok = worst_r < 1e-5 and worst_t < 1e-5
    return ok, f"kappa1=1e-6 vs 0: radius gap {worst_r:.1e}, period gap {worst_t:.1e} (< 1e-5)"


# ---------------------------------------------------------------- criterion 8

def criterion_8():
    ads = CKParams(1.0, -1.0)
    init = PhaseState.polar(0.5, 0.2, 0.1, 0.6)
    sol = orbit_from_state(ads, UNIT, init)
    traj = simulate(ads, UNIT, init, 10.0, IntegratorConfig(sample_dt=0.05))
    worst = 0.0
    inside = 0
    for i in range(len(traj)):
        x = state_position(ads, traj.state(i))
        # the polar chart covers the wedge x1 > |x2| only; the parallel integration continues outside it
        if not (x[1] > 0 and x[1] ** 2 - x[2] ** 2 > 0):
            continue
        pt = ambient_to_polar(ads, x)
        worst = max(worst, abs(1.0 / ck_tan(1.0, pt.r) ** 2 - orbit_rhs(ads, sol, pt.phi)))
        inside += 1
    drift = max(traj.drift_report().values())
    ok = inside > 50 and worst < 1e-6 and drift < 1e-8 and traj.terminated is None
    return ok, (f"AdS orbit over t=10, {inside}/{len(traj)} samples in the time-like wedge: "
                f"closed-form residual {worst:.1e} (< 1e-6), "
                f"worst drift {drift:.1e} (< 1e-8)")


# ---------------------------------------------------------------- criterion 9

def criterion_9():
    golden = Path(__file__).parent / "golden"
    checks = []
    figures = {
        "potential_family": potential_family,
        "effective_potential_h2": lambda: effective_potential_family(-1.0),
        "orbit_family_h2": orbit_family,
    }
    for name, build in figures.items():
        a = emit_figure(*build()).svg
        b = emit_figure(*build()).svg
        checks.append(a == b == (golden / f"{name}.svg").read_text(encoding="utf-8"))

    curves, _ = potential_family()
    walls = {c.label: c.points[0][0] for c in curves if c.label.startswith("wall")}
    walls_ok = all(math.isclose(walls[f"wall kappa1={k:g}"], math.pi / (2 * math.sqrt(k))) for k in (2, 1, 0.5))
    hyper = [pt for c in curves if c.label == "potential kappa1=-1" for pt in c.points if pt is not None]
    plateau_ok = 0.45 < hyper[-1][1] < 0.5

    curves, _ = effective_potential_family(-1.0)
    sep = [c for c in curves if c.stroke_width == 3.0]
    separatrix_ok = len(sep) == 1 and sep[0].label == "effective potential J=1"

    curves, _ = orbit_family()
    radii = []
    for c in curves:
        k = min(range(len(c.params)), key=lambda i: abs(c.params[i] - math.pi / 4))
        radii.append(math.hypot(*c.points[k]))
    order_ok = all(b > a for a, b in zip(radii, radii[1:]))
    ok = all(checks) and walls_ok and plateau_ok and separatrix_ok and order_ok
    return ok, (f"golden SVGs stable {sum(checks)}/3; walls {walls_ok}, plateau {plateau_ok}, "
                f"J_inf separatrix {separatrix_ok}, family ordered {order_ok}")


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = _record(number, *CRITERIA[number]())
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    start = time.perf_counter()
    failed = 0
    for number, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria passed in {time.perf_counter() - start:.1f} s")
    sys.exit(1 if failed else 0)

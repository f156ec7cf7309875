"""Adaptive propagation of oscillator phase states.

The stepping itself is scipy's DOP853 (explicit Runge-Kutta 8(5,3) with
dense output).  This module drives it step by step so that it can

* attach the conserved quantities to every accepted step,
* locate radial turning points and axis crossings on the dense output,
* stop cleanly at chart singularities instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.integrate import DOP853
from scipy.optimize import brentq

from .cktrig import ck_cos, ck_sin
from .dynamics import (
    Chart,
    FradkinTensor,
    NoetherMomenta,
    Oscillator,
    PhaseState,
    convert_state,
    energy,
    fradkin,
    noether_momenta,
    parallel_accelerations,
    polar_accelerations,
)
from .errors import CKError, DomainError, NotPeriodicError, StiffnessError, UnsupportedError
from .geometry import CKParams


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = math.inf
    max_steps: int = 200_000
    chart: Chart | None = None
    sample_dt: float | None = None
    boundary_eps: float = 1e-6
    event_floor: float = 1e-9
    isotrope_cutoff: float = 20.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive", rel_tol=self.rel_tol, abs_tol=self.abs_tol)
        if self.max_steps <= 0:
            raise DomainError("max_steps must be positive", max_steps=self.max_steps)
        if not self.max_step > 0:
            raise DomainError("max_step must be positive", max_step=self.max_step)
        if self.sample_dt is not None and not self.sample_dt > 0:
            raise DomainError("sample_dt must be positive", sample_dt=self.sample_dt)


class EventKind(Enum):
    RADIAL_MIN = "RadialMin"
    RADIAL_MAX = "RadialMax"
    AXIS_CROSSING = "AxisCrossing"
    CHART_BOUNDARY = "ChartBoundary"


@dataclass(frozen=True)
class Event:
    t: float
    kind: EventKind
    state: PhaseState


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    state: PhaseState
    momenta: NoetherMomenta
    energy: float
    fradkin: FradkinTensor


CONSERVED = ("E", "J", "f11", "f12", "f22")


@dataclass
class Trajectory:
    params: CKParams
    oscillator: Oscillator
    chart: Chart
    t: np.ndarray
    y: np.ndarray
    events: list[Event] = field(default_factory=list)
    terminated: str | None = None

    def __post_init__(self):
        p, osc = self.params, self.oscillator
        q = np.empty((len(self.t), 5))
        self._momenta = []
        self._fradkin = []
        self._energy = []
        for i, row in enumerate(self.y):
            s = PhaseState(self.chart, *map(float, row))
            m = noether_momenta(p, s)
            f = fradkin(p, osc, s)
            e = energy(p, osc, s)
            self._momenta.append(m)
            self._fradkin.append(f)
            self._energy.append(e)
            q[i] = (e, m.j, f.f11, f.f12, f.f22)
        self.conserved = q

    def __len__(self) -> int:
        return len(self.t)

    def state(self, i: int) -> PhaseState:
        return PhaseState(self.chart, *map(float, self.y[i]))

    @property
    def samples(self) -> list[TrajectorySample]:
        return [
            TrajectorySample(float(self.t[i]), self.state(i), self._momenta[i], self._energy[i], self._fradkin[i])
            for i in range(len(self.t))
        ]

    @property
    def final_state(self) -> PhaseState:
        return self.state(-1)

    def events_of(self, kind: EventKind) -> list[Event]:
        return [ev for ev in self.events if ev.kind is kind]

    def drift_report(self) -> dict[str, float]:
        """max_t |Q(t) - Q(0)| / max(1, |Q(0)|) for each conserved quantity."""
        q0 = self.conserved[0]
        scale = np.maximum(1.0, np.abs(q0))
        drift = np.max(np.abs(self.conserved - q0), axis=0) / scale
        return {name: float(d) for name, d in zip(CONSERVED, drift)}

    def det_residuals(self) -> np.ndarray:
        w2 = self.oscillator.omega0_sq
        return np.array([f.det_residual(w2) for f in self._fradkin])

    def states_in(self, chart: Chart) -> list[PhaseState]:
        return [convert_state(self.params, self.state(i), chart) for i in range(len(self.t))]


def default_chart(p: CKParams, init: PhaseState) -> Chart:
    """Polar when the angular momentum keeps the orbit off the origin.

    Lorentzian spaces default to the parallel chart, whose only singularities
    are the potential walls.
    """
    if p.kappa2 < 0:
        return Chart.PARALLEL_UY
    j = noether_momenta(p, init).j
    if init.chart is Chart.POLAR:
        r = init.q1
    else:
        try:
            r = convert_state(p, init, Chart.POLAR).q1
        except CKError:
            r = 0.0
    if j != 0.0 and abs(ck_sin(p.kappa1, r)) > 1e-3:
        return Chart.POLAR
    return Chart.PARALLEL_UY


def _ambient(p: CKParams, chart: Chart, y):
    """Ambient position, velocity-derived radial rate and axis coordinate."""
    k1, k2 = p.kappa1, p.kappa2
    q1, q2, v1, v2 = y
    if chart is Chart.POLAR:
        s1 = ck_sin(k1, q1)
        c1 = ck_cos(k1, q1)
        # d/dt of S1(r)^2 / 2
        radial = s1 * c1 * v1
        axis = s1 * ck_sin(k2, q2)
        return radial, axis
    k = k1 * k2
    c1, s1 = ck_cos(k1, q1), ck_sin(k1, q1)
    ck, sk = ck_cos(k, q2), ck_sin(k, q2)
    x1, x2 = s1 * ck, sk
    d1 = c1 * ck * v1 - k * s1 * sk * v2
    d2 = ck * v2
    return x1 * d1 + k2 * x2 * d2, x2


def _guard(p: CKParams, chart: Chart, y, cfg: IntegratorConfig) -> float:
    """Distance-like margin to the nearest chart singularity.

    Values above 1 are safely inside the chart; the trajectory is stopped
    when the margin drops to 1.
    """
    k1, k2 = p.kappa1, p.kappa2
    eps = cfg.boundary_eps
    if chart is Chart.POLAR:
        g = abs(ck_sin(k1, y[0])) / eps
        if k2 < 0:
            # the angle runs off to infinity on approach to the isotropes
            g = min(g, cfg.isotrope_cutoff / ck_cos(k2, y[1]))
    else:
        g = abs(ck_cos(p.kappa12, y[1])) / eps
    if k1 > 0:
        g = min(g, abs(ck_cos(k1, y[0])) / eps)
    return g


def simulate(
    p: CKParams,
    osc: Oscillator,
    init: PhaseState,
    t_end: float,
    cfg: IntegratorConfig | None = None,
) -> Trajectory:
    cfg = cfg or IntegratorConfig()
    if p.kappa2 == 0:
        raise UnsupportedError("dynamics is not defined for kappa2 = 0 (degenerate metric)")
    if not (math.isfinite(t_end) and t_end > 0):
        raise DomainError("t_end must be positive and finite", t_end=t_end)
    chart = cfg.chart or default_chart(p, init)
    start = convert_state(p, init, chart)
    k1, k2, w2 = p.kappa1, p.kappa2, osc.omega0_sq
    accel = polar_accelerations if chart is Chart.POLAR else parallel_accelerations
    # make sure the initial state is evaluable (raises a module error otherwise)
    accel(k1, k2, w2, *start.as_tuple())
    if _guard(p, chart, start.as_tuple(), cfg) <= 1.0:
        raise DomainError("initial state lies on a chart singularity", chart=chart.value)

    def rhs(_t, y):
        q1, q2, v1, v2 = y.tolist()
        try:
            a1, a2 = accel(k1, k2, w2, q1, q2, v1, v2)
        except OverflowError:
            # an oversized trial step; a non-finite error estimate makes the solver retry smaller
            return np.full(4, np.nan)
        return np.array([v1, v2, a1, a2])

    solver = DOP853(
        rhs,
        0.0,
        np.array(start.as_tuple(), dtype=float),
        t_end,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
    )
    times = [0.0]
    states = [solver.y.copy()]
    events: list[Event] = []
    terminated = None
    next_sample = cfg.sample_dt

    prev_t = 0.0
    prev_y = solver.y.copy()
    prev_radial, prev_axis = _ambient(p, chart, prev_y)
    steps = 0
    while solver.status == "running":
        if steps >= cfg.max_steps:
            raise StiffnessError("maximum number of steps exceeded", t=prev_t, max_steps=cfg.max_steps)
        try:
            message = solver.step()
        except CKError as exc:
            terminated = f"{type(exc).__name__}: {exc}"
            events.append(Event(prev_t, EventKind.CHART_BOUNDARY, PhaseState(chart, *prev_y.tolist())))
            break
        steps += 1
        if solver.status == "failed":
            raise StiffnessError(f"step size underflow ({message})", t=solver.t)
        t_new, y_new = solver.t, solver.y.copy()
        dense = solver.dense_output()

        # chart singularity: cut the step at the guard threshold
        t_stop = None
        if _guard(p, chart, y_new, cfg) <= 1.0:
            def gfun(t):
                return _guard(p, chart, dense(t), cfg) - 1.0

            t_stop = brentq(gfun, prev_t, t_new, xtol=1e-14) if gfun(prev_t) > 0 else prev_t
            t_new, y_new = t_stop, dense(t_stop)

        radial, axis = _ambient(p, chart, y_new)
        step_events = []
        if prev_radial * radial < 0 and max(abs(prev_radial), abs(radial)) > cfg.event_floor:
            te = brentq(lambda t: _ambient(p, chart, dense(t))[0], prev_t, t_new, xtol=1e-14, rtol=1e-15)
            kind = EventKind.RADIAL_MAX if prev_radial > 0 else EventKind.RADIAL_MIN
            step_events.append(Event(te, kind, PhaseState(chart, *dense(te).tolist())))
        if prev_axis * axis < 0:
            te = brentq(lambda t: _ambient(p, chart, dense(t))[1], prev_t, t_new, xtol=1e-14, rtol=1e-15)
            step_events.append(Event(te, EventKind.AXIS_CROSSING, PhaseState(chart, *dense(te).tolist())))
        events.extend(sorted(step_events, key=lambda ev: ev.t))

        while next_sample is not None and next_sample < t_new:
            times.append(next_sample)
            states.append(dense(next_sample))
            next_sample += cfg.sample_dt
        times.append(t_new)
        states.append(y_new)
        if t_stop is not None:
            events.append(Event(t_stop, EventKind.CHART_BOUNDARY, PhaseState(chart, *y_new.tolist())))
            terminated = "chart boundary"
            break
        prev_t, prev_y, prev_radial, prev_axis = t_new, y_new, radial, axis

    return Trajectory(p, osc, chart, np.array(times), np.array(states), events, terminated)


def radial_period_measured(traj: Trajectory) -> float:
    """Mean time between successive radial minima (half the orbital period)."""
    mins = [ev.t for ev in traj.events_of(EventKind.RADIAL_MIN)]
    if len(mins) < 3:
        raise NotPeriodicError("fewer than three radial minima on the trajectory", count=len(mins))
    return float((mins[-1] - mins[0]) / (len(mins) - 1))


def orbital_period_measured(traj: Trajectory) -> float:
    return 2.0 * radial_period_measured(traj)

"""Shared fixtures-as-functions for the test modules."""

import math
import random

from ckoscillator.dynamics import PhaseState
from ckoscillator.geometry import CKParams

SIGNS = (1.0, 0.0, -1.0)
ALL_SPACES = [CKParams(k1, k2) for k1 in SIGNS for k2 in SIGNS]
NONDEGENERATE = [p for p in ALL_SPACES if p.kappa2 != 0]


def random_polar_point(rng: random.Random, p: CKParams) -> tuple[float, float]:
    """A point inside the polar chart domain (time-like wedge when kappa2 < 0)."""
    if p.kappa1 > 0:
        r = rng.uniform(0.05, 0.95) * math.pi / (2 * math.sqrt(p.kappa1))
    else:
        r = rng.uniform(0.05, 1.5)
    if p.kappa2 > 0:
        phi = rng.uniform(-math.pi, math.pi) / math.sqrt(p.kappa2)
    else:
        phi = rng.uniform(-1.5, 1.5)
    return r, phi


def random_polar_state(rng: random.Random, p: CKParams) -> PhaseState:
    r, phi = random_polar_point(rng, p)
    return PhaseState.polar(r, phi, rng.uniform(-1, 1), rng.uniform(-1, 1))


def random_parallel_state(rng: random.Random, p: CKParams) -> PhaseState:
    u = rng.uniform(-0.6, 0.6)
    y = rng.uniform(-0.6, 0.6)
    return PhaseState.parallel(u, y, rng.uniform(-1, 1), rng.uniform(-1, 1))

"""Back-and-forth patrol of a straight segment.

n vehicles sweep a segment of length R; unrolling the swept strip onto a
cylinder whose directrix is a circle of circumference 2R turns the
turn-and-return motion into uniform circular motion, with the fleet spaced
2R/n apart and the scan disks carried along rigidly.  The intruder crosses
the strip perpendicularly at horizontal coordinate a, is exposed while its
transverse offset satisfies |y| <= r (a window of length 2r/u with
y(t) = r - u*t), and the crossing ensemble is uniform in a on [0, R] and
the fleet phase b on [0, 2R/n].

Detection lives on the cylinder surface: the horizontal separation between
the object and a vehicle is the circular distance between their unrolled
coordinates mod 2R.  On this surface the relative motion is an exact
straight line, so the per-vehicle detectable set of phases is a chord of
length exactly 2r/sin(alpha) out of each period 2R/n.

The detection test reuses the certified grid-plus-golden-section scheme of
the circular kernel with Lipschitz constant hypot(u, v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._golden import golden_min
from .circular import (GRID_SAFETY, TIME_TOLERANCE_FACTOR, _MAX_BLOCK_ELEMENTS,
                       AsymptoticSummary, minimum_fleet_size)
from .montecarlo import EstimateWithCI, SeedSchedule, run_bernoulli_trials
from .scenario import LinearPatrolScenario, ValidationError, validate

__all__ = [
    "CrossingSample",
    "asymptotic_summary_linear",
    "detects_linear",
    "mc_probability_linear",
    "vehicle_position_linear",
]


@dataclass(frozen=True)
class CrossingSample:
    """One crossing draw: a in [0, R] is where the intruder crosses the
    patrol segment, b in [0, 2R/n] the initial unfolded phase of the fleet."""

    a: float
    b: float


def vehicle_position_linear(j: int, b: float, t: float,
                            s: LinearPatrolScenario) -> float:
    """Position of vehicle j on the segment [0, R] at time t.

    Uniform motion at speed v on the unfolded circle of circumference 2R,
    folded back by reflection: unfolded coordinates c and 2R - c are the
    same physical point.
    """
    validate(s)
    if not 0 <= j < s.n:
        raise ValueError("vehicle index must lie in [0, n)")
    two_R = 2.0 * s.R
    c = (b + j * (two_R / s.n) + s.v * t) % two_R
    return c if c <= s.R else two_R - c


def _grid(s: LinearPatrolScenario) -> tuple[np.ndarray, float, float]:
    window = 2.0 * s.r / s.u
    vmax = math.hypot(s.u, s.v)
    segments = max(1, math.ceil(window * GRID_SAFETY * vmax / s.r))
    return np.linspace(0.0, window, segments + 1), window, vmax


def _detects_linear_block(a: np.ndarray, b: np.ndarray, s: LinearPatrolScenario,
                          t: np.ndarray, window: float, vmax: float) -> np.ndarray:
    dt = t[1] - t[0]
    r2 = s.r * s.r
    thr2 = (s.r + vmax * dt) ** 2
    two_R = 2.0 * s.R
    offsets = (two_R / s.n) * np.arange(s.n)
    y2 = (s.r - s.u * t) ** 2
    # horizontal separation on the cylinder: circular distance mod 2R
    sep = (b[:, None, None] + offsets[None, :, None] + s.v * t[None, None, :]
           - a[:, None, None]) % two_R
    dx = np.minimum(sep, two_R - sep)
    d2 = dx * dx + y2[None, None, :]
    grid_min = d2.min(axis=(1, 2))
    detected = grid_min <= r2
    pending = ~detected & (grid_min <= thr2)
    if not np.any(pending):
        return detected
    rows = np.nonzero(pending)[0]
    low = d2[rows] <= thr2
    cand = low[:, :, :-1] | low[:, :, 1:]
    ridx, vidx, tidx = np.nonzero(cand)
    if ridx.size == 0:
        return detected
    delta0 = (b[rows[ridx]] + offsets[vidx] - a[rows[ridx]])

    def f(tv: np.ndarray) -> np.ndarray:
        sv = (delta0 + s.v * tv) % two_R
        xv = np.minimum(sv, two_R - sv)
        yv = s.r - s.u * tv
        return xv * xv + yv * yv

    fmin = golden_min(f, t[tidx], t[tidx + 1], TIME_TOLERANCE_FACTOR * window)
    hit = fmin <= r2
    if np.any(hit):
        detected[rows[ridx[hit]]] = True
    return detected


def _detects_linear_batch(a: np.ndarray, b: np.ndarray,
                          s: LinearPatrolScenario) -> np.ndarray:
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    t, window, vmax = _grid(s)
    block = max(1, _MAX_BLOCK_ELEMENTS // (s.n * t.size))
    if a.size <= block:
        return _detects_linear_block(a, b, s, t, window, vmax)
    out = np.empty(a.size, dtype=bool)
    for lo in range(0, a.size, block):
        hi = min(lo + block, a.size)
        out[lo:hi] = _detects_linear_block(a[lo:hi], b[lo:hi], s, t, window, vmax)
    return out


def detects_linear(sample: CrossingSample, s: LinearPatrolScenario) -> bool:
    """True iff some vehicle's scan disk reaches the intruder while it is
    inside the strip (tangency included).

    The squared separation is dx(t)^2 + (r - u*t)^2 over t in [0, 2r/u],
    where dx is the cylinder distance between the vehicle's unrolled
    coordinate b + j*(2R/n) + v*t and the crossing coordinate a, mod 2R.
    """
    validate(s)
    if not 0.0 <= sample.a <= s.R:
        raise ValidationError("a must lie in [0, R]")
    if not 0.0 <= sample.b <= 2.0 * s.R / s.n:
        raise ValidationError("b must lie in [0, 2R/n]")
    return bool(_detects_linear_batch(np.array([sample.a]),
                                      np.array([sample.b]), s)[0])


class _CrossingIndicator:
    """Two draws per trial: slot 0 gives a = u*R, slot 1 gives b = u*2R/n."""

    n_draws = 2

    def __init__(self, s: LinearPatrolScenario):
        self._s = s

    def evaluate_batch(self, u: np.ndarray) -> np.ndarray:
        s = self._s
        a = u[:, 0] * s.R
        b = u[:, 1] * (2.0 * s.R / s.n)
        return _detects_linear_batch(a, b, s)


def mc_probability_linear(s: LinearPatrolScenario, trials: int, seed: int,
                          workers: int = 1) -> EstimateWithCI:
    """Monte Carlo detection probability over the uniform crossing ensemble."""
    validate(s)
    return run_bernoulli_trials(_CrossingIndicator(s), trials,
                                SeedSchedule(seed), workers)


def asymptotic_summary_linear(s: LinearPatrolScenario) -> AsymptoticSummary:
    """Closed forms for the segment patrol.

    On the cylinder the intruder traces a straight line of inclination
    alpha = atan2(u, v) against the vehicle lattice; one scan disk blocks a
    chord of length 2r/sin alpha out of each period 2R/n, so
    p = min(1, n r / (R sin alpha)) and m_min = ceil(R sin alpha / r).
    Unlike the circular case the relative trajectory has no curvature, so
    this is exact for the uniform crossing ensemble, not just a small-r
    limit; Monte Carlo deviations from it are pure sampling noise.
    """
    validate(s)
    sin_alpha = math.sin(math.atan2(s.u, s.v))
    per_vehicle = s.r / (s.R * sin_alpha)
    return AsymptoticSummary(chord_l=2.0 * s.r / sin_alpha,
                             p_asym=min(1.0, s.n * per_vehicle),
                             m_min=minimum_fleet_size(per_vehicle))

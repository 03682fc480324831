"""Interception geometry for the circular patrol.

In the frame co-rotating with the fleet the vehicles sit still at radius R
while the intruder, launched at angle psi from the circle of radius R + r,
spirals inward: radius R + r - u*t, angle psi - (v/R)*t.  The set of launch
angles psi caught by vehicle i is a union of arcs F_i on [0, 2*pi); by
symmetry F_i is F_0 rotated by 2*pi*i/n, and the interception probability is
the normalized measure of the union of the F_i.

The detection test itself is numerical but certified: the distance from the
object to a vehicle is Lipschitz in t with constant vmax (radial speed u plus
tangential speed at most (v/R)(R + r)), so on a time grid of step
r/(4*vmax) any dip below r forces a grid value below r + vmax*dt.  Grid
intervals at or below that threshold are polished with golden-section search;
everything else is provably clear of the scan disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._golden import golden_min
from .montecarlo import EstimateWithCI, SeedSchedule, run_bernoulli_trials
from .scenario import CircularPatrolScenario, derived_angles, validate

__all__ = [
    "AsymptoticSummary",
    "CircleIntervalSet",
    "DEFAULT_RESOLUTION",
    "asymptotic_summary",
    "detection_arc_set",
    "detects",
    "exact_probability",
    "mc_probability",
    "minimum_fleet_size",
    "union_measure",
]

TWO_PI = 2.0 * math.pi

# Angular grid size used by detection_arc_set when none is given.
DEFAULT_RESOLUTION = 4096

# Arc endpoints are bisected to this angular tolerance (radians).
ARC_TOLERANCE_RAD = 1e-9

# Golden-section time tolerance, relative to the searched time window.
TIME_TOLERANCE_FACTOR = 1e-10

# Time grid step is r / (GRID_SAFETY * vmax); 4 leaves a wide certification
# margin (a missed dip would need the distance to fall r/4 below the grid
# threshold, which the Lipschitz bound forbids).
GRID_SAFETY = 4.0

# Row blocks are capped so intermediate (rows x grid) arrays stay small.
_MAX_BLOCK_ELEMENTS = 4_000_000


# ---- arc sets on the circle ----

@dataclass(frozen=True)
class CircleIntervalSet:
    """Disjoint half-open arcs [start, end) on the circle [0, 2*pi).

    Canonical form: starts sorted and in [0, 2*pi); each end in
    (start, start + 2*pi]; arcs pairwise disjoint with strictly positive
    gaps; at most the last arc wraps past 2*pi.  The full circle is the
    single arc (0, 2*pi).
    """

    intervals: tuple[tuple[float, float], ...] = ()

    @staticmethod
    def from_intervals(raw: Iterable[tuple[float, float]]) -> "CircleIntervalSet":
        """Canonicalize arbitrary (start, end) pairs: wrap starts into
        [0, 2*pi), split arcs crossing zero, merge overlapping or touching
        arcs.  Pairs with end <= start are dropped; any arc of length
        >= 2*pi covers everything."""
        pieces: list[tuple[float, float]] = []
        for start, end in raw:
            length = end - start
            if length <= 0.0:
                continue
            if length >= TWO_PI:
                return CircleIntervalSet(((0.0, TWO_PI),))
            s = start % TWO_PI
            if s >= TWO_PI:
                s = 0.0
            e = s + length
            if e > TWO_PI:
                pieces.append((s, TWO_PI))
                pieces.append((0.0, e - TWO_PI))
            else:
                pieces.append((s, e))
        if not pieces:
            return CircleIntervalSet(())
        pieces.sort()
        merged: list[list[float]] = [list(pieces[0])]
        for s, e in pieces[1:]:
            if s <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], e)
            else:
                merged.append([s, e])
        # arcs meeting at angle 0 on both sides stitch into one wrapped arc
        if len(merged) > 1 and merged[0][0] <= 0.0 and merged[-1][1] >= TWO_PI:
            first = merged.pop(0)
            merged[-1][1] = first[1] + TWO_PI
        if len(merged) == 1 and merged[0][1] - merged[0][0] >= TWO_PI:
            return CircleIntervalSet(((0.0, TWO_PI),))
        return CircleIntervalSet(tuple((s, e) for s, e in merged))

    def measure(self) -> float:
        """Total angular length, in [0, 2*pi]."""
        return min(TWO_PI, math.fsum(e - s for s, e in self.intervals))

    def shifted(self, delta: float) -> "CircleIntervalSet":
        """Rotate every arc by delta; arc lengths are preserved."""
        if not self.intervals or self.intervals == ((0.0, TWO_PI),):
            return self
        out = []
        for s, e in self.intervals:
            ns = (s + delta) % TWO_PI
            if ns >= TWO_PI:
                ns = 0.0
            out.append((ns, ns + (e - s)))
        return CircleIntervalSet.from_intervals(out)

    def contains(self, angle: float) -> bool:
        a = angle % TWO_PI
        for s, e in self.intervals:
            if s <= a < e:
                return True
            if e > TWO_PI and a < e - TWO_PI:
                return True
        return False


def union_measure(sets: Sequence[CircleIntervalSet]) -> float:
    """Measure of the union of arc sets, as a fraction of the circle."""
    arcs = [iv for one in sets for iv in one.intervals]
    return CircleIntervalSet.from_intervals(arcs).measure() / TWO_PI


# ---- certified detection kernel ----

def _time_grid(s: CircularPatrolScenario) -> tuple[np.ndarray, float, float]:
    """Uniform grid on the reachable window [0, 2r/u], step <= r/(GRID_SAFETY*vmax).

    Outside that window the object's radius leaves [R - r, R + r], where its
    distance to every vehicle exceeds |rho - R| > r, so restricting the
    search there loses nothing.  The window length scales with r, which
    keeps the grid size bounded (about 2*GRID_SAFETY*vmax/u points) even
    for vanishing scan radii.
    """
    window = 2.0 * s.r / s.u
    vmax = math.hypot(s.u, s.v * (s.R + s.r) / s.R)
    segments = max(1, math.ceil(window * GRID_SAFETY * vmax / s.r))
    return np.linspace(0.0, window, segments + 1), window, vmax


def _reduced_sq_distance(t, delta0, period: float, s: CircularPatrolScenario):
    """Squared distance from the object to the nearest vehicle of the lattice
    {angle = 0 mod period}; delta0 is the launch angle offset.  Broadcasts."""
    rho = (s.R + s.r) - s.u * t
    ang = delta0 - (s.v / s.R) * t
    half = 0.5 * period
    red = np.abs((ang + half) % period - half)
    return rho * rho + s.R * s.R - 2.0 * s.R * rho * np.cos(red)


def _detects_block(delta0: np.ndarray, period: float, s: CircularPatrolScenario,
                   t: np.ndarray, window: float, vmax: float) -> np.ndarray:
    dt = t[1] - t[0]
    r2 = s.r * s.r
    thr2 = (s.r + vmax * dt) ** 2
    d2 = _reduced_sq_distance(t[None, :], delta0[:, None], period, s)
    grid_min = d2.min(axis=1)
    detected = grid_min <= r2
    pending = ~detected & (grid_min <= thr2)
    if not np.any(pending):
        return detected
    rows = np.nonzero(pending)[0]
    low = d2[rows] <= thr2
    # refine every grid interval with a sub-threshold endpoint
    cand = low[:, :-1] | low[:, 1:]
    ridx, cidx = np.nonzero(cand)
    if ridx.size == 0:
        return detected
    dvals = delta0[rows[ridx]]

    def f(tv: np.ndarray) -> np.ndarray:
        return _reduced_sq_distance(tv, dvals, period, s)

    fmin = golden_min(f, t[cidx], t[cidx + 1], TIME_TOLERANCE_FACTOR * window)
    hit = fmin <= r2
    if np.any(hit):
        detected[rows[ridx[hit]]] = True
    return detected


def _detects_batch(delta0: np.ndarray, period: float,
                   s: CircularPatrolScenario) -> np.ndarray:
    """Detection indicator for an array of launch angle offsets.

    True where the spiral comes within r (tangency included) of a vehicle of
    the angular lattice with the given period: period = 2*pi tests a single
    vehicle, period = 2*pi/n the nearest of the whole fleet.
    """
    delta0 = np.atleast_1d(np.asarray(delta0, dtype=float))
    t, window, vmax = _time_grid(s)
    block = max(1, _MAX_BLOCK_ELEMENTS // t.size)
    if delta0.size <= block:
        return _detects_block(delta0, period, s, t, window, vmax)
    out = np.empty(delta0.size, dtype=bool)
    for lo in range(0, delta0.size, block):
        hi = min(lo + block, delta0.size)
        out[lo:hi] = _detects_block(delta0[lo:hi], period, s, t, window, vmax)
    return out


def detects(psi: float, vehicle_index: int, s: CircularPatrolScenario) -> bool:
    """True iff the run launched at angle psi passes within r of vehicle
    vehicle_index at some time in [0, (R + r)/u]."""
    validate(s)
    if not 0 <= vehicle_index < s.n:
        raise ValueError("vehicle_index must lie in [0, n)")
    beta = TWO_PI * vehicle_index / s.n
    return bool(_detects_batch(np.array([psi - beta]), TWO_PI, s)[0])


# ---- arc extraction and probabilities ----

def detection_arc_set(vehicle_index: int, s: CircularPatrolScenario,
                      resolution: int = DEFAULT_RESOLUTION) -> CircleIntervalSet:
    """Launch angles detected by one vehicle, as a canonical arc set.

    The indicator is sampled on `resolution` equally spaced angles; every
    transition bracket is then bisected to ARC_TOLERANCE_RAD.  An arc
    narrower than the angular grid spacing can be missed entirely, so the
    resolution bounds the scale of features this can resolve.
    """
    validate(s)
    if not 0 <= vehicle_index < s.n:
        raise ValueError("vehicle_index must lie in [0, n)")
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    beta = TWO_PI * vehicle_index / s.n
    step = TWO_PI / resolution
    psi = step * np.arange(resolution)
    det = _detects_batch(psi - beta, TWO_PI, s)
    if det.all():
        return CircleIntervalSet(((0.0, TWO_PI),))
    if not det.any():
        return CircleIntervalSet(())

    flips = np.nonzero(det != np.roll(det, -1))[0]  # state changes g -> g+1
    lo = psi[flips]
    hi = lo + step
    lo_state = det[flips]
    iterations = math.ceil(math.log2(step / ARC_TOLERANCE_RAD))
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        mid_state = _detects_batch(mid - beta, TWO_PI, s)
        same = mid_state == lo_state
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    boundary = 0.5 * (lo + hi)

    # pair each rising edge (False -> True) with the next falling edge
    rising = np.sort(boundary[~lo_state])
    falling = np.sort(boundary[lo_state])
    arcs = []
    for start in rising:
        j = np.searchsorted(falling, start)
        end = falling[j] if j < falling.size else falling[0] + TWO_PI
        arcs.append((float(start), float(end)))
    return CircleIntervalSet.from_intervals(arcs)


def exact_probability(s: CircularPatrolScenario,
                      resolution: int = DEFAULT_RESOLUTION) -> float:
    """Interception probability: measure of the union of all vehicle arc
    sets over 2*pi.  The arc set is computed once for vehicle 0 and rotated
    into the other n - 1 positions."""
    validate(s)
    base = detection_arc_set(0, s, resolution)
    sets = [base.shifted(TWO_PI * i / s.n) for i in range(s.n)]
    return union_measure(sets)


class _AnyVehicleIndicator:
    """psi ~ U[0, 2*pi); detect against the nearest vehicle.  Folding the
    angular offset modulo the fleet spacing 2*pi/n collapses all n vehicles
    onto a single lattice test."""

    n_draws = 1

    def __init__(self, s: CircularPatrolScenario):
        self._s = s
        self._period = TWO_PI / s.n

    def evaluate_batch(self, u: np.ndarray) -> np.ndarray:
        psi = u[:, 0] * TWO_PI
        return _detects_batch(psi, self._period, self._s)


def mc_probability(s: CircularPatrolScenario, trials: int, seed: int,
                   workers: int = 1) -> EstimateWithCI:
    """Monte Carlo interception probability over uniform launch angles.

    Runs the same certified detection kernel as `detects` per trial, so it
    cross-checks exact_probability rather than reusing its arcs."""
    validate(s)
    return run_bernoulli_trials(_AnyVehicleIndicator(s), trials,
                                SeedSchedule(seed), workers)


# ---- small-radius closed forms ----

@dataclass(frozen=True)
class AsymptoticSummary:
    """Small-r closed forms: chord_l, the image-curve length one scan circle
    blocks; p_asym, the capped detection probability; m_min, the least fleet
    size at which the cap is reached."""

    chord_l: float
    p_asym: float
    m_min: int


def minimum_fleet_size(per_vehicle: float) -> int:
    """Least m with m * per_vehicle >= 1, i.e. m = ceil(1/per_vehicle),
    guarded against float misrounding at integer boundaries."""
    if not per_vehicle > 0.0:
        raise ValueError("per_vehicle must be positive")
    m = max(1, math.ceil(1.0 / per_vehicle))
    if m > 1 and (m - 1) * per_vehicle >= 1.0:
        m -= 1
    if m * per_vehicle < 1.0:
        m += 1
    return m


def asymptotic_summary(s: CircularPatrolScenario) -> AsymptoticSummary:
    """First-order summary for r << R.

    In the normalized image the intruder path is a straight line of
    inclination alpha = atan2(u, v), and one scan circle shadows a chord of
    angular length 2r/(R sin alpha).  Uniform launch angle then gives
    p = min(1, n r / (pi R sin alpha)) and m_min = ceil(pi R sin alpha / r).
    """
    validate(s)
    sin_alpha = math.sin(derived_angles(s).alpha)
    chord = 2.0 * s.r / (s.R * sin_alpha)
    per_vehicle = s.r / (math.pi * s.R * sin_alpha)
    return AsymptoticSummary(chord_l=chord,
                             p_asym=min(1.0, s.n * per_vehicle),
                             m_min=minimum_fleet_size(per_vehicle))

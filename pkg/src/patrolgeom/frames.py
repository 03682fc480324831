"""Coordinate geometry in the frame co-rotating with the fleet.

Covers angle wrapping, the polar image of a sensor's scan circle (exact and
small-ratio approximation), and the kinematics of a radially moving object
seen from the rotating frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scenario import CircularPatrolScenario, validate

__all__ = [
    "PolarPoint",
    "RotatingFramePoint",
    "TWO_PI",
    "distance_to_vehicle",
    "object_position_rotating",
    "scan_circle_polar_approx",
    "scan_circle_polar_exact",
    "wrap_positive",
    "wrap_signed",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PolarPoint:
    """Point of the normalized polar image: rho_norm = rho/R >= 0 and
    phi in (-pi, pi]."""

    rho_norm: float
    phi: float


@dataclass(frozen=True)
class RotatingFramePoint:
    """Point in the co-rotating frame: radius >= 0, angle in [0, 2*pi)."""

    radius: float
    angle: float


def wrap_signed(angle: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = math.remainder(angle, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    return a


def wrap_positive(angle: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    a = angle % TWO_PI
    # float round-off can push the remainder to exactly 2*pi
    return 0.0 if a >= TWO_PI else a


def _check_ratio(r_over_R: float) -> None:
    if not 0.0 < r_over_R < 1.0:
        raise ValueError("r_over_R must lie strictly between 0 and 1")


def scan_circle_polar_exact(r_over_R: float, psi: float) -> PolarPoint:
    """Exact polar image of a scan-circle point.

    The scan circle has radius r and center at distance R from the origin;
    psi parameterizes the circle so that psi = pi/2 is the point farthest
    from the origin.  With e = r/R:

        rho/R = sqrt(e^2 cos^2 psi + (1 + e sin psi)^2)
        phi   = atan2(e cos psi, 1 + e sin psi)
    """
    _check_ratio(r_over_R)
    e = r_over_R
    c = math.cos(psi)
    s = math.sin(psi)
    base = 1.0 + e * s
    return PolarPoint(rho_norm=math.sqrt(e * e * c * c + base * base),
                      phi=math.atan2(e * c, base))


def scan_circle_polar_approx(r_over_R: float, psi: float) -> PolarPoint:
    """First-order image of a scan-circle point: rho/R = 1 + e sin psi,
    phi = e cos psi.  The error against the exact image is O(e^2),
    uniformly in psi."""
    _check_ratio(r_over_R)
    e = r_over_R
    return PolarPoint(rho_norm=1.0 + e * math.sin(psi),
                      phi=e * math.cos(psi))


def object_position_rotating(psi: float, t: float,
                             s: CircularPatrolScenario) -> RotatingFramePoint:
    """Object position at time t for the radial run started at angle psi on
    the circle of radius R + r.

    In the rotating frame the radius shrinks as R + r - u*t while the angle
    drifts backwards at the frame rate: angle(t) = psi - (v/R) t.  Valid for
    t in [0, (R + r)/u], the arrival time at the center.
    """
    validate(s)
    horizon = (s.R + s.r) / s.u
    if not 0.0 <= t <= horizon:
        raise ValueError(f"t must lie in [0, {horizon!r}]")
    radius = max(0.0, s.R + s.r - s.u * t)
    return RotatingFramePoint(radius=radius,
                              angle=wrap_positive(psi - (s.v / s.R) * t))


def distance_to_vehicle(psi: float, t: float, vehicle_index: int,
                        s: CircularPatrolScenario) -> float:
    """Distance from the object to vehicle vehicle_index at time t.

    Vehicles are fixed in the rotating frame at radius R and angles
    2*pi*i/n.  Law of cosines on (radius, R, angle difference).
    """
    validate(s)
    if not 0 <= vehicle_index < s.n:
        raise ValueError("vehicle_index must lie in [0, n)")
    p = object_position_rotating(psi, t, s)
    beta = TWO_PI * vehicle_index / s.n
    d2 = (p.radius * p.radius + s.R * s.R
          - 2.0 * p.radius * s.R * math.cos(p.angle - beta))
    return math.sqrt(max(0.0, d2))

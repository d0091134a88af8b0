"""Causal geometry in flat spacetime, units c = 1.

Events live in a distinguished inertial frame with 1, 2 or 3 spatial
dimensions.  Interval classification near the light cone uses a fixed
tolerance so that results are deterministic under floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# Classification tolerance for the invariant interval, in interval units.
INTERVAL_TOL = 1e-9

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class Separation(enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


@dataclass(frozen=True)
class Event:
    """A spacetime point (t, x) with x a spatial tuple of length 1, 2 or 3."""

    t: float
    x: tuple[float, ...]

    def __post_init__(self):
        x = tuple(float(c) for c in self.x)
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "x", x)
        if not 1 <= len(x) <= 3:
            raise ValueError(f"spatial dimension must be 1, 2 or 3, got {len(x)}")
        if not math.isfinite(self.t) or not all(math.isfinite(c) for c in x):
            raise ValueError("event coordinates must be finite")

    @property
    def n(self) -> int:
        return len(self.x)


class Spacetime(enum.Enum):
    GALILEAN = "galilean"
    MINKOWSKI = "minkowski"


class Physics(enum.Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


@dataclass(frozen=True)
class Regime:
    spacetime: Spacetime
    physics: Physics

    def __post_init__(self):
        object.__setattr__(self, "spacetime", Spacetime(self.spacetime))
        object.__setattr__(self, "physics", Physics(self.physics))


@dataclass(frozen=True)
class Interval:
    """Invariant interval s2 = (dt)^2 - |dx|^2 and its causal class."""

    s2: float
    kind: Separation


@dataclass(frozen=True)
class Boost:
    """A Lorentz boost with velocity v, |v| < 1 strictly."""

    v: tuple[float, ...]

    def __post_init__(self):
        v = tuple(float(c) for c in self.v)
        object.__setattr__(self, "v", v)
        if not 1 <= len(v) <= 3:
            raise ValueError(f"boost dimension must be 1, 2 or 3, got {len(v)}")
        if self.speed >= 1.0:
            raise ValueError(f"boost speed must be < 1, got {self.speed}")

    @property
    def speed(self) -> float:
        return math.sqrt(sum(c * c for c in self.v))


def _check_dims(a: Event, b: Event) -> None:
    if a.n != b.n:
        raise ValueError(f"spatial dimension mismatch: {a.n} vs {b.n}")


def interval(a: Event, b: Event, tol: float = INTERVAL_TOL) -> Interval:
    """Invariant interval between two events with causal classification."""
    _check_dims(a, b)
    dt = b.t - a.t
    dx2 = sum((bc - ac) ** 2 for ac, bc in zip(a.x, b.x))
    s2 = dt * dt - dx2
    if s2 > tol:
        kind = Separation.TIMELIKE
    elif s2 < -tol:
        kind = Separation.SPACELIKE
    else:
        kind = Separation.LIGHTLIKE
    return Interval(s2=s2, kind=kind)


def causally_precedes(a: Event, b: Event, regime: Regime, tol: float = INTERVAL_TOL) -> bool:
    """Whether b lies in the causal future of a.

    Minkowski: closed future light cone J+(a).  Galilean: any event at
    equal or later time (instantaneous signalling is allowed).
    """
    _check_dims(a, b)
    if b.t < a.t - tol:
        return False
    if regime.spacetime is Spacetime.GALILEAN:
        return True
    return interval(a, b, tol=tol).kind in (Separation.TIMELIKE, Separation.LIGHTLIKE)


def proper_time(a: Event, b: Event, tol: float = INTERVAL_TOL) -> float:
    """Proper time along the straight worldline from a to b (timelike, future)."""
    iv = interval(a, b, tol=tol)
    if iv.kind is not Separation.TIMELIKE:
        raise ValueError(f"events are {iv.kind.value}, not timelike (s2={iv.s2})")
    if b.t <= a.t:
        raise ValueError("b must be to the future of a")
    return math.sqrt(iv.s2)


def boost(e: Event, b: Boost) -> Event:
    """Lorentz boost of event coordinates into the frame moving at velocity v."""
    if len(b.v) != e.n:
        raise ValueError(f"boost dimension {len(b.v)} does not match event dimension {e.n}")
    v = np.asarray(b.v, dtype=float)
    x = np.asarray(e.x, dtype=float)
    v2 = float(v @ v)
    if v2 == 0.0:
        return e
    gamma = 1.0 / math.sqrt(1.0 - v2)
    vx = float(v @ x)
    t_new = gamma * (e.t - vx)
    # Decompose x into components parallel and perpendicular to v.
    x_new = x + ((gamma - 1.0) * vx / v2 - gamma * e.t) * v
    return Event(t=t_new, x=tuple(x_new))


def candidate_sphere(P: Event, t: float, t_prime: float, count: int) -> list[Event]:
    """Candidate summoning points on the slice P.t + t.

    The points sit at spatial radius r = sqrt(t^2 - t_prime^2) from P.x:
    for t_prime = 0 they are lightlike from P, otherwise at proper time
    t_prime.  Placement is deterministic: antipodes in 1D, uniform angles
    in 2D, a Fibonacci lattice in 3D.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    if not 0 <= t_prime < t:
        raise ValueError(f"need 0 <= t_prime < t, got t_prime={t_prime}, t={t}")
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    r = math.sqrt(t * t - t_prime * t_prime)
    tq = P.t + t
    c = np.asarray(P.x, dtype=float)
    n = P.n
    points: list[Event] = []
    if n == 1:
        if count != 2:
            raise ValueError("1D sphere has exactly two points; count must be 2")
        offsets = [np.array([r]), np.array([-r])]
    elif n == 2:
        angles = [2.0 * math.pi * k / count for k in range(count)]
        offsets = [r * np.array([math.cos(a), math.sin(a)]) for a in angles]
    else:
        offsets = []
        for k in range(count):
            z = 1.0 - 2.0 * (k + 0.5) / count
            rho = math.sqrt(max(0.0, 1.0 - z * z))
            phi = _GOLDEN_ANGLE * k
            offsets.append(r * np.array([rho * math.cos(phi), rho * math.sin(phi), z]))
    for off in offsets:
        points.append(Event(t=tq, x=tuple(c + off)))
    return points


def colinear_return(
    P: Event, Q: Event, t_prime: float, delta: float, tol: float = 1e-6
) -> Event:
    """Return point R on the ray from P through Q with proper time t_prime + delta.

    Requires Q at proper time t_prime from P; scaling the displacement by
    (t_prime + delta) / t_prime scales the proper time linearly.
    """
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    tau = proper_time(P, Q)
    if abs(tau - t_prime) > tol * max(1.0, abs(t_prime)):
        raise ValueError(
            f"Q is at proper time {tau} from P, expected t_prime={t_prime}"
        )
    scale = (t_prime + delta) / t_prime
    x = tuple(pc + scale * (qc - pc) for pc, qc in zip(P.x, Q.x))
    return Event(t=P.t + scale * (Q.t - P.t), x=x)

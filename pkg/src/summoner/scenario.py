"""Summoning scenarios: hand-over point, candidate points, margins, regime.

A scenario fixes where the state is handed over (P), where it may be
demanded back (the candidates Q_i, drawn uniformly), the processing
margin t_prime, the response delay delta, and the causal regime.  Two
geometric variants are supported: a frame slice (all candidates at one
time coordinate) and a Lorentz-invariant hyperboloid (all candidates at
one proper time from P, with colinear return points).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import jsonschema

from .spacetime import (
    Event,
    Physics,
    Regime,
    Spacetime,
    candidate_sphere,
    causally_precedes,
    colinear_return,
    proper_time,
)

PROPER_TIME_TOL = 1e-9
# Warn when the response delay is not small against the geometric scale.
DELAY_RATIO_WARN = 0.1

DEMO_NAMES = ("antipodal_pair", "sphere", "timelike_chain", "galilean", "classical")

SCENARIO_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": [
        "regime", "d", "n", "variant", "P", "candidates", "t_prime", "delta", "seed",
    ],
    "properties": {
        "regime": {
            "type": "object",
            "additionalProperties": False,
            "required": ["spacetime", "physics"],
            "properties": {
                "spacetime": {"enum": ["minkowski", "galilean"]},
                "physics": {"enum": ["classical", "quantum"]},
            },
        },
        "d": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1, "maximum": 3},
        "variant": {"enum": ["frame_slice", "lorentz_invariant"]},
        "P": {"$ref": "#/$defs/event"},
        "candidates": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/event"}},
        "t_prime": {"type": "number", "minimum": 0},
        "delta": {"type": "number", "minimum": 0},
        "seed": {"type": "integer"},
    },
    "$defs": {
        "event": {
            "type": "object",
            "additionalProperties": False,
            "required": ["t", "x"],
            "properties": {
                "t": {"type": "number"},
                "x": {"type": "array", "minItems": 1, "maxItems": 3,
                      "items": {"type": "number"}},
            },
        }
    },
}


class Variant(enum.Enum):
    FRAME_SLICE = "frame_slice"
    LORENTZ_INVARIANT = "lorentz_invariant"


@dataclass(frozen=True)
class Finding:
    level: str  # "error" | "warning"
    message: str


@dataclass(frozen=True)
class ReturnPoint:
    candidate_index: int
    R: Event


@dataclass(frozen=True)
class Scenario:
    regime: Regime
    d: int
    n: int
    variant: Variant
    P: Event
    candidates: tuple[Event, ...]
    t_prime: float
    delta: float
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if self.P.n != self.n or any(q.n != self.n for q in self.candidates):
            raise ValueError("all events must match the scenario spatial dimension")
        if not self.candidates:
            raise ValueError("scenario needs at least one candidate")

    @property
    def num_candidates(self) -> int:
        return len(self.candidates)

    def slice_time(self) -> float | None:
        """Common candidate time coordinate, or None if not on a single slice."""
        t0 = self.candidates[0].t
        if all(abs(q.t - t0) <= PROPER_TIME_TOL for q in self.candidates):
            return t0
        return None

    def to_dict(self) -> dict:
        return {
            "regime": {
                "spacetime": self.regime.spacetime.value,
                "physics": self.regime.physics.value,
            },
            "d": self.d,
            "n": self.n,
            "variant": self.variant.value,
            "P": {"t": self.P.t, "x": list(self.P.x)},
            "candidates": [{"t": q.t, "x": list(q.x)} for q in self.candidates],
            "t_prime": self.t_prime,
            "delta": self.delta,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        jsonschema.validate(data, SCENARIO_SCHEMA)
        n = data["n"]
        P = Event(t=data["P"]["t"], x=tuple(data["P"]["x"]))
        candidates = tuple(
            Event(t=q["t"], x=tuple(q["x"])) for q in data["candidates"]
        )
        return cls(
            regime=Regime(
                spacetime=Spacetime(data["regime"]["spacetime"]),
                physics=Physics(data["regime"]["physics"]),
            ),
            d=data["d"],
            n=n,
            variant=Variant(data["variant"]),
            P=P,
            candidates=candidates,
            t_prime=data["t_prime"],
            delta=data["delta"],
            seed=data["seed"],
        )


def load(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return Scenario.from_dict(json.load(fh))


def save(s: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(s.to_dict(), fh, indent=2)
        fh.write("\n")


def validate(s: Scenario) -> list[Finding]:
    """Check scenario invariants; errors and warnings come back as findings."""
    findings: list[Finding] = []
    if s.delta < 0:
        findings.append(Finding("error", f"delta must be >= 0, got {s.delta}"))
    if s.regime.physics is Physics.QUANTUM and s.d < 2:
        findings.append(Finding("error", f"quantum regime needs d >= 2, got d={s.d}"))
    for i, q in enumerate(s.candidates):
        if not causally_precedes(s.P, q, s.regime):
            findings.append(
                Finding("error", f"candidate {i} not in causal future of P")
            )
    if s.variant is Variant.FRAME_SLICE:
        t_q = s.slice_time()
        if t_q is None:
            findings.append(
                Finding(
                    "warning",
                    "frame_slice candidates do not share one time coordinate; "
                    "disjoint-past analysis is not applicable",
                )
            )
        else:
            t = t_q - s.P.t
            if t <= s.t_prime:
                findings.append(
                    Finding(
                        "error",
                        f"slice offset t={t} must exceed t_prime={s.t_prime}",
                    )
                )
            else:
                r = (t * t - s.t_prime * s.t_prime) ** 0.5
                if r > 0 and s.delta / r > DELAY_RATIO_WARN:
                    findings.append(
                        Finding(
                            "warning",
                            f"delta/r = {s.delta / r:.3g} exceeds "
                            f"{DELAY_RATIO_WARN}; response delay is not small "
                            "against the candidate sphere radius",
                        )
                    )
    else:
        if s.t_prime <= 0:
            findings.append(
                Finding("error", "lorentz_invariant variant needs t_prime > 0")
            )
        else:
            for i, q in enumerate(s.candidates):
                try:
                    tau = proper_time(s.P, q)
                except ValueError:
                    findings.append(
                        Finding("error", f"candidate {i} not timelike-future of P")
                    )
                    continue
                if abs(tau - s.t_prime) > 1e-9 * max(1.0, s.t_prime):
                    findings.append(
                        Finding(
                            "error",
                            f"candidate {i} at proper time {tau}, expected "
                            f"t_prime={s.t_prime}",
                        )
                    )
            if s.delta / s.t_prime > DELAY_RATIO_WARN:
                findings.append(
                    Finding(
                        "warning",
                        f"delta/t_prime = {s.delta / s.t_prime:.3g} exceeds "
                        f"{DELAY_RATIO_WARN}",
                    )
                )
    return findings


def errors(findings: list[Finding]) -> list[Finding]:
    return [f for f in findings if f.level == "error"]


def return_points(s: Scenario) -> list[ReturnPoint]:
    """Delayed return point R_i for each candidate Q_i."""
    out = []
    for i, q in enumerate(s.candidates):
        if s.variant is Variant.FRAME_SLICE:
            r = Event(t=q.t + s.delta, x=q.x)
        else:
            r = colinear_return(s.P, q, s.t_prime, s.delta)
        out.append(ReturnPoint(candidate_index=i, R=r))
    return out


def make_demo(name: str) -> Scenario:
    """Fixed demonstration scenarios, by name (see DEMO_NAMES)."""
    mq = Regime(spacetime=Spacetime.MINKOWSKI, physics=Physics.QUANTUM)
    origin1 = Event(t=0.0, x=(0.0,))
    if name == "antipodal_pair":
        return Scenario(
            regime=mq, d=2, n=1, variant=Variant.FRAME_SLICE,
            P=origin1,
            candidates=tuple(candidate_sphere(origin1, t=1.0, t_prime=0.0, count=2)),
            t_prime=0.0, delta=0.0, seed=0,
        )
    if name == "sphere":
        origin3 = Event(t=0.0, x=(0.0, 0.0, 0.0))
        return Scenario(
            regime=mq, d=2, n=3, variant=Variant.FRAME_SLICE,
            P=origin3,
            candidates=tuple(candidate_sphere(origin3, t=5.0, t_prime=3.0, count=8)),
            t_prime=3.0, delta=0.1, seed=0,
        )
    if name == "timelike_chain":
        return Scenario(
            regime=mq, d=2, n=1, variant=Variant.FRAME_SLICE,
            P=origin1,
            candidates=tuple(Event(t=float(k), x=(0.0,)) for k in range(1, 5)),
            t_prime=0.0, delta=0.0, seed=0,
        )
    if name == "galilean":
        base = make_demo("antipodal_pair")
        return Scenario(
            regime=Regime(spacetime=Spacetime.GALILEAN, physics=Physics.QUANTUM),
            d=base.d, n=base.n, variant=base.variant, P=base.P,
            candidates=base.candidates, t_prime=base.t_prime, delta=base.delta,
            seed=base.seed,
        )
    if name == "classical":
        base = make_demo("antipodal_pair")
        return Scenario(
            regime=Regime(spacetime=Spacetime.MINKOWSKI, physics=Physics.CLASSICAL),
            d=base.d, n=base.n, variant=base.variant, P=base.P,
            candidates=base.candidates, t_prime=base.t_prime, delta=base.delta,
            seed=base.seed,
        )
    raise ValueError(f"unknown demo {name!r}; available: {', '.join(DEMO_NAMES)}")

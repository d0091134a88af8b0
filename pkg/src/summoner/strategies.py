"""Responder strategies and the seeded Monte Carlo simulator.

No-signalling is enforced structurally: a strategy positions one
resource slot per candidate before the summons exists, and its response
at a candidate sees exactly that one slot.  There is no interface
through which the response can read another slot or the summoned index
at planning time.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .feasibility import Status, classify
from .quantum import (
    DensityMatrix,
    PureState,
    fidelity,
    haar_sample,
    maximally_mixed,
    measure_prepare,
    trace_distance,
    universal_cloner,
)
from .scenario import Scenario
from .spacetime import Physics, Spacetime

STRATEGY_NAMES = (
    "route_chain",
    "clone_distribute",
    "measure_broadcast",
    "galilean_route",
    "classical_broadcast",
    "hold_at:k",
)


@dataclass(frozen=True)
class PositionedResources:
    """One pre-positioned slot per candidate, fixed before any summons."""

    slots: tuple[DensityMatrix, ...]


@dataclass(frozen=True)
class Strategy:
    name: str
    applicable: Callable[[Scenario], None]  # raises ValueError when not
    plan: Callable[[Scenario, PureState, np.random.Generator], PositionedResources]
    respond: Callable[[DensityMatrix, np.random.Generator], DensityMatrix]


@dataclass(frozen=True)
class SimReport:
    trials: int
    per_candidate_mean_fidelity: list[float]
    worst_candidate_mean: float
    overall_mean: float
    standard_errors: list[float]
    seed: int
    strategy: str

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "per_candidate_mean_fidelity": self.per_candidate_mean_fidelity,
            "worst_candidate_mean": self.worst_candidate_mean,
            "overall_mean": self.overall_mean,
            "standard_errors": self.standard_errors,
            "seed": self.seed,
            "strategy": self.strategy,
        }


def _identity_respond(slot: DensityMatrix, rng: np.random.Generator) -> DensityMatrix:
    return slot


def _require_quantum(s: Scenario) -> None:
    if s.regime.physics is not Physics.QUANTUM:
        raise ValueError("strategy needs the quantum regime")


def _broadcast(dm: DensityMatrix, count: int) -> PositionedResources:
    return PositionedResources(slots=(dm,) * count)


def route_chain() -> Strategy:
    def applicable(s: Scenario) -> None:
        v = classify(s)
        if v.status is not Status.FEASIBLE or v.chain is None:
            raise ValueError(
                "route_chain needs a feasible chain verdict; the candidates "
                "admit no total causal order from P"
            )

    def plan(s, psi, rng):
        # The state is carried along the causal chain, so it is intact at
        # whichever chain point the summons reaches.
        return _broadcast(psi.density(), s.num_candidates)

    return Strategy("route_chain", applicable, plan, _identity_respond)


def clone_distribute() -> Strategy:
    def applicable(s: Scenario) -> None:
        _require_quantum(s)

    def plan(s, psi, rng):
        marg = universal_cloner(s.d, s.num_candidates).marginal(psi.density())
        return _broadcast(marg, s.num_candidates)

    return Strategy("clone_distribute", applicable, plan, _identity_respond)


def measure_broadcast() -> Strategy:
    def plan(s, psi, rng):
        if s.regime.physics is Physics.CLASSICAL:
            return _broadcast(psi.density(), s.num_candidates)
        est = measure_prepare(s.d, rng)(psi)
        return _broadcast(est, s.num_candidates)

    return Strategy("measure_broadcast", lambda s: None, plan, _identity_respond)


def galilean_route() -> Strategy:
    def applicable(s: Scenario) -> None:
        if s.regime.spacetime is not Spacetime.GALILEAN:
            raise ValueError("galilean_route needs Galilean spacetime")

    def plan(s, psi, rng):
        return _broadcast(psi.density(), s.num_candidates)

    return Strategy("galilean_route", applicable, plan, _identity_respond)


def classical_broadcast() -> Strategy:
    def applicable(s: Scenario) -> None:
        if s.regime.physics is not Physics.CLASSICAL:
            raise ValueError("classical_broadcast needs classical physics")

    def plan(s, psi, rng):
        return _broadcast(psi.density(), s.num_candidates)

    return Strategy("classical_broadcast", applicable, plan, _identity_respond)


def hold_at(k: int) -> Strategy:
    def applicable(s: Scenario) -> None:
        if not 0 <= k < s.num_candidates:
            raise ValueError(f"hold_at index {k} out of range")

    def plan(s, psi, rng):
        junk = maximally_mixed(s.d)
        slots = tuple(
            psi.density() if i == k else junk for i in range(s.num_candidates)
        )
        return PositionedResources(slots=slots)

    return Strategy(f"hold_at:{k}", applicable, plan, _identity_respond)


def builtin(name: str) -> Strategy:
    """Look up a built-in strategy by its stable CLI identifier."""
    if name.startswith("hold_at:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad hold_at index in {name!r}") from None
        return hold_at(k)
    table = {
        "route_chain": route_chain,
        "clone_distribute": clone_distribute,
        "measure_broadcast": measure_broadcast,
        "galilean_route": galilean_route,
        "classical_broadcast": classical_broadcast,
    }
    if name not in table:
        raise ValueError(
            f"unknown strategy {name!r}; available: {', '.join(STRATEGY_NAMES)}"
        )
    return table[name]()


class PeekingTestDouble:
    """Deliberately broken strategy used as a negative control.

    Its planning step receives the summoned index, which no compliant
    strategy can see; the no-signalling check must flag it.
    """

    name = "peeking_test_double"

    def applicable(self, s: Scenario) -> None:
        _require_quantum(s)

    def plan(self, s, psi, rng):
        # Without a peeked index, behave like hold_at:0.
        return self.plan_with_summons(s, psi, rng, 0)

    def plan_with_summons(self, s, psi, rng, summoned: int):
        junk = maximally_mixed(s.d)
        slots = tuple(
            psi.density() if i == summoned else junk
            for i in range(s.num_candidates)
        )
        return PositionedResources(slots=slots)

    def respond(self, slot, rng):
        return slot


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))


def _worker_count() -> int:
    raw = os.environ.get("SUMMONER_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"SUMMONER_THREADS must be an integer, got {raw!r}") from None
    if workers < 0:
        raise ValueError("SUMMONER_THREADS must be >= 0")
    if workers == 0:
        workers = os.cpu_count() or 1
    return workers


def simulate(
    s: Scenario,
    strat: Strategy,
    trials: int,
    seed: int,
    binary_verification: bool = False,
) -> SimReport:
    """Seeded Monte Carlo of a strategy against a scenario.

    Per trial: draw a Haar state, draw a candidate uniformly, position
    resources, respond with the summoned slot, score the fidelity to the
    original.  Per-trial seeds are derived from the master seed by trial
    index, so the result is bit-identical regardless of worker count.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    strat.applicable(s)
    n = s.num_candidates
    fids = np.empty(trials)
    cands = np.empty(trials, dtype=np.int64)

    def run_range(lo: int, hi: int) -> None:
        for trial in range(lo, hi):
            rng = _trial_rng(seed, trial)
            psi = haar_sample(s.d, rng)
            j = int(rng.integers(n))
            resources = strat.plan(s, psi, rng)
            delivered = strat.respond(resources.slots[j], rng)
            f = fidelity(psi, delivered)
            if binary_verification:
                f = float(rng.random() < f)
            fids[trial] = f
            cands[trial] = j

    workers = _worker_count()
    if workers <= 1 or trials < 2 * workers:
        run_range(0, trials)
    else:
        chunk = math.ceil(trials / workers)
        bounds = [(i, min(i + chunk, trials)) for i in range(0, trials, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda b: run_range(*b), bounds))

    per_mean, per_se = [], []
    for i in range(n):
        sel = fids[cands == i]
        if sel.size == 0:
            per_mean.append(0.0)
            per_se.append(0.0)
            continue
        per_mean.append(float(sel.mean()))
        per_se.append(
            float(sel.std(ddof=1) / math.sqrt(sel.size)) if sel.size > 1 else 0.0
        )
    visited = [m for i, m in enumerate(per_mean) if (cands == i).any()]
    return SimReport(
        trials=trials,
        per_candidate_mean_fidelity=per_mean,
        worst_candidate_mean=min(visited) if visited else 0.0,
        overall_mean=float(fids.mean()),
        standard_errors=per_se,
        seed=seed,
        strategy=strat.name,
    )


def no_signalling_check(
    s: Scenario, strat, trials: int = 10, seed: int = 0
) -> float:
    """Max trace distance of any slot between different summons choices.

    Planning is replayed with identical randomness while the summoned
    index varies; any dependence of slot i on the summons is signalling.
    Compliant strategies cannot express such dependence, so the result
    is zero up to floating point.  The peeking test double exposes the
    summoned index to planning and must be flagged.
    """
    strat.applicable(s)
    n = s.num_candidates
    peek = getattr(strat, "plan_with_summons", None)

    def slots_for(psi: PureState, trial: int, summoned: int):
        rng = _trial_rng(seed, trial * 2 + 1)
        if peek is not None:
            return peek(s, psi, rng, summoned).slots
        return strat.plan(s, psi, rng).slots

    worst = 0.0
    for trial in range(trials):
        psi = haar_sample(s.d, _trial_rng(seed, trial * 2))
        for i in range(n):
            alt = (i + 1) % n
            if alt == i:
                continue
            a = slots_for(psi, trial, summoned=i)[i]
            b = slots_for(psi, trial, summoned=alt)[i]
            worst = max(worst, trace_distance(a, b))
    return worst

"""Feasibility classification and compliance bounds for summoning scenarios.

Feasible: the state can be physically routed to every candidate (free
regimes, or all candidates on one causal chain).  Infeasible: two
delayed return points have disjoint causal pasts on the candidate slice,
so compliance at both would require two independent copies.  Everything
else is Undetermined; sharper conditions are not attempted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .quantum import cloning_fidelity
from .scenario import Scenario, Variant, errors, return_points, validate
from .spacetime import INTERVAL_TOL, Physics, Spacetime, causally_precedes

MAX_CLIQUE_CANDIDATES = 16


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Verdict:
    status: Status
    chain: tuple[int, ...] | None = None  # candidate order, Feasible only
    pair: tuple[int, int] | None = None  # disjoint pair, Infeasible only

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "chain": list(self.chain) if self.chain is not None else None,
            "pair": list(self.pair) if self.pair is not None else None,
        }


@dataclass(frozen=True)
class ComplianceBounds:
    p_lower: float  # achieved by a built-in strategy
    p_upper: float  # ceiling from the symmetric-cloning argument
    clique_size: int

    def to_dict(self) -> dict:
        return {
            "p_lower": self.p_lower,
            "p_upper": self.p_upper,
            "clique_size": self.clique_size,
        }


def _require_valid(s: Scenario) -> None:
    errs = errors(validate(s))
    if errs:
        raise ValueError("invalid scenario: " + "; ".join(f.message for f in errs))


def disjoint_pair(s: Scenario, i: int, j: int) -> bool:
    """Whether the slice-restricted causal pasts of R_i and R_j are disjoint.

    On the candidate slice each past is a spatial ball of radius delta
    around the candidate, so disjointness is |x_i - x_j| > 2 delta.  With
    delta = 0 this is spacelike separation of Q_i and Q_j.
    """
    if s.variant is not Variant.FRAME_SLICE or s.slice_time() is None:
        raise ValueError("disjoint-past test needs candidates on one time slice")
    if s.regime.spacetime is not Spacetime.MINKOWSKI or s.regime.physics is not Physics.QUANTUM:
        raise ValueError("disjoint-past test applies to the Minkowski-quantum regime")
    qi, qj = s.candidates[i], s.candidates[j]
    sep = sum((a - b) ** 2 for a, b in zip(qi.x, qj.x)) ** 0.5
    return sep > 2.0 * s.delta + INTERVAL_TOL


def _chain_order(s: Scenario) -> tuple[int, ...] | None:
    """Total causal order over candidates starting from P, or None."""
    order = sorted(range(s.num_candidates), key=lambda i: s.candidates[i].t)
    if not causally_precedes(s.P, s.candidates[order[0]], s.regime):
        return None
    for a, b in zip(order, order[1:]):
        if not causally_precedes(s.candidates[a], s.candidates[b], s.regime):
            return None
    for rp in return_points(s):
        if not causally_precedes(s.candidates[rp.candidate_index], rp.R, s.regime):
            return None
    return tuple(order)


def _disjoint_graph(s: Scenario) -> list[set[int]] | None:
    """Adjacency sets of the disjoint-pair graph, or None when not applicable."""
    applicable = (
        s.variant is Variant.FRAME_SLICE
        and s.slice_time() is not None
        and s.regime.spacetime is Spacetime.MINKOWSKI
        and s.regime.physics is Physics.QUANTUM
    )
    if not applicable:
        return None
    n = s.num_candidates
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if disjoint_pair(s, i, j):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _max_clique(adj: list[set[int]]) -> list[int]:
    """Exact maximum clique by branch and bound (small graphs only)."""
    n = len(adj)
    if n > MAX_CLIQUE_CANDIDATES:
        raise ValueError(f"clique search capped at {MAX_CLIQUE_CANDIDATES} candidates")
    best: list[int] = []

    def expand(clique: list[int], cand: set[int]) -> None:
        nonlocal best
        if len(clique) + len(cand) <= len(best):
            return
        if not cand:
            if len(clique) > len(best):
                best = list(clique)
            return
        for v in sorted(cand):
            cand = cand - {v}
            expand(clique + [v], cand & adj[v])
            if len(clique) + len(cand) <= len(best):
                return

    expand([], set(range(n)))
    return best


def classify(s: Scenario) -> Verdict:
    """Feasible / Infeasible / Undetermined per the sufficient conditions."""
    _require_valid(s)
    if s.regime.physics is Physics.CLASSICAL or s.regime.spacetime is Spacetime.GALILEAN:
        # Perfect copying or instantaneous routing: any order works.
        return Verdict(status=Status.FEASIBLE, chain=tuple(range(s.num_candidates)))
    chain = _chain_order(s)
    if chain is not None:
        return Verdict(status=Status.FEASIBLE, chain=chain)
    adj = _disjoint_graph(s)
    if adj is not None:
        for i in range(s.num_candidates):
            for j in sorted(adj[i]):
                if j > i:
                    return Verdict(status=Status.INFEASIBLE, pair=(i, j))
    return Verdict(status=Status.UNDETERMINED)


def compliance_bounds(s: Scenario) -> ComplianceBounds:
    """Guaranteed-fidelity bounds for Minkowski-quantum scenarios.

    The ceiling is the symmetric 1->m cloning fidelity for the largest
    set of mutually disjoint candidates; the floor is what the clone-and
    -distribute strategy guarantees at every candidate.
    """
    _require_valid(s)
    if s.regime.spacetime is not Spacetime.MINKOWSKI or s.regime.physics is not Physics.QUANTUM:
        raise ValueError("compliance bounds apply to the Minkowski-quantum regime")
    verdict = classify(s)
    if verdict.status is Status.FEASIBLE:
        return ComplianceBounds(p_lower=1.0, p_upper=1.0, clique_size=1)
    adj = _disjoint_graph(s)
    m = len(_max_clique(adj)) if adj is not None else 1
    m = max(m, 1)
    p_upper = 1.0 if m <= 1 else cloning_fidelity(s.d, m)
    p_lower = cloning_fidelity(s.d, s.num_candidates)
    return ComplianceBounds(p_lower=p_lower, p_upper=p_upper, clique_size=m)

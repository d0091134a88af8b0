#!/usr/bin/env python3
"""Sweep every demo scenario against every applicable strategy.

Prints the verdict, compliance bounds where defined, and Monte Carlo
worst/overall fidelities per strategy.  Useful as a one-screen summary
of which regimes admit perfect summoning and which are capped by the
cloning ceiling.

Run:  python3 scripts/regime_sweep.py [--trials N] [--seed S]
"""

import argparse

from summoner.feasibility import classify, compliance_bounds
from summoner.scenario import DEMO_NAMES, make_demo
from summoner.spacetime import Physics, Spacetime
from summoner.strategies import builtin, simulate

ALL_STRATEGIES = [
    "route_chain", "clone_distribute", "measure_broadcast",
    "galilean_route", "classical_broadcast", "hold_at:0",
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for name in DEMO_NAMES:
        s = make_demo(name)
        v = classify(s)
        line = f"{name}: {v.status.value}"
        if v.chain is not None:
            line += f" chain={list(v.chain)}"
        if v.pair is not None:
            line += f" pair={v.pair}"
        if (s.regime.spacetime is Spacetime.MINKOWSKI
                and s.regime.physics is Physics.QUANTUM):
            b = compliance_bounds(s)
            line += f"  p in [{b.p_lower:.4f}, {b.p_upper:.4f}] (m={b.clique_size})"
        print(line)
        for strat_name in ALL_STRATEGIES:
            strat = builtin(strat_name)
            try:
                strat.applicable(s)
            except ValueError:
                continue
            rep = simulate(s, strat, trials=args.trials, seed=args.seed)
            print(f"    {strat_name:20s} worst={rep.worst_candidate_mean:.4f} "
                  f"overall={rep.overall_mean:.4f}")
        print()


if __name__ == "__main__":
    main()

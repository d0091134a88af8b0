"""Command-line front end: validate, classify, bound, simulate, demo.

Exit codes: 0 success, 1 malformed input, 2 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from . import __version__
from .feasibility import classify, compliance_bounds
from .scenario import DEMO_NAMES, Scenario, load, make_demo, save, validate
from .strategies import builtin, simulate

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_DOMAIN = 2


def _load_scenario(path: str) -> Scenario:
    try:
        return load(path)
    except FileNotFoundError:
        raise MalformedInput(f"cannot read {path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(top level)"
        raise MalformedInput(f"{path}: schema violation at {where}: {exc.message}") from None


class MalformedInput(Exception):
    pass


def _base_report(s: Scenario, seed: int) -> dict:
    return {
        "tool_version": __version__,
        "seed": seed,
        "scenario": s.to_dict(),
    }


def _emit(report: dict, human: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(human)


def cmd_validate(args) -> int:
    s = _load_scenario(args.scenario)
    findings = validate(s)
    report = _base_report(s, s.seed)
    report["findings"] = [{"level": f.level, "message": f.message} for f in findings]
    lines = [f"{f.level.upper()}: {f.message}" for f in findings] or ["OK: no findings"]
    _emit(report, "\n".join(lines), args.json)
    return EXIT_DOMAIN if any(f.level == "error" for f in findings) else EXIT_OK


def cmd_classify(args) -> int:
    s = _load_scenario(args.scenario)
    verdict = classify(s)
    report = _base_report(s, s.seed)
    report["verdict"] = verdict.to_dict()
    if verdict.chain is not None:
        human = f"FEASIBLE chain={list(verdict.chain)}"
    elif verdict.pair is not None:
        human = f"INFEASIBLE pair=({verdict.pair[0]}, {verdict.pair[1]})"
    else:
        human = "UNDETERMINED"
    _emit(report, human, args.json)
    return EXIT_OK


def cmd_bound(args) -> int:
    s = _load_scenario(args.scenario)
    bounds = compliance_bounds(s)
    report = _base_report(s, s.seed)
    report["verdict"] = classify(s).to_dict()
    report["bounds"] = bounds.to_dict()
    human = (
        f"p_lower={bounds.p_lower:.10g} p_upper={bounds.p_upper:.10g} "
        f"clique_size={bounds.clique_size}"
    )
    _emit(report, human, args.json)
    return EXIT_OK


def cmd_simulate(args) -> int:
    s = _load_scenario(args.scenario)
    strat = builtin(args.strategy)
    sim = simulate(
        s, strat, trials=args.trials, seed=args.seed,
        binary_verification=args.binary_verification,
    )
    report = _base_report(s, args.seed)
    report["sim"] = sim.to_dict()
    human = (
        f"strategy={sim.strategy} trials={sim.trials} seed={sim.seed}\n"
        f"overall_mean={sim.overall_mean:.6f} "
        f"worst_candidate_mean={sim.worst_candidate_mean:.6f}\n"
        "per_candidate="
        + " ".join(f"{m:.6f}" for m in sim.per_candidate_mean_fidelity)
    )
    _emit(report, human, args.json)
    return EXIT_OK


def cmd_demo(args) -> int:
    try:
        s = make_demo(args.name)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MALFORMED
    if args.out:
        save(s, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(s.to_dict(), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="summoner",
        description="Feasibility analysis and simulation of state-summoning scenarios",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file")
    p.add_argument("scenario")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="feasible / infeasible / undetermined")
    p.add_argument("scenario")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bound", help="compliance-fidelity bounds")
    p.add_argument("scenario")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("simulate", help="Monte Carlo a strategy")
    p.add_argument("scenario")
    p.add_argument("--strategy", required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--binary-verification", action="store_true",
                   help="score each trial by a sampled pass/fail instead of fidelity")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("demo", help="write a canonical demo scenario")
    p.add_argument("name", help=f"one of: {', '.join(DEMO_NAMES)}")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

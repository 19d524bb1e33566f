"""Command-line entry point: capacity checks, simulations, figure reproduction."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .capacity import lambda_q_budget, verdict_to_dict
from .matching import EnumerationCapError, enumerate_matchings, enumerate_service_vectors
from .model import (
    ArrivalSpec,
    SCENARIO_NAMES,
    SpecError,
    builtin_scenario,
    parse_spec,
)
from .policy import POLICY_NAMES
from .sim import SimConfig, run, write_trace_csv
from .simplex import SolverError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2

DEFAULT_SLOTS = 1_000_000


@dataclass(frozen=True)
class ReproScenario:
    name: str
    scenario: str
    policy: str
    slots: int
    seed: int
    expected: str  # qualitative outcome: "stable" or "growing"


# fig7 in the paper's text order is split into the Max-Weight run (fig7a)
# and the queue-length-only run (fig7b).
REPRO_SCENARIOS = {
    r.name: r
    for r in (
        ReproScenario("fig3", "switch4-unstable", "maxweight", DEFAULT_SLOTS, 1003, "growing"),
        ReproScenario("fig4", "switch4-stable", "maxweight", DEFAULT_SLOTS, 1004, "stable"),
        ReproScenario("fig5", "net5-low", "maxweight", DEFAULT_SLOTS, 1005, "stable"),
        ReproScenario("fig6", "net5-low", "lqf", DEFAULT_SLOTS, 1006, "stable"),
        ReproScenario("fig7a", "net5-high", "maxweight", DEFAULT_SLOTS, 1007, "stable"),
        ReproScenario("fig7b", "net5-high", "lqf", DEFAULT_SLOTS, 1008, "growing"),
    )
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_spec(args) -> tuple:
    if args.scenario:
        spec, arrivals = builtin_scenario(args.scenario)
    elif args.spec:
        spec, arrivals = parse_spec(Path(args.spec).read_text(encoding="utf-8"))
    else:
        raise SpecError("input", "give --spec PATH or --scenario NAME")
    if getattr(args, "rates", None):
        rates = tuple(float(x) for x in args.rates.split(","))
        arrivals = ArrivalSpec(kind="bernoulli", rates=rates)
        if len(rates) != spec.num_classes:
            raise SpecError("rates", f"expected {spec.num_classes} values")
    return spec, arrivals


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="path to a JSON network spec file")
    p.add_argument("--scenario", choices=SCENARIO_NAMES, help="built-in scenario name")
    p.add_argument("--rates", help="comma-separated arrival rates overriding the spec")


def cmd_check(args) -> int:
    spec, arrivals = _load_spec(args)
    verdict = lambda_q_budget(spec, arrivals.rates)
    print(json.dumps(verdict_to_dict(verdict), indent=None if args.json else 2))
    return EXIT_OK


def cmd_matchings(args) -> int:
    spec, _ = _load_spec(args)
    matchings = enumerate_matchings(spec)
    vectors = enumerate_service_vectors(spec)
    print(
        json.dumps(
            {
                "matchings": [list(pi) for pi in matchings],
                "num_service_vectors": len(vectors),
            }
        )
    )
    return EXIT_OK


def _simulate(spec, arrivals, policy, slots, seed, sample_every, out_dir, tag, json_out):
    config = SimConfig(slots=slots, seed=seed, sample_every=sample_every, policy=policy)
    result = run(config, spec, arrivals)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{tag}.csv"
    json_path = out / f"{tag}.json"
    write_trace_csv(csv_path, result)
    json_path.write_text(
        json.dumps(result.summary.to_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    line = {
        "tag": tag,
        "policy": policy,
        "slots": slots,
        "mean_S": result.summary.mean_S,
        "trend": result.summary.trend["verdict"],
        "trace": str(csv_path),
        "summary": str(json_path),
    }
    print(json.dumps(line) if json_out else f"{tag}: trend={line['trend']} mean_S={line['mean_S']:.3f} -> {csv_path}")
    return result


def cmd_simulate(args) -> int:
    spec, arrivals = _load_spec(args)
    if args.slots < 1:
        raise SpecError("slots", "must be positive")
    tag = args.scenario or Path(args.spec).stem
    _simulate(
        spec,
        arrivals,
        args.policy,
        args.slots,
        args.seed,
        args.sample_every,
        args.out,
        f"{tag}-{args.policy}",
        args.json,
    )
    return EXIT_OK


def cmd_reproduce(args) -> int:
    names = list(REPRO_SCENARIOS) if args.name == "all" else [args.name]
    index = {}
    for name in names:
        r = REPRO_SCENARIOS[name]
        spec, arrivals = builtin_scenario(r.scenario)
        slots = args.slots or r.slots
        result = _simulate(
            spec, arrivals, r.policy, slots, r.seed, max(1, slots // 1000), args.out, name, args.json
        )
        index[name] = {
            "scenario": r.scenario,
            "policy": r.policy,
            "slots": slots,
            "seed": r.seed,
            "expected": r.expected,
            "trend": result.summary.trend["verdict"],
            "mean_S": result.summary.mean_S,
        }
    if args.name == "all":
        index_path = Path(args.out) / "index.json"
        index_path.write_text(json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {index_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qnetsched", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="capacity verdict for an arrival-rate vector")
    _add_input_args(p)
    p.add_argument("--json", action="store_true", help="compact machine-readable output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("matchings", help="print the matching set and service-vector count")
    _add_input_args(p)
    p.set_defaults(func=cmd_matchings)

    p = sub.add_parser("simulate", help="run one seeded simulation")
    _add_input_args(p)
    p.add_argument("--policy", choices=POLICY_NAMES, default="maxweight")
    p.add_argument("--slots", type=int, default=DEFAULT_SLOTS)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sample-every", type=int, default=1000)
    p.add_argument("--out", default="out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "reproduce",
        help="rerun a figure experiment (fig3 fig4 fig5 fig6 fig7a fig7b, or all)",
    )
    p.add_argument("name", choices=[*REPRO_SCENARIOS, "all"])
    p.add_argument("--out", default="out")
    p.add_argument("--slots", type=int, default=None, help="override the default slot count")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, EnumerationCapError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface.

Subcommands:

* ``caga bench``   - run one of the benchmark functions over many seeds
* ``caga truss``   - run a truss sizing problem (packaged or user model file)
* ``caga sweep``   - vary one parameter around the baseline, one suite per value
* ``caga demo-ca`` - render the elementary cellular automaton demo

Every GA setting starts from the selector's baseline configuration and can be
overridden first by a plain-text config file (``key = value`` lines, keys as
listed in ``--help``) and then by the equivalent command-line flag; flags win.
Exit code 0 on success, 2 on any reported error.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import replace
from pathlib import Path

from . import cademo
from .bench import (
    PenaltySettings,
    SWEEP_PARAMETERS,
    apply_parameter,
    baseline_config,
    export_history,
    run_suite,
    summary_text,
    sweep,
    write_summary,
)
from .engine import RunConfig
from .errors import CagaError, ConfigError
from .operators import CrossoverKind, CrossoverPlan, MutationConfig, MutationVersion

_CROSSOVER_NAMES = {
    "one-point": CrossoverKind.ONE_POINT,
    "two-point": CrossoverKind.TWO_POINT,
    "var": CrossoverKind.VARIABLE_TO_VARIABLE,
}
_VERSION_NAMES = {
    "ordinary": MutationVersion.ORDINARY,
    "gaussian": MutationVersion.GAUSSIAN,
}

# Config-file keys mirror the CLI flags (dashes become underscores).
_GA_KEYS = ("pop", "evals", "crossover", "crossover_switch", "crossover_late",
            "regular_period", "regular_count", "regular_version",
            "best_period", "best_version", "hyper_period", "gaussian_from",
            "reinit_period", "reinit_start", "archive_capacity", "seed", "runs")
_PENALTY_KEYS = ("penalty_early", "penalty_late", "penalty_switch", "penalty_tolerance")


def _add_ga_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pop", type=int, help="population size (lattice cells)")
    parser.add_argument("--evals", type=int, help="evaluation budget per run")
    parser.add_argument("--crossover", choices=sorted(_CROSSOVER_NAMES))
    parser.add_argument("--crossover-switch", type=int, metavar="STEP",
                        help="generation at which --crossover-late takes over")
    parser.add_argument("--crossover-late", choices=sorted(_CROSSOVER_NAMES))
    parser.add_argument("--regular-period", type=int, metavar="N",
                        help="regular mutation every N generations (0 disables)")
    parser.add_argument("--regular-count", metavar="N[:M]",
                        help="mutation rounds per firing, fixed or an inclusive range")
    parser.add_argument("--regular-version", choices=sorted(_VERSION_NAMES))
    parser.add_argument("--best-period", type=int, metavar="N",
                        help="best-individual mutation every N generations (0 disables)")
    parser.add_argument("--best-version", choices=sorted(_VERSION_NAMES))
    parser.add_argument("--hyper-period", type=int, metavar="N",
                        help="hyper-mutation every N generations (0 disables)")
    parser.add_argument("--gaussian-from", type=int, metavar="STEP",
                        help="switch both mutation versions to gaussian at this step")
    parser.add_argument("--reinit-period", type=int, metavar="N",
                        help="reinitialization every N generations (0 disables)")
    parser.add_argument("--reinit-start", type=float, metavar="FRAC",
                        help="fraction of the budget after which reinitialization may fire")
    parser.add_argument("--archive-capacity", type=int)
    parser.add_argument("--runs", type=int, help="independent runs (default 1)")
    parser.add_argument("--seed", type=int, help="base RNG seed (default 1)")
    parser.add_argument("--config", metavar="FILE",
                        help="key = value settings file; flags override it")
    parser.add_argument("--out", metavar="CSV", help="write per-generation history CSV")
    parser.add_argument("--summary", metavar="FILE", help="write key=value summary file")


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line is not 'key = value': {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _GA_KEYS + _PENALTY_KEYS:
            raise ConfigError(f"unknown config key '{key}'")
        values[key] = value.strip()
    return values


def _parse_count(text: str) -> int | tuple[int, int]:
    if ":" in text:
        lo, _, hi = text.partition(":")
        return (int(lo), int(hi))
    return int(text)


def _parse_period(value: int | str | None) -> int | None:
    if value is None:
        return None
    value = int(value)
    return None if value == 0 else value


def _parse_penalty_settings(settings: dict[str, str]) -> PenaltySettings | None:
    if not any(k in settings for k in _PENALTY_KEYS):
        return None
    base = PenaltySettings()
    def quintuple(text: str) -> tuple[float, float, float, float, float]:
        parts = tuple(float(p) for p in text.split(","))
        if len(parts) != 5:
            raise ConfigError(f"expected 'p1,p2,p3,v1,v2', got {text!r}")
        return parts
    if "penalty_early" in settings:
        base = replace(base, early=quintuple(settings["penalty_early"]))
    if "penalty_late" in settings:
        base = replace(base, late=quintuple(settings["penalty_late"]))
    if "penalty_switch" in settings:
        base = replace(base, switch_fraction=float(settings["penalty_switch"]))
    if "penalty_tolerance" in settings:
        steps = []
        for item in settings["penalty_tolerance"].split(","):
            frac, _, mult = item.partition(":")
            steps.append((float(frac), float(mult)))
        base = replace(base, tolerance=tuple(steps))
    return base


def _merged_settings(args: argparse.Namespace) -> dict[str, str]:
    """Config-file values overlaid with explicitly given CLI flags."""
    settings = _read_config_file(args.config) if getattr(args, "config", None) else {}
    for key in _GA_KEYS + _PENALTY_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = str(value)
    return settings


def _configure(selector: str, settings: dict[str, str]) -> RunConfig:
    config = baseline_config(selector)
    mutation = config.mutation
    crossover = config.crossover

    if "regular_period" in settings:
        mutation = replace(mutation, regular_period=_parse_period(settings["regular_period"]))
    if "regular_count" in settings:
        mutation = replace(mutation, regular_count=_parse_count(settings["regular_count"]))
    if "regular_version" in settings:
        mutation = replace(mutation, regular_version=_VERSION_NAMES[settings["regular_version"]])
    if "best_period" in settings:
        mutation = replace(mutation, best_period=_parse_period(settings["best_period"]))
    if "best_version" in settings:
        mutation = replace(mutation, best_version=_VERSION_NAMES[settings["best_version"]])
    if "hyper_period" in settings:
        mutation = replace(mutation, hyper_period=_parse_period(settings["hyper_period"]))
    if "gaussian_from" in settings:
        mutation = replace(mutation, gaussian_from_step=_parse_period(settings["gaussian_from"]))

    if "crossover" in settings:
        crossover = CrossoverPlan(_CROSSOVER_NAMES[settings["crossover"]])
    if "crossover_switch" in settings or "crossover_late" in settings:
        if not ("crossover_switch" in settings and "crossover_late" in settings):
            raise ConfigError("crossover_switch and crossover_late must be given together")
        crossover = CrossoverPlan(crossover.kind,
                                  switch_step=int(settings["crossover_switch"]),
                                  late_kind=_CROSSOVER_NAMES[settings["crossover_late"]])

    config = replace(config, mutation=mutation, crossover=crossover)
    if "pop" in settings:
        config = replace(config, population_size=int(settings["pop"]))
    if "evals" in settings:
        config = replace(config, evaluation_budget=int(settings["evals"]))
    if "reinit_period" in settings:
        config = replace(config, reinit_period=_parse_period(settings["reinit_period"]))
    if "reinit_start" in settings:
        config = replace(config, reinit_start_fraction=float(settings["reinit_start"]))
    if "archive_capacity" in settings:
        config = replace(config, archive_capacity=int(settings["archive_capacity"]))
    if "seed" in settings:
        config = replace(config, seed=int(settings["seed"]))
    penalty = _parse_penalty_settings(settings)
    if penalty is not None:
        config = replace(config, penalty_overrides=penalty)
    return config


def _run_and_report(config: RunConfig, settings: dict[str, str],
                    args: argparse.Namespace) -> int:
    runs = int(settings.get("runs", 1))
    stats = run_suite(config, runs, config.seed)
    print(summary_text(stats))
    if args.out:
        export_history(stats, args.out)
        print(f"history written to {args.out}")
    if args.summary:
        write_summary(stats, args.summary)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    settings = _merged_settings(args)
    config = _configure(args.fn, settings)
    return _run_and_report(config, settings, args)


def _cmd_truss(args: argparse.Namespace) -> int:
    settings = _merged_settings(args)
    config = _configure(args.model, settings)
    return _run_and_report(config, settings, args)


def _parse_vary(text: str) -> tuple[str, list[float]]:
    if "=" not in text:
        raise ConfigError("expected --vary NAME=LO..HI or NAME=V1,V2,...")
    name, _, spec_text = text.partition("=")
    name = name.strip()
    spec_text = spec_text.strip()
    if ".." in spec_text:
        lo, _, hi = spec_text.partition("..")
        values = [float(v) for v in range(int(lo), int(hi) + 1)]
    else:
        values = [float(v) for v in spec_text.split(",")]
    if not values:
        raise ConfigError(f"no sweep values in {text!r}")
    return name, values


def _cmd_sweep(args: argparse.Namespace) -> int:
    settings = _merged_settings(args)
    config = _configure(args.fn, settings)
    name, values = _parse_vary(args.vary)
    runs = int(settings.get("runs", 10))
    results = sweep(config, name, values, runs, config.seed)
    header = f"{name:>14}  {'mean':>14}  {'std':>12}  {'best':>14}"
    print(header)
    lines = ["parameter,value,mean,std,best"]
    for value, stats in results:
        print(f"{value:>14g}  {stats.mean:>14.6g}  {stats.std:>12.6g}  {stats.best:>14.6g}")
        lines.append(f"{name},{value!r},{stats.mean!r},{stats.std!r},{stats.best!r}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write("\n".join(lines) + "\n")
        print(f"sweep written to {args.out}")
    return 0


def _cmd_demo_ca(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    row = cademo.random_row(args.width, rng, args.fill)
    history = cademo.evolve(cademo.figure2_rule(), row, args.steps,
                            perturb_rate=args.perturb, rng=rng)
    cademo.render(history, args.out, text_path=args.txt)
    print(f"{len(history)}x{args.width} history written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caga",
        description="Compact cellular-automata genetic algorithm harness.")
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a benchmark function suite")
    bench.add_argument("--fn", required=True, metavar="f1..f10")
    _add_ga_flags(bench)
    bench.set_defaults(handler=_cmd_bench)

    truss = sub.add_parser("truss", help="run a truss sizing suite")
    truss.add_argument("--model", required=True,
                       metavar="ten_bar|seventeen_bar|FILE.truss")
    _add_ga_flags(truss)
    for key in _PENALTY_KEYS:
        truss.add_argument(f"--{key.replace('_', '-')}", metavar="SPEC")
    truss.set_defaults(handler=_cmd_truss)

    sweep_p = sub.add_parser("sweep", help="vary one parameter around the baseline")
    sweep_p.add_argument("--fn", required=True, metavar="f1..f10")
    sweep_p.add_argument("--vary", required=True, metavar="NAME=LO..HI",
                         help=f"parameter to vary, one of {', '.join(SWEEP_PARAMETERS)}")
    _add_ga_flags(sweep_p)
    sweep_p.set_defaults(handler=_cmd_sweep)

    demo = sub.add_parser("demo-ca", help="render the cellular automaton demo")
    demo.add_argument("--width", type=int, default=200)
    demo.add_argument("--steps", type=int, default=50)
    demo.add_argument("--perturb", type=float, default=0.0,
                      help="mean number of random cell flips per step")
    demo.add_argument("--fill", type=float, default=0.5,
                      help="density of the random seed row")
    demo.add_argument("--seed", type=int, default=1)
    demo.add_argument("--out", required=True, metavar="FILE.pbm")
    demo.add_argument("--txt", metavar="FILE.txt", help="also dump the 0/1 grid")
    demo.set_defaults(handler=_cmd_demo_ca)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (CagaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Experiment harness: baseline configurations, multi-run statistics, CSV export.

A selector string names the problem: ``f1``..``f10`` for the benchmark
functions, ``ten_bar``/``seventeen_bar`` (or a model file path) for the truss
problems.  ``baseline_config`` returns the reference settings for each
selector; ``run_suite`` executes independent seeded runs and aggregates the
final raw objective values.  Truss runs report their best design that is
feasible against the true (unrelaxed) limits, not the best penalized value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from . import objectives
from .engine import RunConfig, RunResult, run
from .errors import ConfigError
from .genome import decode
from .operators import CrossoverKind, CrossoverPlan, MutationConfig, MutationVersion
from .objectives import Sense
from .truss import (
    FEASIBLE_VIOLATION,
    PenaltyConfig,
    PenaltySegments,
    TrussModel,
    analyze,
    benchmark_model,
    default_penalty_config,
    load_model,
    penalized_weight,
    true_violation,
)
from .truss.model import BENCHMARK_NAMES

FUNCTION_SELECTORS = {f"f{i}": i for i in objectives.OBJECTIVE_IDS}


@dataclass(frozen=True)
class PenaltySettings:
    """Fraction-based penalty overrides, resolved against the run length.

    ``early``/``late`` are (p1, p2, p3, v1, v2) tuples applied to both
    constraint channels; ``tolerance`` maps run fractions to allowable
    multipliers.
    """

    early: tuple[float, float, float, float, float] = (1.0, 5.0, 1000.0, 0.01, 0.10)
    late: tuple[float, float, float, float, float] = (5.0, 25.0, 10000.0, 0.001, 0.01)
    switch_fraction: float = 0.5
    tolerance: tuple[tuple[float, float], ...] = ((0.0, 1.0005), (0.4, 1.00025), (0.7, 1.0))

    def resolve(self, total_generations: int) -> PenaltyConfig:
        early = PenaltySegments(*self.early)
        late = PenaltySegments(*self.late)
        steps = tuple((max(1, round(f * total_generations)), m) for f, m in self.tolerance)
        return PenaltyConfig(
            displacement_early=early,
            displacement_late=late,
            stress_early=early,
            stress_late=late,
            switch_generation=max(1, round(self.switch_fraction * total_generations)),
            tolerance_steps=steps,
        )


@dataclass(frozen=True)
class SuiteStats:
    """Aggregate of one suite: per-run finals plus mean/std/best."""

    selector: str
    sense: Sense
    seeds: tuple[int, ...]
    finals: tuple[float, ...]
    mean: float
    std: float
    best: float
    histories: tuple[tuple[float, ...], ...]

    @classmethod
    def from_runs(cls, selector: str, sense: Sense, seeds: Sequence[int],
                  finals: Sequence[float],
                  histories: Sequence[Sequence[float]]) -> "SuiteStats":
        n = len(finals)
        if n == 0:
            mean = std = best = float("nan")
        else:
            mean = sum(finals) / n
            std = math.sqrt(sum((v - mean) ** 2 for v in finals) / n)
            best = max(finals) if sense is Sense.MAX else min(finals)
        return cls(selector, sense, tuple(seeds), tuple(finals), mean, std, best,
                   tuple(tuple(h) for h in histories))


def is_truss_selector(selector: str) -> bool:
    return selector in BENCHMARK_NAMES or selector.endswith(".truss")


def _resolve_model(selector: str) -> TrussModel:
    if selector in BENCHMARK_NAMES:
        return benchmark_model(selector)
    return load_model(selector)


def selector_sense(selector: str) -> Sense:
    if selector in FUNCTION_SELECTORS:
        return objectives.spec(FUNCTION_SELECTORS[selector]).sense
    if is_truss_selector(selector):
        return Sense.MIN
    raise ConfigError(f"unknown objective selector '{selector}'")


def baseline_config(selector: str) -> RunConfig:
    """The reference run settings for a selector.

    Functions: five cells, one Gaussian regular mutation per generation,
    Gaussian best-individual mutation every two generations,
    variable-to-variable crossover, reinitialization every three generations
    once a quarter of the budget is spent - except f2, which uses one-point
    crossover with heavy ordinary mutation (five digits per variable per
    generation), best mutation every ten generations and late
    reinitialization.  Budgets: 10000 evaluations for f1/f2, 20000 for f3-f7,
    5000 for f8-f10 (with reinitialization from half the budget).

    Trusses: 10500 evaluations (ten_bar) or 12500 (seventeen_bar), one-point
    crossover and ordinary mutation both switching to variable-to-variable
    and Gaussian after a third of the run, best mutation every five
    generations, hyper-mutation every ten, no reinitialization.
    """
    if selector in FUNCTION_SELECTORS:
        fid = FUNCTION_SELECTORS[selector]
        ospec = objectives.spec(fid)
        if fid in (1, 2):
            budget = 10_000
        elif fid <= 7:
            budget = 20_000
        else:
            budget = 5_000
        if fid == 2:
            return RunConfig(
                variables=ospec.variables,
                evaluation_budget=budget,
                population_size=5,
                crossover=CrossoverPlan(CrossoverKind.ONE_POINT),
                mutation=MutationConfig(
                    regular_period=1,
                    regular_count=5,
                    regular_version=MutationVersion.ORDINARY,
                    best_period=10,
                    best_version=MutationVersion.ORDINARY,
                ),
                reinit_period=3,
                reinit_start_fraction=0.75,
                objective=selector,
            )
        return RunConfig(
            variables=ospec.variables,
            evaluation_budget=budget,
            population_size=5,
            crossover=CrossoverPlan(CrossoverKind.VARIABLE_TO_VARIABLE),
            mutation=MutationConfig(
                regular_period=1,
                regular_count=1,
                regular_version=MutationVersion.GAUSSIAN,
                best_period=2,
                best_version=MutationVersion.GAUSSIAN,
            ),
            reinit_period=3,
            reinit_start_fraction=0.5 if fid >= 8 else 0.25,
            objective=selector,
        )

    if is_truss_selector(selector):
        model = _resolve_model(selector)
        budget = {"ten_bar": 10_500, "seventeen_bar": 12_500}.get(model.name, 10_500)
        total = budget // 5
        switch = total // 3
        return RunConfig(
            variables=model.variable_specs(),
            evaluation_budget=budget,
            population_size=5,
            crossover=CrossoverPlan(CrossoverKind.ONE_POINT, switch_step=switch,
                                    late_kind=CrossoverKind.VARIABLE_TO_VARIABLE),
            mutation=MutationConfig(
                regular_period=1,
                regular_count=1,
                regular_version=MutationVersion.ORDINARY,
                best_period=5,
                best_version=MutationVersion.ORDINARY,
                hyper_period=10,
                gaussian_from_step=switch,
            ),
            reinit_period=None,
            objective=selector,
        )

    raise ConfigError(f"unknown objective selector '{selector}'")


class _TrussObjective:
    """Penalized-weight fitness that records the best truly feasible design."""

    def __init__(self, model: TrussModel, config: PenaltyConfig):
        self.model = model
        self.config = config
        self.best_weight = math.inf
        self.best_areas: tuple[float, ...] | None = None

    def __call__(self, values: tuple[float, ...], round_index: int) -> float:
        result = analyze(self.model, values)
        weight = penalized_weight(self.model, values, self.config, round_index, result)
        if (result.weight < self.best_weight
                and true_violation(self.model, result) <= FEASIBLE_VIOLATION):
            self.best_weight = result.weight
            self.best_areas = values
        return -weight


def run_single(config: RunConfig, seed: int) -> tuple[RunResult, float, tuple[float, ...]]:
    """One run: the engine result, the final raw value and the raw history.

    For function selectors the final raw value is the best raw objective; for
    trusses it is the best feasible weight found during the run (+inf when no
    evaluated design met the true limits).
    """
    selector = config.objective
    if selector is None:
        raise ConfigError("run config carries no objective selector")

    if selector in FUNCTION_SELECTORS:
        fid = FUNCTION_SELECTORS[selector]
        sense = objectives.spec(fid).sense
        fitness = objectives.fitness_function(fid)
        result = run(config, lambda values, _round: fitness(values), seed)
        sign = 1.0 if sense is Sense.MAX else -1.0
        history = tuple(sign * f for f in result.history)
        return result, sign * result.best_fitness, history

    if is_truss_selector(selector):
        model = _resolve_model(selector)
        overrides = config.penalty_overrides
        if overrides is None:
            penalty_config = default_penalty_config(config.generations)
        elif isinstance(overrides, PenaltySettings):
            penalty_config = overrides.resolve(config.generations)
        elif isinstance(overrides, PenaltyConfig):
            penalty_config = overrides
        else:
            raise ConfigError(f"unsupported penalty overrides {type(overrides)!r}")
        objective = _TrussObjective(model, penalty_config)
        result = run(config, objective, seed)
        history = tuple(-f for f in result.history)
        return result, objective.best_weight, history

    raise ConfigError(f"unknown objective selector '{selector}'")


def run_suite(config: RunConfig, n_runs: int, base_seed: int) -> SuiteStats:
    """n independent runs seeded base_seed..base_seed+n-1, aggregated.

    Runs share no state, so they could execute concurrently; results are
    always assembled in seed order, making the outcome identical either way.
    """
    if n_runs < 1:
        raise ConfigError(f"need at least one run, got {n_runs}")
    selector = config.objective or ""
    sense = selector_sense(selector)
    seeds = range(base_seed, base_seed + n_runs)
    finals: list[float] = []
    histories: list[tuple[float, ...]] = []
    for seed in seeds:
        _, final, history = run_single(config, seed)
        finals.append(final)
        histories.append(history)
    return SuiteStats.from_runs(selector, sense, list(seeds), finals, histories)


def export_history(stats: SuiteStats, path: str | Path) -> None:
    """Write ``generation,run_id,best_so_far_raw`` rows ordered by run, then
    generation.  Repeated exports of the same stats are byte-identical."""
    lines = ["generation,run_id,best_so_far_raw"]
    for seed, history in zip(stats.seeds, stats.histories):
        for generation, value in enumerate(history, start=1):
            lines.append(f"{generation},{seed},{value!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write history to {path}: {exc}") from exc


def summary_text(stats: SuiteStats) -> str:
    rows = [
        ("objective", stats.selector),
        ("sense", stats.sense.value),
        ("runs", str(len(stats.finals))),
        ("mean", f"{stats.mean:.6g}"),
        ("std", f"{stats.std:.6g}"),
        ("best", f"{stats.best:.6g}"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def write_summary(stats: SuiteStats, path: str | Path) -> None:
    lines = [
        f"objective={stats.selector}",
        f"sense={stats.sense.value}",
        f"runs={len(stats.finals)}",
        f"mean={stats.mean!r}",
        f"std={stats.std!r}",
        f"best={stats.best!r}",
    ]
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


SWEEP_PARAMETERS = ("pop", "evals", "regular-period", "regular-count",
                    "best-period", "hyper-period", "reinit-period", "reinit-start")


def apply_parameter(config: RunConfig, name: str, value: float) -> RunConfig:
    """Return a copy of the config with one named parameter replaced.

    Integer parameters accept 0 to disable the operator where that makes
    sense (mutation and reinitialization periods).
    """
    def as_period(v: float) -> int | None:
        v = int(v)
        return None if v == 0 else v

    if name == "pop":
        return replace(config, population_size=int(value))
    if name == "evals":
        return replace(config, evaluation_budget=int(value))
    if name == "regular-period":
        return replace(config, mutation=replace(config.mutation, regular_period=as_period(value)))
    if name == "regular-count":
        return replace(config, mutation=replace(config.mutation, regular_count=int(value)))
    if name == "best-period":
        return replace(config, mutation=replace(config.mutation, best_period=as_period(value)))
    if name == "hyper-period":
        return replace(config, mutation=replace(config.mutation, hyper_period=as_period(value)))
    if name == "reinit-period":
        return replace(config, reinit_period=as_period(value))
    if name == "reinit-start":
        return replace(config, reinit_start_fraction=float(value))
    raise ConfigError(f"unknown sweep parameter '{name}'; choose from {SWEEP_PARAMETERS}")


def sweep(config: RunConfig, parameter: str, values: Sequence[float],
          n_runs: int, base_seed: int) -> list[tuple[float, SuiteStats]]:
    """Vary exactly one parameter over ``values``, all else held at ``config``."""
    out = []
    for value in values:
        stats = run_suite(apply_parameter(config, parameter, value), n_runs, base_seed)
        out.append((value, stats))
    return out


def best_design_summary(config: RunConfig, result: RunResult) -> tuple[float, ...]:
    """Decoded design vector of a run's best individual."""
    return decode(result.best_genome, config.variables)

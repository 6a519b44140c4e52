"""Penalized weight objective with staged constraint tightening.

Constraint excess is measured by a dimensionless violation factor: the sum of
Macaulay brackets <|value|/allowable - 1> over a channel (displacements or
stresses).  The penalty is piecewise: the factor picks one of three parameters
by comparing the violation against two thresholds, and the design is charged
``parameter * violation**2`` of extra weight fraction.  Parameters come in an
early and a late set (the late one is stricter), and the allowables themselves
start slightly relaxed and are tightened to their true values on a small
schedule of generations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError
from .analysis import AnalysisResult, analyze
from .model import TrussModel

# A run's reported answer must be feasible to within this true violation.
FEASIBLE_VIOLATION = 1e-4


@dataclass(frozen=True)
class PenaltySegments:
    """The three penalty parameters and the two violation thresholds."""

    p1: float
    p2: float
    p3: float
    v1: float
    v2: float

    def __post_init__(self) -> None:
        if not self.p1 < self.p2 < self.p3:
            raise ConfigError("penalty parameters must increase: p1 < p2 < p3")
        if not 0.0 < self.v1 < self.v2:
            raise ConfigError("violation thresholds must satisfy 0 < v1 < v2")

    def parameter(self, violation: float) -> float:
        if violation < self.v1:
            return self.p1
        if violation < self.v2:
            return self.p2
        return self.p3


@dataclass(frozen=True)
class PenaltyConfig:
    """Per-channel early/late segment sets plus the tolerance schedule.

    ``tolerance_steps`` maps generations to allowable multipliers: each
    ``(generation, multiplier)`` pair activates at that generation and stays
    active until the next pair.  Multipliers must be non-increasing and end
    at 1.0 (the true limits).
    """

    displacement_early: PenaltySegments
    displacement_late: PenaltySegments
    stress_early: PenaltySegments
    stress_late: PenaltySegments
    switch_generation: int
    tolerance_steps: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        if self.switch_generation < 1:
            raise ConfigError("switch generation must be >= 1")
        if not self.tolerance_steps:
            raise ConfigError("at least one tolerance step is required")
        generations = [g for g, _ in self.tolerance_steps]
        multipliers = [m for _, m in self.tolerance_steps]
        if generations != sorted(generations):
            raise ConfigError("tolerance steps must be in generation order")
        if any(m2 > m1 for m1, m2 in zip(multipliers, multipliers[1:])):
            raise ConfigError("tolerance multipliers must be non-increasing")
        if multipliers[-1] != 1.0:
            raise ConfigError("the final tolerance multiplier must be 1.0")

    def segments(self, channel: str, generation: int) -> PenaltySegments:
        late = generation >= self.switch_generation
        if channel == "displacement":
            return self.displacement_late if late else self.displacement_early
        if channel == "stress":
            return self.stress_late if late else self.stress_early
        raise ConfigError(f"unknown penalty channel '{channel}'")


def default_penalty_config(total_generations: int) -> PenaltyConfig:
    """Defaults used by the benchmark runs, scaled to the run length:
    a mild early set, a strict late set switching at half the run, and the
    1.0005 / 1.00025 / 1.0 limit relaxation dropping at 40% and 70%."""
    if total_generations < 1:
        raise ConfigError("total generations must be >= 1")
    early = PenaltySegments(1.0, 5.0, 1000.0, 0.01, 0.10)
    late = PenaltySegments(5.0, 25.0, 10000.0, 0.001, 0.01)
    return PenaltyConfig(
        displacement_early=early,
        displacement_late=late,
        stress_early=early,
        stress_late=late,
        switch_generation=max(1, round(0.5 * total_generations)),
        tolerance_steps=(
            (1, 1.0005),
            (max(1, round(0.4 * total_generations)), 1.00025),
            (max(1, round(0.7 * total_generations)), 1.0),
        ),
    )


def active_tolerance(config: PenaltyConfig, generation: int) -> float:
    """Allowable multiplier in force at the given generation."""
    multiplier = config.tolerance_steps[0][1]
    for start, value in config.tolerance_steps:
        if generation >= start:
            multiplier = value
    return multiplier


def violation_factor(values: Sequence[float], allowables: Sequence[float] | float) -> float:
    """Sum of Macaulay brackets of |value|/allowable - 1 (zero when feasible).

    Limits are magnitude limits, so values enter through their absolute value.
    """
    values = np.asarray(values, dtype=float)
    excess = np.abs(values) / np.asarray(allowables, dtype=float) - 1.0
    return float(np.sum(np.maximum(excess, 0.0)))


def penalty(violation: float, config: PenaltyConfig, generation: int,
            channel: str = "displacement") -> float:
    """Piecewise penalty p(violation) * violation**2; zero at zero violation."""
    if violation < 0:
        raise ConfigError(f"violation factor must be >= 0, got {violation}")
    if violation == 0.0:
        return 0.0
    segments = config.segments(channel, generation)
    return segments.parameter(violation) * violation ** 2


def penalized_weight(model: TrussModel, areas: Sequence[float], config: PenaltyConfig,
                     generation: int, result: AnalysisResult | None = None) -> float:
    """Weight inflated by both channels' penalties, W * (1 + P_d + P_s).

    The allowables are first relaxed by the generation's tolerance multiplier,
    so a mildly infeasible design is charged nothing early in a run and the
    full penalty near the end.
    """
    if result is None:
        result = analyze(model, areas)
    multiplier = active_tolerance(config, generation)
    v_d = violation_factor(result.displacements, model.displacement_limit * multiplier)
    v_s = violation_factor(result.stresses, model.stress_limit * multiplier)
    p_d = penalty(v_d, config, generation, "displacement")
    p_s = penalty(v_s, config, generation, "stress")
    return result.weight * (1.0 + p_d + p_s)


def true_violation(model: TrussModel, result: AnalysisResult) -> float:
    """Both channels' violation factors against the unrelaxed limits."""
    return (violation_factor(result.displacements, model.displacement_limit)
            + violation_factor(result.stresses, model.stress_limit))

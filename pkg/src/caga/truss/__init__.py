"""Truss sizing: models, direct stiffness analysis and the penalized objective."""

from .analysis import AnalysisResult, analyze
from .model import BENCHMARK_NAMES, TrussModel, benchmark_model, load_model, parse_model
from .penalty import (
    FEASIBLE_VIOLATION,
    PenaltyConfig,
    PenaltySegments,
    active_tolerance,
    default_penalty_config,
    penalized_weight,
    penalty,
    true_violation,
    violation_factor,
)

__all__ = [
    "AnalysisResult",
    "analyze",
    "BENCHMARK_NAMES",
    "TrussModel",
    "benchmark_model",
    "load_model",
    "parse_model",
    "FEASIBLE_VIOLATION",
    "PenaltyConfig",
    "PenaltySegments",
    "active_tolerance",
    "default_penalty_config",
    "penalized_weight",
    "penalty",
    "true_violation",
    "violation_factor",
]

"""Compact cellular-automata genetic algorithm toolkit.

A small population of digit-string individuals lives on a 1-D lattice and
evolves through local neighbour comparisons instead of global selection,
sustained by unusually aggressive mutation plus periodic reinitialization
from the best individual found so far.  The package bundles the engine, a
ten-function benchmark suite, a penalized truss-sizing application with two
classical test structures, and a reproducible experiment CLI (``caga``).
"""

from .engine import (
    Cell,
    LatticeState,
    OperatorSchedule,
    RuleCase,
    RunConfig,
    RunResult,
    classify,
    run,
    step,
    sweep,
)
from .genome import Genome, VariableSpec, decode, encode, random_genome
from .operators import (
    Archive,
    CrossoverKind,
    CrossoverPlan,
    MutationConfig,
    MutationVersion,
    crossover,
    gaussian_digit_perturb,
    hyper_mutation,
    mutate_best,
    regular_mutation,
)

__version__ = "0.1.0"

__all__ = [
    "Archive",
    "Cell",
    "CrossoverKind",
    "CrossoverPlan",
    "Genome",
    "LatticeState",
    "MutationConfig",
    "MutationVersion",
    "OperatorSchedule",
    "RuleCase",
    "RunConfig",
    "RunResult",
    "VariableSpec",
    "classify",
    "crossover",
    "decode",
    "encode",
    "gaussian_digit_perturb",
    "hyper_mutation",
    "mutate_best",
    "random_genome",
    "regular_mutation",
    "run",
    "step",
    "sweep",
    "__version__",
]

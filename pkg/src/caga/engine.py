"""Population lattice and the local selection/crossover rule.

Individuals live on a 1-D lattice, one per cell.  Each generation, every cell
compares its cached fitness with its neighbours' and is replaced according to
the outcome: a cell that beats both neighbours survives intact, a cell beaten
by exactly one neighbour is crossed with that neighbour, a cell beaten by both
is replaced by a child of the two neighbours, and a lattice of equal cells is
left alone.  Every comparison and every donor genome comes from the
pre-generation snapshot, so the update is fully synchronous.  Boundary cells
see their single neighbour only: they survive if at least as fit, otherwise
they cross with it.

A step applies, in order: the crossover sweep, the scheduled mutations
(regular, best-individual, hyper), a re-evaluation of every cell, the
best-so-far update, and finally reinitialization when due.  Reinitialization
overwrites every cell with the best individual recorded over the whole run,
which is kept off-lattice so mutation can never destroy it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from .errors import ConfigError, EvaluationError
from .genome import Genome, VariableSpec, decode, random_genome
from .operators import (
    Archive,
    CrossoverKind,
    CrossoverPlan,
    MutationConfig,
    crossover,
    hyper_mutation,
    mutate_best,
    regular_mutation,
)

# An objective maps (decoded values, 1-based evaluation round) to a fitness
# that the engine maximizes; minimization problems supply the negated value.
Objective = Callable[[tuple[float, ...], int], float]


class RuleCase(Enum):
    SURVIVE = "survive"
    CROSS_WITH_RIGHT = "cross_with_right"
    CROSS_WITH_LEFT = "cross_with_left"
    CROSS_LEFT_RIGHT = "cross_left_right"
    ALL_EQUAL = "all_equal"


@dataclass
class Cell:
    genome: Genome
    fitness: float


@dataclass
class LatticeState:
    cells: list[Cell]
    generation: int = 0
    evaluations: int = 0
    best_so_far: Cell | None = None
    archive: Archive = field(default_factory=Archive)


@dataclass(frozen=True)
class OperatorSchedule:
    """Everything a step needs besides the lattice: decoding variables,
    the crossover plan, mutation timing and the reinitialization rule."""

    variables: tuple[VariableSpec, ...]
    crossover: CrossoverPlan
    mutation: MutationConfig
    reinit_period: int | None = None
    reinit_start_evaluations: float = 0.0

    def reinit_due(self, step_index: int, evaluations: int) -> bool:
        return (self.reinit_period is not None
                and evaluations >= self.reinit_start_evaluations
                and step_index % self.reinit_period == 0)


@dataclass(frozen=True)
class RunConfig:
    """A full run recipe.

    ``objective`` is an optional selector string (``f1``..``f10`` or a truss
    name) interpreted by the benchmark harness; the engine itself only uses
    the remaining fields.  ``penalty_overrides`` is likewise opaque here and
    consumed by the truss harness.
    """

    variables: tuple[VariableSpec, ...]
    evaluation_budget: int
    population_size: int = 5
    crossover: CrossoverPlan = CrossoverPlan(CrossoverKind.VARIABLE_TO_VARIABLE)
    mutation: MutationConfig = MutationConfig()
    reinit_period: int | None = None
    reinit_start_fraction: float = 0.0
    archive_capacity: int = 50
    objective: str | None = None
    penalty_overrides: object | None = None
    seed: int = 1

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ConfigError(f"population must be >= 2, got {self.population_size}")
        if self.evaluation_budget < self.population_size:
            raise ConfigError(f"budget {self.evaluation_budget} below one evaluation "
                              f"of {self.population_size} cells")
        if not 0.0 <= self.reinit_start_fraction <= 1.0:
            raise ConfigError("reinitialization start fraction must lie in [0, 1]")

    @property
    def generations(self) -> int:
        """Evaluation rounds the budget affords (initial evaluation included)."""
        return self.evaluation_budget // self.population_size


@dataclass(frozen=True)
class RunResult:
    history: tuple[float, ...]
    best_genome: Genome
    best_values: tuple[float, ...]
    best_fitness: float
    evaluations: int
    seed: int

    @property
    def generations(self) -> int:
        return len(self.history)


def classify(center: float, left: float, right: float) -> RuleCase:
    """Local rule outcome for an interior cell given the three cached fitnesses.

    Ties resolve in the centre's favour: a cell at least as fit as both
    neighbours survives, and only a strictly fitter neighbour takes part in
    replacing it.
    """
    for value in (center, left, right):
        if not math.isfinite(value):
            raise EvaluationError(f"non-finite fitness {value} in lattice")
    if center == left == right:
        return RuleCase.ALL_EQUAL
    if center >= left and center >= right:
        return RuleCase.SURVIVE
    if center >= left:
        return RuleCase.CROSS_WITH_RIGHT
    if center >= right:
        return RuleCase.CROSS_WITH_LEFT
    return RuleCase.CROSS_LEFT_RIGHT


def sweep(state: LatticeState, kind: CrossoverKind, rng: random.Random,
          process_order: Iterable[int] | None = None) -> LatticeState:
    """Apply the local rule to every cell against the pre-sweep snapshot.

    Each cell draws a private RNG stream (seeded left to right before any
    processing) so the result cannot depend on the order in which cells are
    resolved; ``process_order`` exists to let tests verify exactly that.
    Fitness values are carried over unchanged - children keep their
    predecessor's cached fitness until the next evaluation.
    """
    cells = state.cells
    size = len(cells)
    if size < 2:
        raise ConfigError(f"lattice needs at least 2 cells, got {size}")
    seeds = [rng.getrandbits(64) for _ in range(size)]
    fits = [c.fitness for c in cells]
    genomes: list[Genome | None] = [None] * size

    for i in (range(size) if process_order is None else process_order):
        if i == 0 or i == size - 1:
            other = 1 if i == 0 else size - 2
            if fits[i] >= fits[other]:
                genomes[i] = cells[i].genome
            else:
                genomes[i] = crossover(cells[i].genome, cells[other].genome,
                                       kind, random.Random(seeds[i]))
            continue
        case = classify(fits[i], fits[i - 1], fits[i + 1])
        if case in (RuleCase.SURVIVE, RuleCase.ALL_EQUAL):
            genomes[i] = cells[i].genome
        elif case is RuleCase.CROSS_WITH_RIGHT:
            genomes[i] = crossover(cells[i].genome, cells[i + 1].genome,
                                   kind, random.Random(seeds[i]))
        elif case is RuleCase.CROSS_WITH_LEFT:
            genomes[i] = crossover(cells[i].genome, cells[i - 1].genome,
                                   kind, random.Random(seeds[i]))
        else:
            genomes[i] = crossover(cells[i - 1].genome, cells[i + 1].genome,
                                   kind, random.Random(seeds[i]))

    new_cells = [Cell(g, f) for g, f in zip(genomes, fits)]
    return LatticeState(new_cells, state.generation, state.evaluations,
                        state.best_so_far, state.archive)


def _lattice_best(cells: Sequence[Cell]) -> Cell:
    best = cells[0]
    for cell in cells[1:]:
        if cell.fitness > best.fitness:
            best = cell
    return best


def _evaluate(genomes: Sequence[Genome], objective: Objective,
              variables: Sequence[VariableSpec], round_index: int) -> list[Cell]:
    cells = []
    for g in genomes:
        fitness = objective(decode(g, variables), round_index)
        if not math.isfinite(fitness):
            raise EvaluationError(f"objective returned non-finite fitness {fitness}")
        cells.append(Cell(g, fitness))
    return cells


def step(state: LatticeState, objective: Objective, schedule: OperatorSchedule,
         rng: random.Random) -> LatticeState:
    """Advance the lattice by one generation."""
    s = state.generation + 1
    swept = sweep(state, schedule.crossover.kind_at(s), rng)
    genomes: list[Genome] = [c.genome for c in swept.cells]
    cached_fitness = [c.fitness for c in swept.cells]
    mutation = schedule.mutation

    if mutation.regular_due(s):
        genomes = regular_mutation(genomes, mutation, s, rng)
    if mutation.best_due(s):
        genomes = mutate_best(genomes, cached_fitness, mutation.best_version_at(s), rng)
    if mutation.hyper_due(s):
        genomes = hyper_mutation(genomes, state.archive, rng)

    cells = _evaluate(genomes, objective, schedule.variables, round_index=s + 1)
    evaluations = state.evaluations + len(cells)

    generation_best = _lattice_best(cells)
    best = state.best_so_far
    if best is not None:
        # Refresh a stale record: under a generation-dependent objective
        # (e.g. a tightening penalty) the recorded fitness of the best-so-far
        # genome goes out of date, and an out-of-date optimistic score would
        # freeze the record forever.  A no-op for static objectives.
        for cell in cells:
            if cell.genome.digits == best.genome.digits:
                best = Cell(best.genome, cell.fitness)
                break
    if best is None or generation_best.fitness > best.fitness:
        best = Cell(generation_best.genome.copy(), generation_best.fitness)
    state.archive.push(generation_best.genome)

    if schedule.reinit_due(s, evaluations):
        cells = [Cell(best.genome.copy(), best.fitness) for _ in cells]

    return LatticeState(cells, s, evaluations, best, state.archive)


def run(config: RunConfig, objective: Objective, rng_seed: int) -> RunResult:
    """Execute a full run; identical seed and config give identical results.

    Evaluation bookkeeping matches population * generations: the initial
    population counts as the first evaluation round, and steps are taken while
    a whole round still fits in the budget.
    """
    rng = random.Random(rng_seed)
    schedule = OperatorSchedule(
        variables=config.variables,
        crossover=config.crossover,
        mutation=config.mutation,
        reinit_period=config.reinit_period,
        reinit_start_evaluations=config.reinit_start_fraction * config.evaluation_budget,
    )
    genomes = [random_genome(config.variables, rng)
               for _ in range(config.population_size)]
    cells = _evaluate(genomes, objective, config.variables, round_index=1)
    generation_best = _lattice_best(cells)
    archive = Archive(config.archive_capacity)
    archive.push(generation_best.genome)
    state = LatticeState(
        cells=cells,
        generation=0,
        evaluations=config.population_size,
        best_so_far=Cell(generation_best.genome.copy(), generation_best.fitness),
        archive=archive,
    )
    history = [state.best_so_far.fitness]

    while state.evaluations + config.population_size <= config.evaluation_budget:
        state = step(state, objective, schedule, rng)
        history.append(state.best_so_far.fitness)

    best = state.best_so_far
    assert best is not None
    return RunResult(
        history=tuple(history),
        best_genome=best.genome.copy(),
        best_values=decode(best.genome, config.variables),
        best_fitness=best.fitness,
        evaluations=state.evaluations,
        seed=rng_seed,
    )

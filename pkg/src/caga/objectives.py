"""The ten benchmark objectives with their grids, dimensions and senses.

The suite mixes classical test problems (sphere, Ackley, Griewank, Rastrigin,
Schwefel's sine, a Rosenbrock-like quadratic chain) with a few less common
ones (a sine-envelope product, a cumulative-product cosine sum, a linear
ramp).  Every problem is exposed behind one interface: ``spec`` describes the
search grid and whether the raw value is maximized or minimized, ``evaluate``
returns both the raw value and the fitness under the engine's maximization
convention (``fitness = -raw`` for minimization problems).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .errors import ConfigError, StructureError
from .genome import VariableSpec


class Sense(Enum):
    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class ObjectiveSpec:
    id: int
    dimension: int
    variables: tuple[VariableSpec, ...]
    sense: Sense


@dataclass(frozen=True)
class Evaluation:
    raw: float
    fitness: float


def _envelope_product(x: Sequence[float]) -> float:
    # Product of sharply peaked sine factors under a Gaussian envelope
    # centred near 0.0667; global maximum approaches 1.
    total = 1.0
    for xi in x:
        s = math.sin(5.1 * math.pi * xi + 0.5) ** 30
        total *= s * math.exp(-4.0 * math.log(2.0) * (xi - 0.0667) ** 2 / 0.64)
    return total


def _quadratic_chain(x: Sequence[float]) -> float:
    # Rosenbrock-flavoured chain with a first-order coupling term; zero at
    # the all-ones point.
    return sum(100.0 * (x[i + 1] - x[i]) ** 2 + (1.0 - x[i]) ** 2
               for i in range(len(x) - 1))


def _ackley(x: Sequence[float]) -> float:
    n = len(x)
    quad = math.sqrt(sum(v * v for v in x) / n)
    cosine = sum(math.cos(2.0 * math.pi * v) for v in x) / n
    return 20.0 + math.e - 20.0 * math.exp(-0.2 * quad) - math.exp(cosine)


def _schwefel_sine(x: Sequence[float]) -> float:
    return -sum(v * math.sin(math.sqrt(abs(v))) for v in x)


def _griewank(x: Sequence[float]) -> float:
    quad = sum(v * v for v in x) / 4000.0
    product = 1.0
    for i, v in enumerate(x, start=1):
        product *= math.cos(v / math.sqrt(i))
    return quad - product + 1.0


def _rastrigin(x: Sequence[float]) -> float:
    return sum(v * v - 10.0 * math.cos(2.0 * math.pi * v) + 10.0 for v in x)


def _sphere(x: Sequence[float]) -> float:
    return sum(v * v for v in x)


def _product_cosine(x: Sequence[float]) -> float:
    # Running products of the coordinates, each weighted by its own cosine.
    total = 0.0
    product = 1.0
    for v in x:
        product *= v
        total += product * math.cos(product)
    return total


def _sine_ramp(x: Sequence[float]) -> float:
    return sum(v * math.sin(10.0 * math.pi * v) for v in x)


def _linear_ramp(x: Sequence[float]) -> float:
    return sum(i * v for i, v in enumerate(x, start=1))


# id -> (formula, dimension, lower, upper, step, sense)
_TABLE: dict[int, tuple[Callable[[Sequence[float]], float], int, float, float, float, Sense]] = {
    1: (_envelope_product, 5, 0.0, 1.0, 0.0001, Sense.MAX),
    2: (_quadratic_chain, 3, -5.0, 5.0, 0.00001, Sense.MIN),
    3: (_ackley, 15, -100.0, 100.0, 0.0002, Sense.MIN),
    4: (_schwefel_sine, 15, -500.0, 500.0, 1.0, Sense.MIN),
    5: (_griewank, 15, -500.0, 500.0, 0.1, Sense.MIN),
    6: (_rastrigin, 15, -5.0, 5.0, 0.001, Sense.MIN),
    7: (_sphere, 15, -50.0, 50.0, 0.001, Sense.MIN),
    8: (_product_cosine, 4, 0.0, 100.0, 0.0001, Sense.MAX),
    9: (_sine_ramp, 15, 0.0, 10.0, 0.0001, Sense.MAX),
    10: (_linear_ramp, 15, -5.0, 5.0, 0.0001, Sense.MIN),
}

OBJECTIVE_IDS = tuple(sorted(_TABLE))


def spec(objective_id: int) -> ObjectiveSpec:
    """Grid bounds, resolution, dimension and sense for one objective."""
    if objective_id not in _TABLE:
        raise ConfigError(f"unknown objective id {objective_id}; valid ids are 1..10")
    _, dim, lower, upper, step_, sense = _TABLE[objective_id]
    var = VariableSpec(lower, upper, step_)
    return ObjectiveSpec(objective_id, dim, (var,) * dim, sense)


def evaluate(objective_id: int, x: Sequence[float]) -> Evaluation:
    """Raw objective value and its maximization-convention fitness."""
    if objective_id not in _TABLE:
        raise ConfigError(f"unknown objective id {objective_id}; valid ids are 1..10")
    formula, dim, _, _, _, sense = _TABLE[objective_id]
    if len(x) != dim:
        raise StructureError(f"objective {objective_id} expects {dim} values, got {len(x)}")
    raw = formula(x)
    return Evaluation(raw, raw if sense is Sense.MAX else -raw)


def fitness_function(objective_id: int) -> Callable[[Sequence[float]], float]:
    """Fast path used by the run harness: values -> fitness, no wrapper object."""
    formula, _, _, _, _, sense = _TABLE[objective_id]
    if sense is Sense.MAX:
        return formula
    return lambda x: -formula(x)

"""Decimal fixed-point genome encoding.

Each design variable lives on a resolution grid: the admissible values are
``lower + k * step`` for integer grid indices ``k``.  A genome stores every
index as zero-padded decimal digits, concatenated over the variables, so
digit-level operators (mutation, crossover) act directly on the encoding.
Indices that mutation pushes past the top of the grid saturate at the upper
bound when decoded; every digit string is therefore a legal individual.

Substrings use the digit count of ``grid_size - 1``, not of ``grid_size``:
for the common case of a power-of-ten grid (say 10000 points) this makes the
digit strings a bijection onto the grid, where one digit more would park 90%
of the digit space on the saturated upper bound and leave selection blind
over it.  The price is that for such grids the exact upper bound itself is
one step out of reach.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BoundsError, ConfigError, StructureError


@dataclass(frozen=True)
class VariableSpec:
    """Bounds and resolution of one design variable, in problem units."""

    lower: float
    upper: float
    step: float
    grid_size: int = field(init=False, compare=False, repr=False)
    digit_count: int = field(init=False, compare=False, repr=False)
    max_index: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.upper > self.lower:
            raise ConfigError(f"upper bound {self.upper} must exceed lower bound {self.lower}")
        if not self.step > 0:
            raise ConfigError(f"step must be positive, got {self.step}")
        grid = int(round((self.upper - self.lower) / self.step))
        if grid < 1:
            raise ConfigError(f"step {self.step} leaves no grid points in "
                              f"[{self.lower}, {self.upper}]")
        digits = max(1, len(str(grid - 1)))
        object.__setattr__(self, "grid_size", grid)
        object.__setattr__(self, "digit_count", digits)
        object.__setattr__(self, "max_index", min(grid, 10 ** digits - 1))


@dataclass
class Genome:
    """A flat list of decimal digits plus the per-variable substring lengths."""

    digits: list[int]
    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.digits) != sum(self.lengths):
            raise StructureError(f"genome has {len(self.digits)} digits but the layout "
                                 f"requires {sum(self.lengths)}")

    def copy(self) -> "Genome":
        return Genome(list(self.digits), self.lengths)

    def substring(self, index: int) -> list[int]:
        start = sum(self.lengths[:index])
        return self.digits[start:start + self.lengths[index]]

    @property
    def variable_count(self) -> int:
        return len(self.lengths)

    def __len__(self) -> int:
        return len(self.digits)


def layout_of(specs: Sequence[VariableSpec]) -> tuple[int, ...]:
    """Substring lengths implied by the specs: the digit count of each grid size."""
    return tuple(s.digit_count for s in specs)


def check_layout(genome: Genome, specs: Sequence[VariableSpec]) -> None:
    if genome.lengths != layout_of(specs):
        raise StructureError(f"genome layout {genome.lengths} does not match the "
                             f"specs' layout {layout_of(specs)}")


def encode(values: Sequence[float], specs: Sequence[VariableSpec]) -> Genome:
    """Map an in-bounds design vector to its digit string (nearest
    representable grid point)."""
    if len(values) != len(specs):
        raise StructureError(f"{len(values)} values for {len(specs)} variables")
    digits: list[int] = []
    for v, sp in zip(values, specs):
        if v < sp.lower - 1e-9 * sp.step or v > sp.upper + 1e-9 * sp.step:
            raise BoundsError(f"value {v} outside [{sp.lower}, {sp.upper}]")
        k = int(round((v - sp.lower) / sp.step))
        k = min(max(k, 0), sp.max_index)
        text = str(k).zfill(sp.digit_count)
        digits.extend(int(c) for c in text)
    return Genome(digits, layout_of(specs))


def decode(genome: Genome, specs: Sequence[VariableSpec]) -> tuple[float, ...]:
    """Read the grid index from each substring and map it back to a real value.

    Indices beyond ``grid_size`` saturate at the top of the grid, and the
    result is clamped to the upper bound for grids whose extent is not an
    exact multiple of the step.
    """
    check_layout(genome, specs)
    digits = genome.digits
    values: list[float] = []
    pos = 0
    for sp in specs:
        k = 0
        for d in digits[pos:pos + sp.digit_count]:
            k = k * 10 + d
        pos += sp.digit_count
        if k > sp.grid_size:
            k = sp.grid_size
        v = sp.lower + k * sp.step
        if v > sp.upper:
            v = sp.upper
        values.append(v)
    return tuple(values)


def random_genome(specs: Sequence[VariableSpec], rng: random.Random) -> Genome:
    """Uniform random digits; decoding stays in bounds through saturation."""
    layout = layout_of(specs)
    digits = [rng.randrange(10) for _ in range(sum(layout))]
    return Genome(digits, layout)

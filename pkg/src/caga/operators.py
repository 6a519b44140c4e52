"""Crossover kinds and the three mutation families.

All operators are pure: they take genomes plus an explicit RNG handle and
return fresh genomes, never touching their inputs.  Scheduling (which
generation an operator fires on) lives in :mod:`caga.engine`; the helpers on
:class:`MutationConfig` and :class:`CrossoverPlan` only answer "what applies
at step s".
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import ConfigError, StructureError
from .genome import Genome


class CrossoverKind(Enum):
    ONE_POINT = "one_point"
    TWO_POINT = "two_point"
    VARIABLE_TO_VARIABLE = "variable_to_variable"


class MutationVersion(Enum):
    ORDINARY = "ordinary"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class CrossoverPlan:
    """A crossover kind, optionally replaced by a second kind later in the run."""

    kind: CrossoverKind
    switch_step: int | None = None
    late_kind: CrossoverKind | None = None

    def __post_init__(self) -> None:
        if self.switch_step is not None:
            if self.switch_step < 1:
                raise ConfigError("crossover switch step must be >= 1")
            if self.late_kind is None:
                raise ConfigError("a switch step requires a late crossover kind")

    def kind_at(self, step_index: int) -> CrossoverKind:
        if self.switch_step is not None and step_index >= self.switch_step:
            return self.late_kind  # type: ignore[return-value]
        return self.kind


@dataclass(frozen=True)
class MutationConfig:
    """Periods, counts and versions for the three mutation kinds.

    Periods are in generations; ``None`` disables a kind.  ``regular_count``
    is the number of rounds per firing (each round mutates one digit per
    variable) and may be an inclusive ``(low, high)`` range drawn fresh at
    every firing.  When ``gaussian_from_step`` is set, both the regular and
    the best-individual mutation switch from their configured versions to the
    Gaussian version at that step.
    """

    regular_period: int | None = 1
    regular_count: int | tuple[int, int] = 1
    regular_version: MutationVersion = MutationVersion.GAUSSIAN
    best_period: int | None = 2
    best_version: MutationVersion = MutationVersion.GAUSSIAN
    hyper_period: int | None = None
    gaussian_from_step: int | None = None
    late_regular_count: int | tuple[int, int] | None = None

    def __post_init__(self) -> None:
        for name in ("regular_period", "best_period", "hyper_period"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be >= 1 or None, got {value}")
        for name in ("regular_count", "late_regular_count"):
            count = getattr(self, name)
            if count is None and name == "late_regular_count":
                continue
            if isinstance(count, tuple):
                if len(count) != 2 or count[0] < 1 or count[1] < count[0]:
                    raise ConfigError(f"invalid mutation count range {count}")
            elif count < 1:
                raise ConfigError(f"mutation count must be >= 1, got {count}")
        if self.late_regular_count is not None and self.gaussian_from_step is None:
            raise ConfigError("a late mutation count requires gaussian_from_step")

    def regular_due(self, step_index: int) -> bool:
        return self.regular_period is not None and step_index % self.regular_period == 0

    def best_due(self, step_index: int) -> bool:
        return self.best_period is not None and step_index % self.best_period == 0

    def hyper_due(self, step_index: int) -> bool:
        return self.hyper_period is not None and step_index % self.hyper_period == 0

    def _version_at(self, configured: MutationVersion, step_index: int) -> MutationVersion:
        if self.gaussian_from_step is not None and step_index >= self.gaussian_from_step:
            return MutationVersion.GAUSSIAN
        return configured

    def regular_version_at(self, step_index: int) -> MutationVersion:
        return self._version_at(self.regular_version, step_index)

    def best_version_at(self, step_index: int) -> MutationVersion:
        return self._version_at(self.best_version, step_index)

    def draw_regular_count(self, rng: random.Random, step_index: int = 0) -> int:
        count = self.regular_count
        if (self.late_regular_count is not None
                and self.gaussian_from_step is not None
                and step_index >= self.gaussian_from_step):
            count = self.late_regular_count
        if isinstance(count, tuple):
            return rng.randint(*count)
        return count


class Archive:
    """Ring buffer of best-of-generation genomes feeding hyper-mutation."""

    def __init__(self, capacity: int = 50):
        if capacity < 1:
            raise ConfigError(f"archive capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._entries: deque[Genome] = deque(maxlen=capacity)

    def push(self, genome: Genome) -> None:
        self._entries.append(genome.copy())

    def pick(self, rng: random.Random) -> Genome:
        return self._entries[rng.randrange(len(self._entries))]

    @property
    def entries(self) -> tuple[Genome, ...]:
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


def crossover(parent_a: Genome, parent_b: Genome, kind: CrossoverKind,
              rng: random.Random) -> Genome:
    """Produce one child with the parents' shared layout.

    ONE_POINT cuts at a uniform position in ``1..L-1``; TWO_POINT takes the
    segment between two distinct cuts from parent b; VARIABLE_TO_VARIABLE
    copies each variable's substring whole from either parent with equal
    probability (drawn left to right).  Genomes too short to cut are returned
    as copies of parent a.
    """
    if parent_a.lengths != parent_b.lengths:
        raise StructureError(f"parent layouts differ: {parent_a.lengths} vs {parent_b.lengths}")
    a, b = parent_a.digits, parent_b.digits
    total = len(a)
    if kind is CrossoverKind.ONE_POINT:
        if total < 2:
            return parent_a.copy()
        cut = rng.randrange(1, total)
        child = a[:cut] + b[cut:]
    elif kind is CrossoverKind.TWO_POINT:
        if total < 3:
            return parent_a.copy()
        lo, hi = sorted(rng.sample(range(1, total), 2))
        child = a[:lo] + b[lo:hi] + a[hi:]
    elif kind is CrossoverKind.VARIABLE_TO_VARIABLE:
        child = []
        pos = 0
        for n in parent_a.lengths:
            source = a if rng.random() < 0.5 else b
            child.extend(source[pos:pos + n])
            pos += n
    else:  # pragma: no cover - enum is closed
        raise ConfigError(f"unknown crossover kind {kind}")
    return Genome(child, parent_a.lengths)


def _substring_bounds(lengths: Sequence[int], index: int) -> tuple[int, int]:
    start = sum(lengths[:index])
    return start, start + lengths[index]


def _ordinary_change(digits: list[int], pos: int, rng: random.Random) -> None:
    # One draw over the nine values different from the current digit.
    repl = rng.randrange(9)
    digits[pos] = repl if repl < digits[pos] else repl + 1


def _gaussian_change(digits: list[int], start: int, length: int, rng: random.Random) -> None:
    # Signed half-normal integer added to the substring VALUE at the chosen
    # digit's place, i.e. with carry across digits, modulo the substring's
    # capacity.  Value-level arithmetic lets single mutations cross digit
    # boundaries (e.g. 0700 -> 0670), which digit-local changes cannot; the
    # modular wrap keeps the step distribution unbiased instead of piling
    # mass onto the range ends.
    place = rng.randrange(length)
    magnitude = min(int(round(abs(rng.gauss(0.0, 3.0)))), 9)
    sign = 1 if rng.random() < 0.5 else -1
    index = 0
    for d in digits[start:start + length]:
        index = index * 10 + d
    index = (index + sign * magnitude * 10 ** (length - 1 - place)) % 10 ** length
    for offset in range(length - 1, -1, -1):
        index, digit = divmod(index, 10)
        digits[start + offset] = digit


def gaussian_digit_perturb(genome: Genome, variable_index: int,
                           rng: random.Random) -> Genome:
    """Add a signed half-normal integer to the substring value at one digit's
    scale.

    The magnitude is ``round(|N(0, 3)|)`` clamped to 0..9 and the sign a fair
    coin; the perturbation is ``sign * magnitude * 10**place`` applied to the
    substring's integer value with carry, clamped to the representable range.
    Drawing the place uniformly makes the step distribution multiscale: most
    moves are local refinements, a few jump across the variable's range.
    """
    if not 0 <= variable_index < genome.variable_count:
        raise StructureError(f"variable index {variable_index} out of range")
    out = genome.copy()
    start, stop = _substring_bounds(genome.lengths, variable_index)
    _gaussian_change(out.digits, start, stop - start, rng)
    return out


def regular_mutation(genomes: Sequence[Genome], config: MutationConfig,
                     step_index: int, rng: random.Random) -> list[Genome]:
    """One firing of the regular mutation over a lattice of genomes.

    The ordinary version performs ``regular_count`` rounds, each visiting
    every variable index once: it picks a uniformly random cell and replaces
    one digit inside that cell's substring for the variable, so consecutive
    rounds may hit different cells for different variables.  The Gaussian
    version performs ``regular_count`` independent perturbation events, each
    on one random variable of one random cell.
    """
    out = list(genomes)
    lengths = out[0].lengths
    version = config.regular_version_at(step_index)
    copied: set[int] = set()

    def owned(cell: int) -> Genome:
        if cell not in copied:
            out[cell] = out[cell].copy()
            copied.add(cell)
        return out[cell]

    count = config.draw_regular_count(rng, step_index)
    if version is MutationVersion.ORDINARY:
        for _ in range(count):
            for var_index in range(len(lengths)):
                cell = rng.randrange(len(out))
                start, stop = _substring_bounds(lengths, var_index)
                pos = start + rng.randrange(stop - start)
                _ordinary_change(owned(cell).digits, pos, rng)
    else:
        for _ in range(count):
            cell = rng.randrange(len(out))
            var_index = rng.randrange(len(lengths))
            start, stop = _substring_bounds(lengths, var_index)
            _gaussian_change(owned(cell).digits, start, stop - start, rng)
    return out


def mutate_best(genomes: Sequence[Genome], fitnesses: Sequence[float],
                version: MutationVersion, rng: random.Random) -> list[Genome]:
    """Mutate the highest-fitness cell, leaving every other cell untouched.

    The ordinary version changes a random number of digits (1 up to the
    number of variables) at distinct positions anywhere in the string; the
    Gaussian version applies a single digit perturbation to one random
    variable.
    """
    best = max(range(len(genomes)), key=lambda i: (fitnesses[i], -i))
    out = list(genomes)
    target = out[best].copy()
    lengths = target.lengths
    if version is MutationVersion.ORDINARY:
        changes = rng.randint(1, len(lengths))
        for pos in rng.sample(range(len(target.digits)), changes):
            _ordinary_change(target.digits, pos, rng)
    else:
        var_index = rng.randrange(len(lengths))
        start, stop = _substring_bounds(lengths, var_index)
        _gaussian_change(target.digits, start, stop - start, rng)
    out[best] = target
    return out


def hyper_mutation(genomes: Sequence[Genome], archive: Archive,
                   rng: random.Random) -> list[Genome]:
    """Replace one whole substring of one cell with an archived substring.

    Picks a uniform cell, variable index and archive entry; a no-op while the
    archive is empty.
    """
    out = list(genomes)
    if len(archive) == 0:
        return out
    cell = rng.randrange(len(out))
    lengths = out[cell].lengths
    var_index = rng.randrange(len(lengths))
    entry = archive.pick(rng)
    if entry.lengths != lengths:
        raise StructureError("archived genome layout does not match the lattice")
    start, stop = _substring_bounds(lengths, var_index)
    target = out[cell].copy()
    target.digits[start:stop] = entry.digits[start:stop]
    out[cell] = target
    return out

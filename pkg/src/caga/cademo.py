"""Elementary binary cellular automaton demo.

Runs a single 1-D rule on a periodic lattice, optionally flipping a random
handful of cells each step, and renders the space-time history as a portable
bitmap.  The shipped rule (Wolfram code 165, the complement of the additive
rule 90) self-organizes into persistent triangular motifs that survive both
random seeding and sustained random perturbation - the behaviour that
motivates putting a population of solutions on a lattice in the first place.
"""

from __future__ import annotations

import math
import random
from pathlib import Path
from typing import Sequence

from .errors import ConfigError, StructureError

# A rule maps each (left, center, right) neighbourhood, read as a 3-bit
# number, to the next cell state.
BinaryRule = tuple[int, int, int, int, int, int, int, int]

TapeHistory = list[list[int]]


def figure2_rule() -> BinaryRule:
    """The demo rule: 111,110,100,101,011,010,001,000 -> 1,0,0,1,0,1,0,1."""
    table = {
        (1, 1, 1): 1, (1, 1, 0): 0, (1, 0, 0): 0, (1, 0, 1): 1,
        (0, 1, 1): 0, (0, 1, 0): 1, (0, 0, 1): 0, (0, 0, 0): 1,
    }
    out = [0] * 8
    for (l, c, r), bit in table.items():
        out[l << 2 | c << 1 | r] = bit
    return tuple(out)  # type: ignore[return-value]


def wolfram_code(rule: BinaryRule) -> int:
    """Standard rule number: output bits weighted by their neighbourhood index."""
    return sum(bit << i for i, bit in enumerate(rule))


def _poisson(mean: float, rng: random.Random) -> int:
    # Knuth's product-of-uniforms sampler; fine for the small means used here.
    if mean <= 0:
        return 0
    limit = math.exp(-mean)
    count = 0
    product = rng.random()
    while product > limit:
        count += 1
        product *= rng.random()
    return count


def evolve(rule: BinaryRule, initial_row: Sequence[int], steps: int,
           perturb_rate: float = 0.0, rng: random.Random | None = None) -> TapeHistory:
    """Roll the rule forward on a periodic lattice.

    Each new row is the rule applied to the previous one, after which a
    Poisson(perturb_rate) number of uniformly drawn cells is flipped (cells
    drawn twice toggle twice).  ``perturb_rate`` 0 disables perturbation and
    the evolution is a pure function of rule and seed row.
    """
    if len(initial_row) == 0:
        raise StructureError("the initial row must contain at least one cell")
    if steps < 0:
        raise ConfigError(f"steps must be >= 0, got {steps}")
    if perturb_rate < 0:
        raise ConfigError(f"perturb rate must be >= 0, got {perturb_rate}")
    if perturb_rate > 0 and rng is None:
        raise ConfigError("perturbation needs an RNG")
    width = len(initial_row)
    row = [1 if c else 0 for c in initial_row]
    history: TapeHistory = [row]
    for _ in range(steps):
        new_row = [rule[row[i - 1] << 2 | row[i] << 1 | row[(i + 1) % width]]
                   for i in range(width)]
        if perturb_rate > 0:
            assert rng is not None
            for _ in range(_poisson(perturb_rate, rng)):
                position = rng.randrange(width)
                new_row[position] ^= 1
        history.append(new_row)
        row = new_row
    return history


def render(history: TapeHistory, path: str | Path,
           text_path: str | Path | None = None) -> None:
    """Write the history as a plain PBM (P1) image, one pixel per cell,
    black = 1; optionally also dump the raw 0/1 grid as text."""
    if not history:
        raise StructureError("cannot render an empty history")
    width = len(history[0])
    lines = ["P1", f"{width} {len(history)}"]
    lines.extend(" ".join(str(c) for c in row) for row in history)
    payload = "\n".join(lines) + "\n"
    with open(path, "w", encoding="ascii", newline="") as handle:
        handle.write(payload)
    if text_path is not None:
        grid = "\n".join("".join(str(c) for c in row) for row in history) + "\n"
        with open(text_path, "w", encoding="ascii", newline="") as handle:
            handle.write(grid)


def random_row(width: int, rng: random.Random, fill: float = 0.5) -> list[int]:
    """Bernoulli(fill) seed row for the demo CLI."""
    if width < 1:
        raise ConfigError(f"width must be >= 1, got {width}")
    return [1 if rng.random() < fill else 0 for _ in range(width)]

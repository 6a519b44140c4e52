"""Planar truss models and the text format they are stored in.

A model file is plain text with one ``[section]`` per block; ``#`` starts a
comment.  Node and member ids are 1-based and must be contiguous, and the
member order defines the design-variable order.  Quantities carry their unit
in the key name and are converted to a consistent (cm, kN) system on load::

    name example
    [nodes]                  # id  x_cm  y_cm
    1  0.0    0.0
    2  100.0  0.0
    [members]                # id  node_a  node_b
    1  1  2
    [supports]               # node  fix_x(0/1)  fix_y(0/1)
    1  1  1
    [loads]                  # node  fx_kN  fy_kN
    2  0.0  -10.0
    [material]
    youngs_modulus_gpa  68.9476
    density_kn_per_m3   27.1447
    [limits]
    displacement_cm     5.08
    stress_mpa          172.375
    [areas]
    min_cm2   0.6452
    max_cm2   222.594
    step_cm2  0.0223

Internally: E and stress in kN/cm^2, density in kN/cm^3, lengths in cm,
forces in kN, areas in cm^2, so member weight is density*area*length in kN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path

from ..errors import ConfigError, StructureError
from ..genome import VariableSpec

GPA_TO_KN_CM2 = 100.0
MPA_TO_KN_CM2 = 0.1
KN_M3_TO_KN_CM3 = 1e-6

BENCHMARK_NAMES = ("ten_bar", "seventeen_bar")


@dataclass(frozen=True)
class TrussModel:
    """Geometry, material, loading and sizing bounds of one truss instance."""

    name: str
    nodes: tuple[tuple[float, float], ...]        # cm, 0-based index
    members: tuple[tuple[int, int], ...]          # 0-based node pairs
    youngs_modulus: float                         # kN/cm^2
    density: float                                # kN/cm^3
    fixed_dofs: frozenset[int]                    # dof = 2*node + axis
    loads: tuple[float, ...]                      # full dof force vector, kN
    displacement_limit: float                     # cm, magnitude per free dof
    stress_limit: float                           # kN/cm^2, magnitude per member
    area_min: float
    area_max: float
    area_step: float

    def __post_init__(self) -> None:
        n_dofs = 2 * len(self.nodes)
        if len(self.loads) != n_dofs:
            raise StructureError("load vector length does not match the dof count")
        if any(d < 0 or d >= n_dofs for d in self.fixed_dofs):
            raise StructureError("fixed dof index out of range")
        for a, b in self.members:
            if not (0 <= a < len(self.nodes) and 0 <= b < len(self.nodes)):
                raise StructureError("member references a missing node")
            if a == b:
                raise StructureError("member connects a node to itself")
        if not (0 < self.area_min < self.area_max):
            raise ConfigError("area bounds must satisfy 0 < min < max")

    @property
    def member_count(self) -> int:
        return len(self.members)

    @cached_property
    def member_lengths(self) -> tuple[float, ...]:
        out = []
        for a, b in self.members:
            (xa, ya), (xb, yb) = self.nodes[a], self.nodes[b]
            out.append(math.hypot(xb - xa, yb - ya))
        return tuple(out)

    @cached_property
    def free_dofs(self) -> tuple[int, ...]:
        return tuple(d for d in range(2 * len(self.nodes)) if d not in self.fixed_dofs)

    def variable_specs(self) -> tuple[VariableSpec, ...]:
        spec = VariableSpec(self.area_min, self.area_max, self.area_step)
        return (spec,) * self.member_count

    def displacement_allowables(self) -> tuple[float, ...]:
        return (self.displacement_limit,) * len(self.free_dofs)

    def stress_allowables(self) -> tuple[float, ...]:
        return (self.stress_limit,) * self.member_count


def _tokenize(text: str) -> list[tuple[str, list[str]]]:
    """(section, tokens) per data line, with comments stripped."""
    out = []
    section = ""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            continue
        out.append((section, line.split()))
    return out


def parse_model(text: str, name: str = "truss") -> TrussModel:
    """Build a model from the text format described in the module docstring."""
    nodes: dict[int, tuple[float, float]] = {}
    members: dict[int, tuple[int, int]] = {}
    supports: list[tuple[int, int, int]] = []
    loads: list[tuple[int, float, float]] = []
    scalars: dict[str, float] = {}

    for section, tokens in _tokenize(text):
        try:
            if section == "" and tokens[0].lower() == "name":
                name = tokens[1]
            elif section == "nodes":
                nid, x, y = int(tokens[0]), float(tokens[1]), float(tokens[2])
                nodes[nid] = (x, y)
            elif section == "members":
                mid, a, b = int(tokens[0]), int(tokens[1]), int(tokens[2])
                members[mid] = (a, b)
            elif section == "supports":
                supports.append((int(tokens[0]), int(tokens[1]), int(tokens[2])))
            elif section == "loads":
                loads.append((int(tokens[0]), float(tokens[1]), float(tokens[2])))
            elif section in ("material", "limits", "areas"):
                scalars[tokens[0].lower()] = float(tokens[1])
            else:
                raise StructureError(f"unknown section [{section}]")
        except (ValueError, IndexError) as exc:
            raise StructureError(f"malformed line in [{section}]: {' '.join(tokens)}") from exc

    def require(key: str) -> float:
        if key not in scalars:
            raise StructureError(f"model is missing the '{key}' entry")
        return scalars[key]

    if sorted(nodes) != list(range(1, len(nodes) + 1)):
        raise StructureError("node ids must be contiguous starting at 1")
    if sorted(members) != list(range(1, len(members) + 1)):
        raise StructureError("member ids must be contiguous starting at 1")

    coords = tuple(nodes[i] for i in range(1, len(nodes) + 1))
    pairs = tuple((members[i][0] - 1, members[i][1] - 1)
                  for i in range(1, len(members) + 1))

    fixed = set()
    for node, fx, fy in supports:
        if fx:
            fixed.add(2 * (node - 1))
        if fy:
            fixed.add(2 * (node - 1) + 1)
    load_vector = [0.0] * (2 * len(coords))
    for node, fx, fy in loads:
        load_vector[2 * (node - 1)] += fx
        load_vector[2 * (node - 1) + 1] += fy

    return TrussModel(
        name=name,
        nodes=coords,
        members=pairs,
        youngs_modulus=require("youngs_modulus_gpa") * GPA_TO_KN_CM2,
        density=require("density_kn_per_m3") * KN_M3_TO_KN_CM3,
        fixed_dofs=frozenset(fixed),
        loads=tuple(load_vector),
        displacement_limit=require("displacement_cm"),
        stress_limit=require("stress_mpa") * MPA_TO_KN_CM2,
        area_min=require("min_cm2"),
        area_max=require("max_cm2"),
        area_step=require("step_cm2"),
    )


def load_model(path: str | Path) -> TrussModel:
    path = Path(path)
    return parse_model(path.read_text(encoding="utf-8"), name=path.stem)


@lru_cache(maxsize=None)
def benchmark_model(name: str) -> TrussModel:
    """One of the packaged sizing benchmarks: ``ten_bar`` or ``seventeen_bar``."""
    if name not in BENCHMARK_NAMES:
        raise ConfigError(f"unknown benchmark '{name}'; choose from {BENCHMARK_NAMES}")
    text = resources.files("caga.truss").joinpath(f"data/{name}.truss").read_text("utf-8")
    return parse_model(text, name=name)

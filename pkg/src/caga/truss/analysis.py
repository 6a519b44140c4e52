"""Linear truss analysis by the direct stiffness method.

Every member contributes an axial stiffness E*A/L rotated into global axes.
Because the global stiffness is linear in the member areas, the assembly is
precomputed once per model as a basis of per-member unit-area matrices on the
free dofs; each analysis is then one tensor contraction, one dense solve and
one matrix-vector product.  The systems here have at most a few dozen dofs,
so dense factorization is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ..errors import BoundsError, InstabilityError
from .model import TrussModel


@dataclass(frozen=True)
class AnalysisResult:
    """Response of one design: displacements, member stresses and weight."""

    displacements: np.ndarray       # per free dof, cm
    node_displacements: np.ndarray  # (n_nodes, 2) with zeros at supports, cm
    stresses: np.ndarray            # per member, kN/cm^2
    weight: float                   # kN


@dataclass(frozen=True)
class _Assembly:
    stiffness_basis: np.ndarray   # (members, free, free); K_free = areas . basis
    stress_operator: np.ndarray   # (members, free); stresses = op @ d_free
    load_vector: np.ndarray       # (free,)
    free_index: dict[int, int]
    weight_coefficients: np.ndarray  # (members,); weight = coeff . areas


@lru_cache(maxsize=None)
def _assembly(model: TrussModel) -> _Assembly:
    free = model.free_dofs
    free_index = {dof: i for i, dof in enumerate(free)}
    n_free = len(free)
    n_members = model.member_count
    basis = np.zeros((n_members, n_free, n_free))
    stress_op = np.zeros((n_members, n_free))
    e = model.youngs_modulus

    for m, (a, b) in enumerate(model.members):
        (xa, ya), (xb, yb) = model.nodes[a], model.nodes[b]
        length = model.member_lengths[m]
        c, s = (xb - xa) / length, (yb - ya) / length
        direction = np.array([-c, -s, c, s])
        dofs = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1)
        # Unit-area stiffness (E/L) d d^T scattered onto the free dofs;
        # fixed dofs drop out because their displacement is zero.
        block = (e / length) * np.outer(direction, direction)
        for i, di in enumerate(dofs):
            if di not in free_index:
                continue
            row = free_index[di]
            for j, dj in enumerate(dofs):
                if dj in free_index:
                    basis[m, row, free_index[dj]] = block[i, j]
            stress_op[m, row] = (e / length) * direction[i]

    load = np.array([model.loads[d] for d in free])
    coeff = model.density * np.asarray(model.member_lengths)
    return _Assembly(basis, stress_op, load, free_index, coeff)


def analyze(model: TrussModel, areas: Sequence[float]) -> AnalysisResult:
    """Solve K(areas) d = F and report displacements, stresses and weight."""
    areas = np.asarray(areas, dtype=float)
    if areas.shape != (model.member_count,):
        raise BoundsError(f"expected {model.member_count} areas, got {areas.shape}")
    tolerance = 1e-9 * model.area_step
    if np.any(areas < model.area_min - tolerance) or np.any(areas > model.area_max + tolerance):
        raise BoundsError("member area outside the section bounds")

    asm = _assembly(model)
    stiffness = np.tensordot(areas, asm.stiffness_basis, axes=1)
    try:
        d = np.linalg.solve(stiffness, asm.load_vector)
    except np.linalg.LinAlgError as exc:
        raise InstabilityError(f"singular stiffness matrix for model '{model.name}'") from exc
    if not np.all(np.isfinite(d)):
        raise InstabilityError(f"non-finite displacements for model '{model.name}'")

    stresses = asm.stress_operator @ d
    node_disp = np.zeros((len(model.nodes), 2))
    for dof, i in asm.free_index.items():
        node_disp[dof // 2, dof % 2] = d[i]
    weight = float(asm.weight_coefficients @ areas)
    return AnalysisResult(d, node_disp, stresses, weight)

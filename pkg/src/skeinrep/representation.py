"""Immutable container for a finite-dimensional representation.

A representation assigns one square matrix to every generator of its surface
vocabulary; puncture generators always map to their scalar times the
identity, and that scalar is also stored separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import matrices
from .scalars import RootSystem
from .surfaces import Surface


@dataclass(frozen=True)
class Representation:
    surface: Surface
    rs: RootSystem
    dim: int
    matrices: dict
    puncture_scalars: dict
    provenance: dict = field(default_factory=dict)

    def matrix(self, name: str):
        try:
            return self.matrices[name]
        except KeyError:
            raise KeyError(f"generator {name!r} not in {self.surface.tag} representation") from None


def assemble(surface, rs, dim, x_matrices, puncture_scalars, provenance=None):
    """Build a Representation, adding scalar identity matrices for punctures."""
    mats = {}
    for name, m in x_matrices.items():
        mats[name] = matrices.freeze(m)
    for name in surface.punctures:
        mats[name] = matrices.freeze(matrices.scalar_matrix(puncture_scalars[name], dim))
    return Representation(surface, rs, dim, mats, dict(puncture_scalars), provenance or {})

"""Gaussian-mixture test scenes for experiments and benchmarks.

The default source/target pair places isotropic Gaussians on small
rectangular lattices inside [-r/6, r/6]^2 with weights growing toward one
corner to break rotational symmetry: the source is a 5-by-4 lattice, the
target 4-by-3.  The default width r/50 keeps every component resolvable on
desk-scale grids; pass ``width=r/500`` for severely undersampled scenes.
"""

from __future__ import annotations

import numpy as np

from .grids import GaussianMixtureSpec

__all__ = ["lattice_mixture", "source_scene", "target_scene", "DEFAULT_EXTENT"]

DEFAULT_EXTENT = 2.5


def lattice_mixture(rows: int, cols: int, half_extent: float, width: float) -> GaussianMixtureSpec:
    """Rows-by-cols lattice of Gaussians equispaced in a centered square.

    Row i (top to bottom) and column j (left to right) get weight
    proportional to sqrt(i^2 + j^2), i and j counted from 1.
    """
    xs = np.linspace(-half_extent, half_extent, cols)
    ys = np.linspace(half_extent, -half_extent, rows)
    centers = []
    weights = []
    for i, y in enumerate(ys, start=1):
        for j, x in enumerate(xs, start=1):
            centers.append((x, y))
            weights.append(np.sqrt(i * i + j * j))
    return GaussianMixtureSpec(np.array(centers), np.array(weights), width, normalized=True)


def source_scene(r: float = DEFAULT_EXTENT, width: float | None = None) -> GaussianMixtureSpec:
    """The 20-component source mixture on [-r, r]^2."""
    return lattice_mixture(5, 4, r / 6.0, width if width is not None else r / 50.0)


def target_scene(r: float = DEFAULT_EXTENT, width: float | None = None) -> GaussianMixtureSpec:
    """The 12-component target mixture on [-r, r]^2."""
    return lattice_mixture(4, 3, r / 6.0, width if width is not None else r / 50.0)

"""Wasserstein baselines: 1D quantile transport and sliced 2D transport.

1D distances use the closed form W_p(f, g) = || F^{-1} - G^{-1} ||_{L^p}
between generalized inverses of the cumulative functions, evaluated by
piecewise-linear inversion of left-Riemann CDFs at midpoint mass levels.
The 2D sliced distance averages per-angle 1D distances between band-limited
tomographic projections, with small negative projection ripples clamped to
zero and each projection renormalized to the common mass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Field1D, Field2D, Grid1D, require_same_grid
from .spectral import default_angles, polar_coefficients_fast, projections_from_polar

__all__ = [
    "DiscreteCDF",
    "cdf_from_field",
    "quantiles",
    "wasserstein_1d",
    "w1_via_cdf",
    "sliced_wasserstein_2d",
    "sliced_wasserstein_many",
]

NEG_TOL = 1e-9
MASS_TOL = 1e-4


@dataclass(frozen=True)
class DiscreteCDF:
    """Cumulative left-Riemann sums on grid knots t_0 .. t_n (cdf[0] = 0)."""

    grid: Grid1D
    cdf: np.ndarray

    @property
    def mass(self) -> float:
        return float(self.cdf[-1])


def cdf_from_field(x: Field1D, neg_tol: float = NEG_TOL) -> DiscreteCDF:
    """CDF of a nonnegative field; tiny negative values are clamped to zero.

    Values below ``-neg_tol * max|x|`` signal an input on which transport is
    undefined and raise; the caller must clamp or renormalize explicitly.
    """
    vals = x.values
    floor = -neg_tol * np.abs(vals).max(initial=0.0)
    if np.any(vals < floor):
        raise ValueError(
            f"field has significantly negative values (min {vals.min():.3g}); "
            "Wasserstein distances need nonnegative inputs"
        )
    vals = np.clip(vals, 0.0, None)
    cdf = np.concatenate([[0.0], np.cumsum(vals)]) * x.grid.spacing
    return DiscreteCDF(x.grid, cdf)


def quantiles(cdf: DiscreteCDF, levels: np.ndarray) -> np.ndarray:
    """Generalized inverse inf{t : F(t) >= level} with linear interpolation."""
    knots = np.concatenate([cdf.grid.nodes(), [cdf.grid.b]])
    c = cdf.cdf
    idx = np.searchsorted(c, levels, side="left")
    idx = np.clip(idx, 1, len(c) - 1)
    c0 = c[idx - 1]
    c1 = c[idx]
    denom = np.where(c1 > c0, c1 - c0, 1.0)
    frac = np.clip((levels - c0) / denom, 0.0, 1.0)
    return knots[idx - 1] + frac * (knots[idx] - knots[idx - 1])


def _common_mass(x: Field1D, y: Field1D, mass_tol: float):
    fx = cdf_from_field(x)
    fy = cdf_from_field(y)
    mx, my = fx.mass, fy.mass
    scale = max(mx, my)
    if scale <= 0:
        raise ValueError("cannot transport fields with zero mass")
    if abs(mx - my) > mass_tol * scale:
        raise ValueError(f"mass mismatch beyond tolerance: {mx:.6g} vs {my:.6g}")
    mass = 0.5 * (mx + my)
    # renormalize both cumulative functions to the common mean mass
    return DiscreteCDF(fx.grid, fx.cdf * (mass / mx)), DiscreteCDF(fy.grid, fy.cdf * (mass / my)), mass


def wasserstein_1d(
    x: Field1D, y: Field1D, p: float, m: int | None = None, mass_tol: float = MASS_TOL
) -> float:
    """Quantile-function W_p between nonnegative equal-mass 1D fields.

    Quantiles of both inputs are compared at the m midpoint mass levels
    (s + 1/2)/m * mass; p = inf returns the largest quantile gap.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    require_same_grid(x, y)
    if m is None:
        m = 4 * x.grid.n
    fx, fy, mass = _common_mass(x, y, mass_tol)
    levels = (np.arange(m) + 0.5) / m * mass
    dq = np.abs(quantiles(fx, levels) - quantiles(fy, levels))
    if np.isinf(p):
        return float(dq.max(initial=0.0))
    return float(((dq**p).sum() / m * mass) ** (1.0 / p))


def w1_via_cdf(x: Field1D, y: Field1D, mass_tol: float = MASS_TOL) -> float:
    """W_1 as the L^1 distance between the cumulative functions."""
    require_same_grid(x, y)
    fx, fy, _ = _common_mass(x, y, mass_tol)
    diff = np.abs(fx.cdf[:-1] - fy.cdf[:-1])
    return float(x.grid.spacing * diff.sum())


def clamped_projections_from_polar(grid, spec) -> list[Field1D]:
    """Band-limited projections with negative ripples clamped to zero and
    each angle renormalized to the field's mass."""
    projections = projections_from_polar(grid, spec)
    mass = float(np.real(spec.coeffs[0, grid.n // 2]))  # zero-frequency mass
    h = grid.spacing
    out = []
    for proj in projections:
        vals = np.clip(proj.values, 0.0, None)
        total = vals.sum() * h
        if total > 0:
            vals = vals * (mass / total)
        out.append(Field1D(proj.grid, vals))
    return out


def _clamped_projections(x: Field2D, angles, tol: float):
    return clamped_projections_from_polar(x.grid, polar_coefficients_fast(x, angles, tol=tol))


def _sw_from_projections(px, py, ps, grid, m: int | None = None, mass_tol: float = MASS_TOL) -> dict:
    """Per-p sliced distances from precomputed per-angle projections."""
    if m is None:
        m = 4 * grid.n
    ps = [float(p) for p in np.atleast_1d(ps)]
    for p in ps:
        if p < 1:
            raise ValueError(f"p must be >= 1, got {p}")
    powers = {p: [] for p in ps}
    for fx, fy in zip(px, py):
        cx, cy, mass = _common_mass(fx, fy, mass_tol)
        levels = (np.arange(m) + 0.5) / m * mass
        dq = np.abs(quantiles(cx, levels) - quantiles(cy, levels))
        for p in ps:
            if np.isinf(p):
                powers[p].append(dq.max(initial=0.0))
            else:
                powers[p].append(((dq**p).sum() / m * mass) ** (1.0 / p))
    out = {}
    for p in ps:
        per_angle = np.asarray(powers[p])
        if np.isinf(p):
            out[p] = float(per_angle.max(initial=0.0))
        else:
            out[p] = float(((per_angle**p).mean()) ** (1.0 / p))
    return out


def sliced_wasserstein_many(
    x: Field2D,
    y: Field2D,
    ps,
    angles=None,
    tol: float = 1e-9,
    m: int | None = None,
    mass_tol: float = MASS_TOL,
) -> dict:
    """Sliced W_p for several p values sharing one set of projections."""
    require_same_grid(x, y)
    grid = x.grid
    if angles is None:
        angles = default_angles(grid.n)
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    px = _clamped_projections(x, angles, tol)
    py = _clamped_projections(y, angles, tol)
    return _sw_from_projections(px, py, ps, grid, m=m, mass_tol=mass_tol)


def sliced_wasserstein_2d(
    x: Field2D,
    y: Field2D,
    p: float,
    angles=None,
    tol: float = 1e-9,
    m: int | None = None,
    mass_tol: float = MASS_TOL,
) -> float:
    """Sliced W_p: p-mean over projection angles of per-angle 1D distances."""
    return sliced_wasserstein_many(x, y, [p], angles=angles, tol=tol, m=m, mass_tol=mass_tol)[
        float(p)
    ]

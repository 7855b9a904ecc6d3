"""Uniform grids, sampled fields, Gaussian mixtures, and grid quadrature.

Fields are samples of compactly supported functions on uniform grids:
1D nodes t_j = a + j*(b-a)/n, 2D nodes (t_i, t_j) with t_j = -R + 2*R*j/n.
Quadrature is the left-Riemann rule on these nodes throughout, so that
discrete norms and distances in the rest of the package are defined on
exactly these samples.
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

__all__ = [
    "Grid1D",
    "Grid2D",
    "Field1D",
    "Field2D",
    "GaussianMixtureSpec",
    "sample_mixture",
    "riemann_integral",
    "lebesgue_distance",
    "lebesgue_norm",
    "convolve2d",
    "resample_bilinear",
    "save_field",
    "load_field",
    "field_to_csv",
]


def _check_even(n: int) -> int:
    n = int(n)
    if n <= 0 or n % 2 != 0:
        raise ValueError(f"sample count must be a positive even integer, got {n}")
    return n


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of n nodes t_j = a + j*(b-a)/n on [a, b); n even."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError(f"need b > a, got [{self.a}, {self.b}]")
        object.__setattr__(self, "n", _check_even(self.n))

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def spacing(self) -> float:
        return (self.b - self.a) / self.n

    def nodes(self) -> np.ndarray:
        return self.a + np.arange(self.n) * self.spacing


@dataclass(frozen=True)
class Grid2D:
    """Uniform n-by-n grid on [-R, R)^2 with nodes t_j = -R + 2*R*j/n; n even."""

    R: float
    n: int

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"half-extent R must be positive, got {self.R}")
        object.__setattr__(self, "n", _check_even(self.n))

    @property
    def length(self) -> float:
        return 2.0 * self.R

    @property
    def spacing(self) -> float:
        return 2.0 * self.R / self.n

    def nodes(self) -> np.ndarray:
        return -self.R + np.arange(self.n) * self.spacing


def _check_values(values, expected_shape) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.shape != expected_shape:
        raise ValueError(f"values have shape {values.shape}, expected {expected_shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("field values must be finite")
    return values


@dataclass(frozen=True)
class Field1D:
    """Real samples values[j] = f(t_j) on a Grid1D."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values, (self.grid.n,)))

    def __add__(self, other):
        return _field_binop(self, other, np.add)

    def __sub__(self, other):
        return _field_binop(self, other, np.subtract)

    def __mul__(self, scalar):
        return Field1D(self.grid, self.values * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Field2D:
    """Real samples values[i, j] = f(t_i, t_j) on a Grid2D (first axis is the
    first coordinate)."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        n = self.grid.n
        vals = np.asarray(self.values, dtype=float)
        if vals.shape == (n * n,):
            vals = vals.reshape(n, n)
        object.__setattr__(self, "values", _check_values(vals, (n, n)))

    def __add__(self, other):
        return _field_binop(self, other, np.add)

    def __sub__(self, other):
        return _field_binop(self, other, np.subtract)

    def __mul__(self, scalar):
        return Field2D(self.grid, self.values * float(scalar))

    __rmul__ = __mul__


def _field_binop(x, y, op):
    if type(x) is not type(y):
        raise ValueError("cannot combine fields of different dimensionality")
    if x.grid != y.grid:
        raise ValueError(f"grid mismatch: {x.grid} vs {y.grid}")
    return type(x)(x.grid, op(x.values, y.values))


def require_same_grid(x, y):
    """Raise ValueError unless x and y live on the identical grid."""
    if type(x) is not type(y) or x.grid != y.grid:
        raise ValueError(f"grid mismatch: {getattr(x, 'grid', None)} vs {getattr(y, 'grid', None)}")


@dataclass(frozen=True)
class GaussianMixtureSpec:
    """Convex combination of isotropic Gaussians sharing one width.

    centers: (m, d) array of component centers, d in {1, 2}.
    weights: nonnegative component weights; rescaled to sum to 1 when
        ``normalized`` is set.
    width: common standard deviation of the isotropic components.
    """

    centers: np.ndarray
    weights: np.ndarray
    width: float
    normalized: bool = True

    def __post_init__(self):
        centers = np.atleast_2d(np.asarray(self.centers, dtype=float))
        if centers.shape[0] == 0:
            raise ValueError("mixture needs at least one center")
        if centers.shape[1] not in (1, 2):
            raise ValueError(f"centers must be 1D or 2D points, got d={centers.shape[1]}")
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (centers.shape[0],):
            raise ValueError("one weight per center required")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise ValueError("weights must be finite and nonnegative")
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.normalized:
            total = weights.sum()
            if total <= 0:
                raise ValueError("normalized mixture needs positive total weight")
            weights = weights / total
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.centers.shape[1]

    def total_mass(self) -> float:
        return float(self.weights.sum())

    def support_radius(self, tail_sigmas: float = 6.0) -> float:
        """Radius of a centered disc numerically containing the mixture."""
        return float(np.max(np.linalg.norm(self.centers, axis=1)) + tail_sigmas * self.width)


def mixture_value(spec: GaussianMixtureSpec, points: np.ndarray) -> np.ndarray:
    """Evaluate the mixture density at an (m, d) array of points."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = spec.dim
    if pts.shape[1] != d:
        raise ValueError(f"points have dimension {pts.shape[1]}, mixture has {d}")
    s2 = spec.width**2
    norm = (2.0 * np.pi * s2) ** (d / 2.0)
    sq = ((pts[:, None, :] - spec.centers[None, :, :]) ** 2).sum(axis=2)
    return (np.exp(-sq / (2.0 * s2)) / norm) @ spec.weights


def sample_mixture(spec: GaussianMixtureSpec, grid):
    """Sample the mixture density exactly on every grid node."""
    if isinstance(grid, Grid1D):
        if spec.dim != 1:
            raise ValueError("1D grid requires 1D centers")
        t = grid.nodes()
        s2 = spec.width**2
        norm = np.sqrt(2.0 * np.pi * s2)
        vals = np.exp(-((t[:, None] - spec.centers[None, :, 0]) ** 2) / (2.0 * s2)) / norm
        return Field1D(grid, vals @ spec.weights)
    if isinstance(grid, Grid2D):
        if spec.dim != 2:
            raise ValueError("2D grid requires 2D centers")
        t = grid.nodes()
        s2 = spec.width**2
        # separable per component: exp(-(x-cx)^2/2s2) * exp(-(y-cy)^2/2s2)
        ex = np.exp(-((t[:, None] - spec.centers[None, :, 0]) ** 2) / (2.0 * s2))
        ey = np.exp(-((t[:, None] - spec.centers[None, :, 1]) ** 2) / (2.0 * s2))
        vals = np.einsum("im,jm,m->ij", ex, ey, spec.weights) / (2.0 * np.pi * s2)
        return Field2D(grid, vals)
    raise TypeError(f"unsupported grid type {type(grid)!r}")


def riemann_integral(x) -> float:
    """Left-Riemann integral: (L/n) * sum (1D) or (L/n)^2 * sum (2D)."""
    h = x.grid.spacing
    if isinstance(x, Field1D):
        return float(h * x.values.sum())
    if isinstance(x, Field2D):
        return float(h * h * x.values.sum())
    raise TypeError(f"unsupported field type {type(x)!r}")


def lebesgue_norm(x, p: float) -> float:
    """Discrete Lebesgue p-norm ((L/n)^d sum |x|^p)^(1/p); max |x| at p=inf."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    vals = np.abs(np.asarray(x.values, dtype=float))
    if np.isinf(p):
        return float(vals.max(initial=0.0))
    d = 1 if isinstance(x, Field1D) else 2
    cell = x.grid.spacing**d
    return float((cell * (vals**p).sum()) ** (1.0 / p))


def lebesgue_distance(x, y, p: float) -> float:
    """Discrete Lebesgue p-distance between two fields on the same grid."""
    require_same_grid(x, y)
    return lebesgue_norm(type(x)(x.grid, x.values - y.values), p)


def convolve2d(x: Field2D, w: Field2D) -> Field2D:
    """Linear (zero-padded) convolution scaled by the area element.

    Returns samples of f*w on the input grid; w must be numerically
    supported well inside the grid so the linear convolution fits.
    """
    require_same_grid(x, y=w)
    n = x.grid.n
    h = x.grid.spacing
    full = fftconvolve(x.values, w.values, mode="full")
    # node t_j sits at offset index j - n/2 of the full linear convolution
    out = full[n // 2 : n // 2 + n, n // 2 : n // 2 + n] * (h * h)
    return Field2D(x.grid, out)


def resample_bilinear(x: Field2D, points: np.ndarray) -> np.ndarray:
    """Bilinearly interpolate node values at (m, 2) points; 0 outside [-R, R]^2."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    grid = x.grid
    n, h, R = grid.n, grid.spacing, grid.R
    # pad one zero ring so cells touching the boundary interpolate to zero
    padded = np.zeros((n + 2, n + 2))
    padded[1:-1, 1:-1] = x.values
    gx = (pts[:, 0] + R) / h + 1.0
    gy = (pts[:, 1] + R) / h + 1.0
    inside = (np.abs(pts[:, 0]) <= R) & (np.abs(pts[:, 1]) <= R)
    gx = np.clip(gx, 0.0, n + 1.0 - 1e-12)
    gy = np.clip(gy, 0.0, n + 1.0 - 1e-12)
    i0 = np.floor(gx).astype(int)
    j0 = np.floor(gy).astype(int)
    fx = gx - i0
    fy = gy - j0
    v00 = padded[i0, j0]
    v10 = padded[i0 + 1, j0]
    v01 = padded[i0, j0 + 1]
    v11 = padded[i0 + 1, j0 + 1]
    out = (
        v00 * (1 - fx) * (1 - fy)
        + v10 * fx * (1 - fy)
        + v01 * (1 - fx) * fy
        + v11 * fx * fy
    )
    return np.where(inside, out, 0.0)


# --- serialization -----------------------------------------------------------

_MAGIC = b"SCMF"
_VERSION = 1
_HEADER = struct.Struct("<4sHHI4x")  # magic, version, dims, n, reserved


def save_field(x, path) -> None:
    """Write a field to the binary container (16-byte header, f64 LE payload)."""
    if isinstance(x, Field1D):
        dims, extents = 1, (x.grid.a, x.grid.b)
    elif isinstance(x, Field2D):
        dims, extents = 2, (x.grid.R,)
    else:
        raise TypeError(f"unsupported field type {type(x)!r}")
    with open(path, "wb") as f:
        f.write(_HEADER.pack(_MAGIC, _VERSION, dims, x.grid.n))
        f.write(np.asarray(extents, dtype="<f8").tobytes())
        f.write(np.ascontiguousarray(x.values, dtype="<f8").tobytes())


def load_field(path):
    """Read a field written by :func:`save_field`."""
    with open(path, "rb") as f:
        magic, version, dims, n = _HEADER.unpack(f.read(_HEADER.size))
        if magic != _MAGIC:
            raise ValueError(f"not a field container (magic {magic!r})")
        if version != _VERSION:
            raise ValueError(f"unsupported container version {version}")
        if dims == 1:
            a, b = np.frombuffer(f.read(16), dtype="<f8")
            values = np.frombuffer(f.read(8 * n), dtype="<f8").copy()
            return Field1D(Grid1D(float(a), float(b), n), values)
        if dims == 2:
            (R,) = np.frombuffer(f.read(8), dtype="<f8")
            values = np.frombuffer(f.read(8 * n * n), dtype="<f8").copy()
            return Field2D(Grid2D(float(R), n), values.reshape(n, n))
    raise ValueError(f"unsupported dims {dims}")


def field_to_csv(x: Field1D, path) -> None:
    """Export a 1D field as CSV with a header row."""
    if not isinstance(x, Field1D):
        raise TypeError("CSV export is defined for 1D fields")
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["t", "value"])
        for t, v in zip(x.grid.nodes(), x.values):
            writer.writerow([f"{t:.12g}", f"{v:.12g}"])

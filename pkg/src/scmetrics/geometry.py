"""Deformations, displacement measures, mean mixed norms, and robustness bounds.

A deformation map Phi acts on a field by the integral-preserving push-forward
f_Phi(x) = f(Phi(x)) |det grad Phi(x)|.  Displacement measures quantify how far
Phi moves points of a centered disc of radius ``domain_radius``; the bound
calculators combine them with mean mixed norms of the field to give upper
bounds on sliced Cramér distances between a field and its deformation.

The rotation and dilation calculators are normalized to fields supported in
the unit disc; multiply by the support radius for larger supports.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .grids import Field2D, GaussianMixtureSpec, Grid2D, resample_bilinear, sample_mixture

__all__ = [
    "Deformation",
    "Translation",
    "Rotation",
    "Dilation",
    "AffineMap",
    "DirectionSet",
    "uniform_directions",
    "parse_deformation",
    "push_forward_mixture",
    "push_forward_grid",
    "displacement_sup",
    "displacement_along",
    "mean_displacement",
    "directional_lower_factor",
    "projection_lp_profile",
    "mean_mixed_norm",
    "cosine_pmean",
    "bound_general",
    "bound_rotation",
    "bound_translation",
    "bound_dilation",
    "bound_monotone_1d",
    "convolution_factor",
]

BOUNDARY_SAMPLES = 4096


@dataclass(frozen=True)
class Deformation:
    """Base class; ``domain_radius`` is the radius of the ball the map acts on."""

    domain_radius: float = 1.0

    def apply(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def jacobian_det(self) -> float:
        """|det grad Phi|, constant for the affine families implemented here."""
        raise NotImplementedError

    def inverse(self) -> "Deformation":
        raise NotImplementedError

    def _domain_boundary(self) -> np.ndarray:
        # displacement of an affine map is affine, hence boundary-attained;
        # inverses carry the image of the parent domain so that displacement
        # measures of a map and its inverse coincide
        override = getattr(self, "_boundary_override", None)
        if override is not None:
            return override
        return _boundary_points(self.domain_radius)

    def _with_boundary(self, boundary: np.ndarray) -> "Deformation":
        object.__setattr__(self, "_boundary_override", boundary)
        return self


@dataclass(frozen=True)
class Translation(Deformation):
    v: tuple[float, float] = (0.0, 0.0)

    def apply(self, pts):
        return np.asarray(pts, dtype=float) + np.asarray(self.v, dtype=float)

    def jacobian_det(self):
        return 1.0

    def inverse(self):
        return Translation(self.domain_radius, (-self.v[0], -self.v[1]))


@dataclass(frozen=True)
class Rotation(Deformation):
    theta: float = 0.0

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, -s], [s, c]])

    def apply(self, pts):
        return np.asarray(pts, dtype=float) @ self.matrix().T

    def jacobian_det(self):
        return 1.0

    def inverse(self):
        return Rotation(self.domain_radius, -self.theta)


@dataclass(frozen=True)
class Dilation(Deformation):
    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha >= 1.0:
            raise ValueError(f"dilation factor must be >= 1, got {self.alpha}")

    def apply(self, pts):
        return self.alpha * np.asarray(pts, dtype=float)

    def jacobian_det(self):
        return self.alpha**2

    def inverse(self):
        # alpha < 1 leaves the supported family; invert via the affine map
        inv = AffineMap(
            self.domain_radius, ((1.0 / self.alpha, 0.0), (0.0, 1.0 / self.alpha)), (0.0, 0.0)
        )
        return inv._with_boundary(self.apply(self._domain_boundary()))


@dataclass(frozen=True)
class AffineMap(Deformation):
    A: tuple = ((1.0, 0.0), (0.0, 1.0))
    b: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.shape != (2, 2) or abs(np.linalg.det(A)) < 1e-14:
            raise ValueError("affine map needs an invertible 2x2 matrix")

    def matrix(self) -> np.ndarray:
        return np.asarray(self.A, dtype=float)

    def apply(self, pts):
        return np.asarray(pts, dtype=float) @ self.matrix().T + np.asarray(self.b, dtype=float)

    def jacobian_det(self):
        return abs(float(np.linalg.det(self.matrix())))

    def inverse(self):
        Ainv = np.linalg.inv(self.matrix())
        binv = -Ainv @ np.asarray(self.b, dtype=float)
        inv = AffineMap(self.domain_radius, tuple(map(tuple, Ainv)), tuple(binv))
        return inv._with_boundary(self.apply(self._domain_boundary()))


def parse_deformation(text: str, domain_radius: float = 1.0) -> Deformation:
    """Parse ``translate:vx,vy``, ``rotate:theta``, ``dilate:alpha``,
    ``affine:a11,a12,a21,a22,b1,b2``."""
    kind, _, rest = text.partition(":")
    try:
        nums = [float(v) for v in rest.split(",")] if rest else []
        if kind == "translate" and len(nums) == 2:
            return Translation(domain_radius, (nums[0], nums[1]))
        if kind == "rotate" and len(nums) == 1:
            return Rotation(domain_radius, nums[0])
        if kind == "dilate" and len(nums) == 1:
            return Dilation(domain_radius, nums[0])
        if kind == "affine" and len(nums) == 6:
            return AffineMap(domain_radius, ((nums[0], nums[1]), (nums[2], nums[3])), (nums[4], nums[5]))
    except ValueError as exc:
        raise ValueError(f"cannot parse deformation {text!r}: {exc}") from None
    raise ValueError(f"cannot parse deformation {text!r}")


# --- push-forwards ------------------------------------------------------------


def _is_similarity(A: np.ndarray) -> float | None:
    """Scale s if A = s * (orthogonal matrix), else None."""
    AtA = A.T @ A
    s2 = 0.5 * (AtA[0, 0] + AtA[1, 1])
    if s2 <= 0:
        return None
    if np.allclose(AtA, s2 * np.eye(2), rtol=1e-12, atol=1e-12 * s2):
        return float(np.sqrt(s2))
    return None


def push_forward_mixture(spec: GaussianMixtureSpec, d: Deformation, grid: Grid2D | None = None):
    """Deform an isotropic mixture: f_Phi = f(Phi(.)) |det grad Phi|.

    Similarity maps (translation, rotation, dilation, scaled orthogonal
    affine) keep the mixture isotropic and return a new spec with centers
    mapped through Phi^{-1}; other affine maps fall back to a sampled
    push-forward on ``grid``.
    """
    if isinstance(d, Translation):
        v = np.asarray(d.v, dtype=float)
        return GaussianMixtureSpec(spec.centers - v, spec.weights, spec.width, normalized=False)
    if isinstance(d, Rotation):
        Rinv = Rotation(d.domain_radius, -d.theta).matrix()
        return GaussianMixtureSpec(spec.centers @ Rinv.T, spec.weights, spec.width, normalized=False)
    if isinstance(d, Dilation):
        return GaussianMixtureSpec(
            spec.centers / d.alpha, spec.weights, spec.width / d.alpha, normalized=False
        )
    if isinstance(d, AffineMap):
        A = d.matrix()
        s = _is_similarity(A)
        if s is not None:
            Ainv = np.linalg.inv(A)
            centers = (spec.centers - np.asarray(d.b, dtype=float)) @ Ainv.T
            return GaussianMixtureSpec(centers, spec.weights, spec.width / s, normalized=False)
        if grid is None:
            raise ValueError("non-similarity affine push-forward needs a grid to fall back to")
        warnings.warn(
            "affine map is not a similarity; falling back to sampled push-forward",
            UserWarning,
            stacklevel=2,
        )
        return push_forward_grid(sample_mixture(spec, grid), d)
    raise TypeError(f"unsupported deformation {type(d)!r}")


def push_forward_grid(x: Field2D, d: Deformation) -> Field2D:
    """Sampled push-forward: values[j] = x(Phi(node_j)) |det grad Phi|."""
    grid = x.grid
    t = grid.nodes()
    X, Y = np.meshgrid(t, t, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    vals = resample_bilinear(x, d.apply(pts)) * d.jacobian_det()
    return Field2D(grid, vals.reshape(grid.n, grid.n))


# --- displacement measures ------------------------------------------------------


def _boundary_points(R: float, count: int = BOUNDARY_SAMPLES) -> np.ndarray:
    phi = 2.0 * np.pi * np.arange(count) / count
    return R * np.column_stack([np.cos(phi), np.sin(phi)])


def displacement_sup(d: Deformation) -> float:
    """Maximum displacement sup |x - Phi(x)| over the radius-R domain ball."""
    R = d.domain_radius
    if isinstance(d, Translation):
        return float(np.hypot(*d.v))
    if isinstance(d, Rotation):
        return float(2.0 * R * abs(math.sin(d.theta / 2.0)))
    if isinstance(d, Dilation):
        return float((d.alpha - 1.0) * R)
    pts = d._domain_boundary()
    return float(np.linalg.norm(pts - d.apply(pts), axis=1).max())


def displacement_along(d: Deformation, u) -> float:
    """Directional displacement max |<x - Phi(x), u>| for a unit vector u."""
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    R = d.domain_radius
    if isinstance(d, Translation):
        return float(abs(np.dot(d.v, u)))
    if isinstance(d, Rotation):
        # (I - R_theta) is 2 sin(theta/2) times an orthogonal matrix
        return float(2.0 * R * abs(math.sin(d.theta / 2.0)))
    if isinstance(d, Dilation):
        return float((d.alpha - 1.0) * R)
    pts = d._domain_boundary()
    return float(np.abs((pts - d.apply(pts)) @ u).max())


def mean_displacement(d: Deformation, eta: "DirectionSet", p: float) -> float:
    """p-mean over eta of the directional displacements; p=inf delegates to
    :func:`displacement_sup`."""
    if np.isinf(p):
        return displacement_sup(d)
    eps = np.array([displacement_along(d, u) for u in eta.directions])
    return float((eta.weights @ eps**p) ** (1.0 / p))


@dataclass(frozen=True)
class DirectionSet:
    """Discrete direction measure: unit vectors u_m with weights summing to 1."""

    directions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        dirs = np.atleast_2d(np.asarray(self.directions, dtype=float))
        w = np.asarray(self.weights, dtype=float)
        if dirs.shape[1] != 2 or len(w) != len(dirs):
            raise ValueError("need (m, 2) directions and m weights")
        if np.any(np.abs(np.linalg.norm(dirs, axis=1) - 1.0) > 1e-12):
            raise ValueError("directions must be unit vectors")
        if abs(w.sum() - 1.0) > 1e-12 or np.any(w < 0):
            raise ValueError("weights must be nonnegative and sum to 1")
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "weights", w)

    @property
    def angles(self) -> np.ndarray:
        return np.arctan2(self.directions[:, 1], self.directions[:, 0])


def uniform_directions(count: int = 1024) -> DirectionSet:
    """Equispaced directions on the half-circle with equal weights."""
    phi = np.pi * np.arange(count) / count
    dirs = np.column_stack([np.cos(phi), np.sin(phi)])
    return DirectionSet(dirs, np.full(count, 1.0 / count))


def directional_lower_factor(p: float, eta: DirectionSet, ustar) -> float:
    """(sum_m w_m |<u*, u_m>|^p)^(1/p): conversion between sup and mean
    displacement realized by the maximizing direction u*."""
    ustar = np.asarray(ustar, dtype=float)
    if abs(np.linalg.norm(ustar) - 1.0) > 1e-9:
        raise ValueError("u* must be a unit vector")
    dots = np.abs(eta.directions @ ustar)
    if np.isinf(p):
        return float(dots.max(initial=0.0))
    return float((eta.weights @ dots**p) ** (1.0 / p))


def cosine_pmean(p: float, d: int = 2) -> float:
    """p-mean of |<e1, u>| over the uniform sphere measure; 1 at p=inf.

    For d=2 this is (Gamma(p/2 + 1/2) / (Gamma(p/2 + 1) sqrt(pi)))^(1/p),
    the sharp constant in the translation bound.
    """
    if d != 2:
        raise ValueError("only d=2 is supported")
    if np.isinf(p):
        return 1.0
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    logval = math.lgamma(p / 2.0 + 0.5) - math.lgamma(p / 2.0 + 1.0) - 0.5 * math.log(math.pi)
    return float(math.exp(logval / p))


# --- mean mixed norms -----------------------------------------------------------


def projection_lp_profile(x: Field2D, p: float, eta: DirectionSet | None = None) -> np.ndarray:
    """L^p norms of the spatial-domain projections of |x|, one per direction.

    Projections use rotate-and-sum with bilinear resampling, which handles
    |x| of a signed field where the band-limited spectral path would ring.
    """
    if eta is None:
        eta = uniform_directions()
    grid = x.grid
    n, h, R = grid.n, grid.spacing, grid.R
    t = grid.nodes()
    absx = np.abs(x.values)
    T, S = np.meshgrid(t, t, indexing="ij")  # T: projection axis, S: integration axis
    out = np.empty(len(eta.directions))
    for i, (ux, uy) in enumerate(eta.directions):
        gx = (T * ux - S * uy + R) / h
        gy = (T * uy + S * ux + R) / h
        smp = ndimage.map_coordinates(
            absx, [gx.ravel(), gy.ravel()], order=1, mode="constant", cval=0.0
        )
        proj = smp.reshape(n, n).sum(axis=1) * h
        if np.isinf(p):
            out[i] = proj.max(initial=0.0)
        else:
            out[i] = (h * (proj**p).sum()) ** (1.0 / p)
    return out


def mean_mixed_norm(x: Field2D, p: float, r: float, eta: DirectionSet | None = None) -> float:
    """r-mean over directions of the L^p norms of projections of |x|.

    r = inf takes the sup over directions; p = r is the combination entering
    the general deformation bound.
    """
    if eta is None:
        eta = uniform_directions()
    profile = projection_lp_profile(x, p, eta)
    if np.isinf(r):
        return float(profile.max(initial=0.0))
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return float((eta.weights @ profile**r) ** (1.0 / r))


# --- bound calculators -----------------------------------------------------------


def bound_general(
    f_norms: dict,
    d: Deformation,
    eta: DirectionSet,
    p: float,
    g_norms: dict | None = None,
) -> tuple[float, float, float]:
    """The three general deformation bounds on the sliced Cramér distance.

    ``f_norms`` holds {"M_p": ..., "M_p_inf": ..., "L1": ...} of the field;
    passing ``g_norms`` of the deformed field tightens each bound to the
    smaller of the two norm sets.  Returns the tuple; the min is operative.
    """
    norms = dict(f_norms)
    if g_norms is not None:
        for key in norms:
            norms[key] = min(norms[key], g_norms[key])
    factor = 2.0 if np.isinf(p) else 2.0 ** ((p - 1.0) / p)
    eps_sup = displacement_sup(d)
    eps_p = mean_displacement(d, eta, p)
    eps_1 = mean_displacement(d, eta, 1.0)
    b1 = factor * norms["M_p"] * eps_sup
    b2 = factor * norms["M_p_inf"] * eps_p
    if np.isinf(p):
        b3 = norms["L1"] * (1.0 if eps_1 > 0 else 0.0)
    else:
        b3 = norms["L1"] * eps_1 ** (1.0 / p)
    return b1, b2, b3


def rotation_factor(theta: float, p: float) -> float:
    """Displacement factor of the sharper rotation bound on the unit disc."""
    if not 0.0 <= theta < np.pi:
        raise ValueError(f"rotation angle must lie in [0, pi), got {theta}")
    half = theta / 2.0
    expo = 1.0 if np.isinf(p) else (p - 1.0) / p
    if theta < np.pi / 2.0:
        return float(2.0 * math.sin(half) * (2.0 * math.cos(half)) ** expo)
    inv = 0.0 if np.isinf(p) else 1.0 / p
    return float(2.0 * math.sin(half) ** inv)


def bound_rotation(theta: float, p: float, mixed_norm: float) -> float:
    """Sharper rotation bound for fields supported in the unit disc."""
    return mixed_norm * rotation_factor(theta, p)


def bound_translation(v, p: float, m_p: float, m_p_inf: float) -> tuple[float, float]:
    """Sharper translation bounds (M_p |v|, K_p M_p_inf |v|)."""
    speed = float(np.linalg.norm(np.asarray(v, dtype=float)))
    return m_p * speed, cosine_pmean(p) * m_p_inf * speed


def bound_dilation(alpha: float, p: float, mixed_norm: float) -> float:
    """Sharper dilation bound for fields supported in the unit disc."""
    if not alpha > 1.0:
        raise ValueError(f"dilation bound needs alpha > 1, got {alpha}")
    expo = 1.0 if np.isinf(p) else (p - 1.0) / p
    return float(mixed_norm * (alpha - 1.0) / alpha**expo)


def bound_monotone_1d(eps: float, p: float, lp_norm: float, slope: float | None = None) -> float:
    """1D deformation bound lp_norm * eps, valid for increasing maps only.

    ``slope`` optionally passes the sign of the map's derivative; decreasing
    maps are refused since the sharper bound does not apply to them.
    """
    if slope is not None and slope <= 0:
        raise ValueError("bound requires a monotonically increasing deformation (slope > 0)")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return float(lp_norm * eps)


def convolution_factor(w: Field2D, p: float, eta: DirectionSet | None = None) -> float:
    """Contraction factor of sliced Cramér distances under convolution with w:
    the p-mean over directions of the L^1 norms of projections of |w|."""
    return mean_mixed_norm(w, 1.0, p, eta)

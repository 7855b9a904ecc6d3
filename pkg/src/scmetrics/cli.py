"""Experiment runner: distances, deformation sweeps, noise sweeps, and checks.

Commands read one JSON config (CLI flags override individual fields, the
SCM_SEED environment variable overrides the seed) and write CSV or JSON
tables with stable schemas; ``--plot`` additionally renders a PNG next to
the table.  Every command is a pure function of (config, seed): reruns are
byte-identical.

Exit codes: 0 success, 2 bound/oracle violation, 64 config error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import warnings
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import baselines, cramer, geometry, noise, phantoms
from .cramer import MeanMismatchWarning
from .grids import (
    Field1D,
    Field2D,
    GaussianMixtureSpec,
    Grid1D,
    Grid2D,
    lebesgue_distance,
    lebesgue_norm,
    sample_mixture,
)
from .spectral import default_angles, polar_coefficients_fast

__all__ = [
    "ExperimentConfig",
    "ConfigError",
    "cmd_dist",
    "cmd_deform_sweep",
    "cmd_noise_sweep",
    "cmd_bound_check",
    "cmd_oracle_check",
    "main",
]

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_CONFIG = 64

_SWEEP_DEFAULTS = {
    "translate": (0.0, 0.5),
    "rotate": (0.0, 3.0),
    "dilate": (1.0, 1.75),
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment description shared by all commands."""

    n: int = 256
    p: tuple = (1.0, 2.0, 10.0)
    seed: int = 0
    extent: float = 2.5
    width: float | None = None  # None -> extent / 50
    source: dict | str = "default"
    target: dict | str = "default"
    deform: str = "rotate"
    sweep_min: float | None = None
    sweep_max: float | None = None
    sweep_count: int = 25
    sigmas: tuple = (0.0, 0.5, 1.0, 1.5)
    trials: int = 10
    tol: float = 1e-9
    threads: int = 1
    margin_tol: float = 0.02
    directions: int = 1024
    out: str | None = None
    format: str = "csv"
    plot: bool = False
    debug_corrupt_bounds: bool = False

    def __post_init__(self):
        if self.n % 2 != 0 or self.n <= 0:
            raise ConfigError(f"n must be a positive even integer, got {self.n}")
        if not self.p or any(v < 1 for v in self.p):
            raise ConfigError(f"p values must be >= 1, got {self.p}")
        if self.sweep_count < 1:
            raise ConfigError("sweep_count must be positive")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")

    @property
    def mixture_width(self) -> float:
        return self.width if self.width is not None else self.extent / 50.0

    def scene(self, which: str) -> GaussianMixtureSpec:
        spec = getattr(self, which)
        if spec == "default":
            maker = phantoms.source_scene if which == "source" else phantoms.target_scene
            return maker(self.extent, self.mixture_width)
        if isinstance(spec, str):
            raise ConfigError(
                f"{which} must be 'default' or a mixture spec here; "
                "field containers are only accepted by the dist command"
            )
        try:
            return GaussianMixtureSpec(
                np.asarray(spec["centers"], dtype=float),
                np.asarray(spec["weights"], dtype=float),
                float(spec.get("width", self.mixture_width)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad {which} mixture spec: {exc}") from None

    def grid(self) -> Grid2D:
        return Grid2D(self.extent, self.n)


def _config_from_sources(args) -> ExperimentConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(data) - {f.name for f in fields(ExperimentConfig)}
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    for key in ("n", "seed", "trials", "threads", "out", "format", "deform", "tol", "width"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            data[key] = val
    if getattr(args, "p", None):
        data["p"] = [float(v) for v in args.p.split(",")]
    if getattr(args, "plot", False):
        data["plot"] = True
    if getattr(args, "debug_corrupt_bounds", False):
        data["debug_corrupt_bounds"] = True
    env_seed = os.environ.get("SCM_SEED")
    if env_seed is not None:
        try:
            data["seed"] = int(env_seed)
        except ValueError:
            raise ConfigError(f"SCM_SEED must be an integer, got {env_seed!r}") from None
    for key in ("p", "sigmas"):
        if key in data:
            data[key] = tuple(float(v) for v in data[key])
    try:
        return ExperimentConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


# --- shared helpers ---------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, float):
        return "inf" if np.isinf(v) else f"{v:.12g}"
    return "" if v is None else str(v)


def _jsonable(v):
    # strict JSON has no inf/nan tokens
    if isinstance(v, float) and not np.isfinite(v):
        return _fmt(v) if np.isinf(v) else "nan"
    return v


def _write_rows(rows: list[dict], columns: list[str], config: ExperimentConfig, command: str) -> None:
    if config.out is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c)) for c in columns])
        return
    if config.format == "csv":
        with open(config.out, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_fmt(row.get(c)) for c in columns])
    else:
        doc = {
            "command": command,
            "config": _config_echo(config),
            "rows": [{c: _jsonable(row.get(c)) for c in columns} for row in rows],
        }
        with open(config.out, "w") as f:
            json.dump(doc, f, indent=2, sort_keys=True, default=_fmt)
            f.write("\n")
    if config.plot:
        from . import figures

        stem, _, _ = str(config.out).rpartition(".")
        figures.render_rows(rows, command, (stem or str(config.out)) + ".png")


def _config_echo(config: ExperimentConfig) -> dict:
    echo = {}
    for f in fields(config):
        val = getattr(config, f.name)
        if isinstance(val, tuple):
            val = [_jsonable(v) for v in val]
        echo[f.name] = _jsonable(val) if not isinstance(val, list) else val
    return echo


def _sweep_values(config: ExperimentConfig) -> np.ndarray:
    family = config.deform.partition(":")[0]
    if family not in _SWEEP_DEFAULTS:
        raise ConfigError(f"sweep family must be translate/rotate/dilate, got {family!r}")
    lo, hi = _SWEEP_DEFAULTS[family]
    lo = config.sweep_min if config.sweep_min is not None else lo
    hi = config.sweep_max if config.sweep_max is not None else hi
    if family == "dilate" and lo < 1.0:
        raise ConfigError(f"dilation sweep needs alpha >= 1, got minimum {lo}")
    if hi < lo:
        raise ConfigError(f"empty sweep range [{lo}, {hi}]")
    return np.linspace(lo, hi, config.sweep_count)


def _family_deformation(family: str, delta: float, radius: float) -> geometry.Deformation:
    if family == "translate":
        return geometry.Translation(radius, (delta, 0.0))
    if family == "rotate":
        return geometry.Rotation(radius, delta)
    if family == "dilate":
        return geometry.Dilation(radius, max(delta, 1.0))
    raise ConfigError(f"unknown deformation family {family!r}")


def _sv_distance_many(x: Field2D, y: Field2D, ps, tol: float) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MeanMismatchWarning)
        return noise._sv_many(x - y, list(ps), tol)


# --- commands ----------------------------------------------------------------------


def _dist_field(config: ExperimentConfig, which: str, grid: Grid2D) -> Field2D:
    spec = getattr(config, which)
    if isinstance(spec, str) and spec != "default":
        from .grids import load_field

        try:
            field = load_field(spec)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot load {which} field {spec!r}: {exc}") from None
        if not isinstance(field, Field2D) or field.grid != grid:
            raise ConfigError(
                f"{which} field {spec!r} does not match the configured grid {grid}"
            )
        return field
    return sample_mixture(config.scene(which), grid)


def cmd_dist(config: ExperimentConfig) -> list[dict]:
    """Distance table between the source and target scenes (synthesized
    mixtures or saved field containers)."""
    grid = config.grid()
    f = _dist_field(config, "source", grid)
    g = _dist_field(config, "target", grid)
    if config.deform and ":" in config.deform:
        d = geometry.parse_deformation(config.deform)
        if isinstance(config.source, str) and config.source != "default":
            f = geometry.push_forward_grid(f, d)
        else:
            f = sample_mixture(
                geometry.push_forward_mixture(config.scene("source"), d, grid), grid
            )
    ps = list(config.p)
    rows = []
    sc = _sv_distance_many(f, g, ps, config.tol)
    try:
        sw = baselines.sliced_wasserstein_many(f, g, ps, tol=config.tol)
        sw_err = {p: "" for p in ps}
    except ValueError as exc:
        sw = {p: float("nan") for p in ps}
        sw_err = {p: str(exc) for p in ps}
    for p in ps:
        rows.append({"metric": "sliced_cramer", "p": p, "value": sc[p], "error": ""})
    for p in ps:
        rows.append({"metric": "sliced_wasserstein", "p": p, "value": sw[p], "error": sw_err[p]})
    for p in ps:
        rows.append({"metric": "lebesgue", "p": p, "value": lebesgue_distance(f, g, p), "error": ""})
    _write_rows(rows, ["metric", "p", "value", "error"], config, "dist")
    return rows


@dataclass
class _BoundContext:
    """Norms and direction set shared across a sweep."""

    config: ExperimentConfig
    f_spec: GaussianMixtureSpec
    f_field: Field2D
    eta: geometry.DirectionSet
    radius: float
    m_p: dict = field(default_factory=dict)
    m_p_inf: dict = field(default_factory=dict)
    l1: float = 0.0

    @classmethod
    def build(cls, config: ExperimentConfig, f_spec, f_field) -> "_BoundContext":
        eta = geometry.uniform_directions(config.directions)
        ctx = cls(config, f_spec, f_field, eta, f_spec.support_radius())
        for p in config.p:
            profile = geometry.projection_lp_profile(f_field, p, eta)
            if np.isinf(p):
                ctx.m_p[p] = float(profile.max())
            else:
                ctx.m_p[p] = float((eta.weights @ profile**p) ** (1.0 / p))
            ctx.m_p_inf[p] = float(profile.max())
        ctx.l1 = lebesgue_norm(f_field, 1.0)
        return ctx

    def operative_bound(self, family: str, delta: float, p: float) -> float:
        d = _family_deformation(family, delta, self.radius)
        norms = {"M_p": self.m_p[p], "M_p_inf": self.m_p_inf[p], "L1": self.l1}
        candidates = list(geometry.bound_general(norms, d, self.eta, p))
        if family == "translate":
            candidates.extend(geometry.bound_translation((delta, 0.0), p, self.m_p[p], self.m_p_inf[p]))
        elif family == "rotate":
            candidates.append(self.radius * geometry.bound_rotation(delta, p, self.m_p[p]))
        elif family == "dilate" and delta > 1.0:
            candidates.append(self.radius * geometry.bound_dilation(delta, p, self.m_p[p]))
        return float(min(candidates))


def cmd_deform_sweep(config: ExperimentConfig) -> list[dict]:
    """Distances from the deformed source to the target across a sweep."""
    grid = config.grid()
    family = config.deform.partition(":")[0]
    deltas = _sweep_values(config)
    f_spec = config.scene("source")
    f = sample_mixture(f_spec, grid)
    g = sample_mixture(config.scene("target"), grid)
    ps = list(config.p)
    ctx = _BoundContext.build(config, f_spec, f)
    angles = default_angles(grid.n)
    pol_f = polar_coefficients_fast(f, angles, tol=config.tol)
    pol_g = polar_coefficients_fast(g, angles, tol=config.tol)
    g_proj = baselines.clamped_projections_from_polar(grid, pol_g)
    f_proj = baselines.clamped_projections_from_polar(grid, pol_f)

    rows = []
    for delta in deltas:
        d = _family_deformation(family, float(delta), ctx.radius)
        fd_spec = geometry.push_forward_mixture(f_spec, d, grid)
        fd = sample_mixture(fd_spec, grid)
        # the polar transform is linear: one transform serves both distances
        pol_fd = polar_coefficients_fast(fd, angles, tol=config.tol)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", MeanMismatchWarning)
            sc_target = cramer.sv_norms_from_polar(pol_fd - pol_g, grid, ps)
            sc_source = cramer.sv_norms_from_polar(pol_fd - pol_f, grid, ps)
        fd_proj = baselines.clamped_projections_from_polar(grid, pol_fd)
        sw_target = baselines._sw_from_projections(fd_proj, g_proj, ps, grid)
        sw_source = baselines._sw_from_projections(fd_proj, f_proj, ps, grid)
        eps_sup = geometry.displacement_sup(d)
        for p in ps:
            bound = ctx.operative_bound(family, float(delta), p)
            rows.append({"family": family, "delta": float(delta), "p": p,
                         "metric": "sliced_cramer", "dist_to_target": sc_target[p],
                         "dist_to_source": sc_source[p], "bound": bound})
            rows.append({"family": family, "delta": float(delta), "p": p,
                         "metric": "sliced_wasserstein", "dist_to_target": sw_target[p],
                         "dist_to_source": sw_source[p], "bound": eps_sup})
            rows.append({"family": family, "delta": float(delta), "p": p,
                         "metric": "lebesgue", "dist_to_target": lebesgue_distance(fd, g, p),
                         "dist_to_source": lebesgue_distance(fd, f, p), "bound": None})
    _write_rows(rows, ["family", "delta", "p", "metric", "dist_to_target",
                       "dist_to_source", "bound"], config, "deform-sweep")
    return rows


def cmd_noise_sweep(config: ExperimentConfig) -> list[dict]:
    """Mean distances from the deformed source to the noisy target."""
    grid = config.grid()
    family = config.deform.partition(":")[0]
    deltas = _sweep_values(config)
    f_spec = config.scene("source")
    g = sample_mixture(config.scene("target"), grid)
    ps = list(config.p)
    radius = f_spec.support_radius()

    rows = []
    for delta in deltas:
        d = _family_deformation(family, float(delta), radius)
        fd = sample_mixture(geometry.push_forward_mixture(f_spec, d, grid), grid)
        for sigma in config.sigmas:
            trials = 1 if sigma == 0 else config.trials
            model = noise.NoiseModel(float(sigma), config.seed)

            def one_trial(trial, fd=fd, model=model, sigma=sigma):
                gz = g if sigma == 0 else g + noise.sample_noise(model, grid, trial)
                sc = _sv_distance_many(fd, gz, ps, config.tol)
                leb = {p: lebesgue_distance(fd, gz, p) for p in ps}
                return sc, leb

            results = noise.ordered_parallel_map(one_trial, range(trials), config.threads)
            for p in ps:
                for metric, pick in (("sliced_cramer", 0), ("lebesgue", 1)):
                    vals = np.array([r[pick][p] for r in results])
                    rows.append({"delta": float(delta), "sigma": float(sigma), "metric": metric,
                                 "p": p, "mean_dist": float(vals.mean()), "trials": trials})
    _write_rows(rows, ["delta", "sigma", "metric", "p", "mean_dist", "trials"], config, "noise-sweep")
    return rows


def cmd_bound_check(config: ExperimentConfig) -> tuple[list[dict], int]:
    """Verify every deformation-robustness bound across sweeps; exit 2 on violation."""
    grid = config.grid()
    f_spec = config.scene("source")
    f = sample_mixture(f_spec, grid)
    ps = list(config.p)
    ctx = _BoundContext.build(config, f_spec, f)
    corrupt = 0.5 if config.debug_corrupt_bounds else 1.0
    rows = []

    def record(theorem, family, delta, p, lhs, rhs):
        rhs = rhs * corrupt
        if rhs > 0:
            margin = (rhs - lhs) / rhs
        else:
            margin = 0.0 if lhs <= 1e-12 else -np.inf
        rows.append({"theorem": theorem, "family": family, "delta": float(delta), "p": p,
                     "lhs": lhs, "rhs": rhs, "margin": margin})

    for family in ("translate", "rotate", "dilate"):
        cfg = replace(config, deform=family)
        deltas = _sweep_values(cfg)
        for delta in deltas:
            d = _family_deformation(family, float(delta), ctx.radius)
            fd = sample_mixture(geometry.push_forward_mixture(f_spec, d, grid), grid)
            sc = _sv_distance_many(fd, f, ps, config.tol)
            for p in ps:
                norms = {"M_p": ctx.m_p[p], "M_p_inf": ctx.m_p_inf[p], "L1": ctx.l1}
                b1, b2, b3 = geometry.bound_general(norms, d, ctx.eta, p)
                record("general", family, delta, p, sc[p], min(b1, b2, b3))
                if family == "translate":
                    t1, t2 = geometry.bound_translation((delta, 0.0), p, ctx.m_p[p], ctx.m_p_inf[p])
                    record("translation", family, delta, p, sc[p], min(t1, t2))
                elif family == "rotate":
                    record("rotation", family, delta, p, sc[p],
                           ctx.radius * geometry.bound_rotation(float(delta), p, ctx.m_p[p]))
                elif family == "dilate" and delta > 1.0:
                    record("dilation", family, delta, p, sc[p],
                           ctx.radius * geometry.bound_dilation(float(delta), p, ctx.m_p[p]))

    # 1D monotone bound: translations of the 1D marginal density
    grid1 = Grid1D(-config.extent, config.extent, config.n)
    base = GaussianMixtureSpec(np.array([[-0.3], [0.25]]), np.array([0.4, 0.6]), 0.12)
    f1 = sample_mixture(base, grid1)
    for eps in np.linspace(0.0, 0.2, config.sweep_count):
        shifted = GaussianMixtureSpec(base.centers - eps, base.weights, base.width)
        f1s = sample_mixture(shifted, grid1)
        for p in ps:
            lhs = cramer.discrete_cramer_1d(f1, f1s, p)
            rhs = geometry.bound_monotone_1d(float(eps), p, lebesgue_norm(f1, p), slope=1.0)
            record("monotone_1d", "translate_1d", eps, p, lhs, rhs)

    worst = min(row["margin"] for row in rows)
    status = EXIT_OK if worst >= -config.margin_tol else EXIT_VIOLATION
    _write_rows(rows, ["theorem", "family", "delta", "p", "lhs", "rhs", "margin"],
                config, "bound-check")
    return rows, status


def cmd_oracle_check(config: ExperimentConfig) -> tuple[list[dict], int]:
    """Cross-validate every dual-route computation; exit 2 beyond tolerance."""
    from .spectral import polar_coefficients_direct

    rows = []
    rng = np.random.default_rng(config.seed)

    # fast vs direct polar transform
    n_small = min(config.n, 128)
    g2 = Grid2D(config.extent, n_small)
    worst = 0.0
    for _ in range(3):
        x = Field2D(g2, rng.standard_normal((n_small, n_small)))
        direct = polar_coefficients_direct(x, default_angles(n_small)).coeffs
        fast = polar_coefficients_fast(x, tol=config.tol).coeffs
        scale = (g2.length / n_small) ** 2 * np.abs(x.values).sum()
        worst = max(worst, float(np.max(np.abs(fast - direct)) / scale))
    rows.append({"check": "polar_fast_vs_direct", "discrepancy": worst,
                 "tolerance": config.tol, "status": "pass" if worst <= config.tol else "fail"})

    # spectral Volterra norm vs cumulative-sum reference, slope of the decay
    trig = lambda t: np.cos(2 * np.pi * t) + 0.7 * np.sin(4 * np.pi * t) - 0.3 * np.cos(6 * np.pi * t)
    ns = [64, 128, 256, 512]
    slopes = []
    for p in (1.0, 2.0, np.inf):
        errs = []
        for n in ns:
            g1 = Grid1D(0.0, 1.0, n)
            v = cramer.discrete_volterra_norm_1d(Field1D(g1, trig(g1.nodes())), p)
            gref = Grid1D(0.0, 1.0, 8 * n)
            ref = cramer.oracle_volterra_norm(Field1D(gref, trig(gref.nodes())), p)
            errs.append(abs(v - ref))
        slope = noise.fit_loglog_slope(ns, errs, 1)[0]
        slopes.append(slope)
    worst_slope = max(slopes)
    rows.append({"check": "volterra_vs_cumsum_order", "discrepancy": worst_slope,
                 "tolerance": -0.9, "status": "pass" if worst_slope <= -0.9 else "fail"})

    # 1D Cramér vs quantile Wasserstein at p=1
    g1 = Grid1D(-config.extent, config.extent, 1024)
    worst = 0.0
    for _ in range(5):
        fa, fb = _random_density_pair(rng, g1)
        c1 = cramer.discrete_cramer_1d(fa, fb, 1.0)
        w1 = baselines.wasserstein_1d(fa, fb, 1.0)
        worst = max(worst, abs(c1 - w1) / w1)
    rows.append({"check": "cramer1_vs_wasserstein1", "discrepancy": worst,
                 "tolerance": 1e-3, "status": "pass" if worst <= 1e-3 else "fail"})

    # sliced identities on the default scenes at their defining resolution
    grid = Grid2D(config.extent, 256)
    f = sample_mixture(config.scene("source"), grid)
    g = sample_mixture(config.scene("target"), grid)
    sc1 = _sv_distance_many(f, g, [1.0], config.tol)[1.0]
    sw1 = baselines.sliced_wasserstein_2d(f, g, 1.0, tol=config.tol)
    rel = abs(sc1 - sw1) / sw1
    rows.append({"check": "sliced_cramer1_vs_sliced_w1", "discrepancy": rel,
                 "tolerance": 1e-2, "status": "pass" if rel <= 1e-2 else "fail"})

    status = EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_VIOLATION
    _write_rows(rows, ["check", "discrepancy", "tolerance", "status"], config, "oracle-check")
    return rows, status


def _random_density_pair(rng, grid):
    """Two random smooth equal-mass densities on the grid."""

    def one():
        k = rng.integers(3, 6)
        centers = rng.uniform(-1.0, 1.0, size=(int(k), 1))
        weights = rng.uniform(0.2, 1.0, size=int(k))
        width = rng.uniform(0.08, 0.2)
        return sample_mixture(GaussianMixtureSpec(centers, weights, width), grid)

    return one(), one()


# --- entry point -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scmetrics", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("dist", "distance table between two scenes"),
        ("deform-sweep", "distances across a deformation sweep"),
        ("noise-sweep", "mean distances to noisy targets across a sweep"),
        ("bound-check", "verify the deformation bounds; exit 2 on violation"),
        ("oracle-check", "cross-validate dual-route computations"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output table path")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--seed", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--p", help="comma-separated p values, e.g. 1,2,10")
        p.add_argument("--deform", help="family (sweeps) or map like rotate:0.2 (dist)")
        p.add_argument("--trials", type=int)
        p.add_argument("--threads", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--width", type=float,
                       help="mixture width; default extent/50, extent/500 mirrors the "
                            "original sub-pixel scenes")
        p.add_argument("--plot", action="store_true", help="render a PNG beside the table")
        if name == "bound-check":
            p.add_argument("--debug-corrupt-bounds", action="store_true",
                           help="halve every bound to self-test the harness")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _config_from_sources(args)
        if args.command == "dist":
            cmd_dist(config)
            return EXIT_OK
        if args.command == "deform-sweep":
            cmd_deform_sweep(config)
            return EXIT_OK
        if args.command == "noise-sweep":
            cmd_noise_sweep(config)
            return EXIT_OK
        if args.command == "bound-check":
            _, status = cmd_bound_check(config)
            return status
        if args.command == "oracle-check":
            _, status = cmd_oracle_check(config)
            return status
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""Figure rendering for CLI outputs: one PNG alongside each table.

Every renderer takes the row dicts a command produced and draws the curves
a plotting tool would extract from the CSV; rendering is optional and never
alters the delimited output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render_rows"]

_METRIC_STYLE = {
    "sliced_cramer": dict(color="tab:blue", marker="o"),
    "sliced_wasserstein": dict(color="tab:orange", marker="s"),
    "lebesgue": dict(color="tab:green", marker="^"),
    "cramer": dict(color="tab:blue", marker="o"),
    "wasserstein": dict(color="tab:orange", marker="s"),
}


def _group(rows, keys):
    seen = {}
    for row in rows:
        seen.setdefault(tuple(row[k] for k in keys), []).append(row)
    return seen


def render_rows(rows: list[dict], command: str, path) -> None:
    """Dispatch on the command kind and write one PNG."""
    if command == "deform-sweep":
        _render_sweep(rows, path, value_key="dist_to_target")
    elif command == "noise-sweep":
        _render_noise(rows, path)
    elif command == "bound-check":
        _render_bounds(rows, path)
    elif command in ("dist", "oracle-check"):
        _render_bars(rows, path, command)
    else:
        raise ValueError(f"no renderer for command {command!r}")
    plt.close("all")


def _render_sweep(rows, path, value_key):
    ps = sorted({row["p"] for row in rows})
    fig, axes = plt.subplots(1, len(ps), figsize=(4.2 * len(ps), 3.4), squeeze=False)
    for ax, p in zip(axes[0], ps):
        for (metric,), grp in _group([r for r in rows if r["p"] == p], ["metric"]).items():
            deltas = [r["delta"] for r in grp]
            vals = [r[value_key] for r in grp]
            ax.plot(deltas, vals, label=metric, **_METRIC_STYLE.get(metric, {}), markersize=3)
            bounds = [r.get("bound") for r in grp]
            if metric == "sliced_cramer" and all(b not in (None, "") for b in bounds):
                ax.plot(deltas, [r["dist_to_source"] for r in grp], ls=":", color="tab:blue",
                        label="sliced_cramer self")
                ax.plot(deltas, bounds, ls="--", color="k", lw=1, label="bound")
        ax.set_xlabel("deformation parameter")
        ax.set_title(f"p = {p:g}")
        ax.legend(fontsize=7)
    axes[0][0].set_ylabel("distance")
    fig.tight_layout()
    fig.savefig(path, dpi=130)


def _render_noise(rows, path):
    ps = sorted({row["p"] for row in rows})
    metrics = sorted({row["metric"] for row in rows})
    fig, axes = plt.subplots(len(metrics), len(ps), figsize=(4.2 * len(ps), 3.2 * len(metrics)),
                             squeeze=False)
    for i, metric in enumerate(metrics):
        for j, p in enumerate(ps):
            ax = axes[i][j]
            sel = [r for r in rows if r["p"] == p and r["metric"] == metric]
            for (sigma,), grp in sorted(_group(sel, ["sigma"]).items()):
                ax.plot([r["delta"] for r in grp], [r["mean_dist"] for r in grp],
                        label=f"sigma={sigma:g}", marker=".", markersize=3)
            ax.set_title(f"{metric}, p = {p:g}", fontsize=9)
            ax.set_xlabel("deformation parameter")
            ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=130)


def _render_bounds(rows, path):
    fig, ax = plt.subplots(figsize=(7, 3.6))
    labels = sorted({(r["theorem"], r["p"]) for r in rows})
    for theorem, p in labels:
        sel = [r for r in rows if r["theorem"] == theorem and r["p"] == p]
        ax.plot([r["delta"] for r in sel], [r["margin"] for r in sel],
                marker=".", markersize=3, label=f"{theorem} p={p:g}")
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("deformation parameter")
    ax.set_ylabel("relative margin (rhs - lhs)/rhs")
    ax.legend(fontsize=6, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=130)


def _render_bars(rows, path, command):
    fig, ax = plt.subplots(figsize=(max(6, 0.45 * len(rows)), 3.4))
    if command == "dist":
        labels = [f"{r['metric']}\np={r['p']:g}" for r in rows]
        vals = [r["value"] for r in rows]
        ylabel = "distance"
    else:
        labels = [r["check"] for r in rows]
        vals = [max(r["discrepancy"], 1e-18) for r in rows]
        ax.set_yscale("log")
        ylabel = "discrepancy"
    ax.bar(np.arange(len(rows)), vals, color="tab:blue")
    ax.set_xticks(np.arange(len(rows)))
    ax.set_xticklabels(labels, fontsize=6, rotation=45, ha="right")
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(path, dpi=130)

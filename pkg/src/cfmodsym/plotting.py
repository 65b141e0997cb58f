"""Byte-stable SVG figures for CLI reports."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "cfmodsym"
matplotlib.rcParams["svg.fonttype"] = "path"


class EmptyReport(ValueError):
    """The report holds nothing to draw; no file is written."""


class UnknownSchema(ValueError):
    pass


def _save(fig, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return path


def clt_histogram(report: dict, path: Path) -> Path:
    """Standardized histogram against the normal density."""
    hist = report.get("histogram") or []
    if not hist:
        raise EmptyReport("CLT report has no histogram")
    left = np.array([h["bin_left"] for h in hist])
    right = np.array([h["bin_right"] for h in hist])
    cnt = np.array([h["count"] for h in hist])
    dens = cnt / (cnt.sum() * (right - left))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(left, dens, width=right - left, align="edge", color="0.75", edgecolor="0.4", linewidth=0.3)
    z = np.linspace(left.min(), right.max(), 400)
    ax.plot(z, np.exp(-z * z / 2) / math.sqrt(2 * math.pi), color="C3")
    ax.set_xlabel("standardized value")
    ax.set_ylabel("density")
    ax.set_title(f"M = {report.get('M')}, KS = {report.get('ks', float('nan')):.4f}")
    return _save(fig, path)


def variance_scatter(report: dict, path: Path) -> Path:
    Ms, var = report.get("M") or [], report.get("variance") or []
    if not Ms:
        raise EmptyReport("variance-fit report has no points")
    x = np.log(np.asarray(Ms, dtype=float))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(x, var, "o", color="C0")
    ax.plot(x, report["C"] * x + report["D"], color="C3")
    ax.set_xlabel("log M")
    ax.set_ylabel("variance")
    ax.annotate(f"C = {report['C']:.4f}, R^2 = {report['R2']:.4f}", (0.05, 0.9), xycoords="axes fraction")
    return _save(fig, path)


def deviation_plot(rows: list[dict], path: Path, key: str = "max_deviation") -> Path:
    """Deviation against M on log axes."""
    rows = [r for r in rows if r.get(key) is not None and r.get(key) > 0]
    if not rows:
        raise EmptyReport("no deviations to plot")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog([r["M"] for r in rows], [r[key] for r in rows], "o-", color="C0")
    ax.set_xlabel("M")
    ax.set_ylabel(key.replace("_", " "))
    return _save(fig, path)


def sweep_plot(rows: list[dict], path: Path, x: str, y: str) -> Path:
    if not rows:
        raise EmptyReport("empty sweep")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([r[x] for r in rows], [r[y] for r in rows], "o-", color="C0")
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    return _save(fig, path)


def plot(report: dict, outdir: Path) -> list[Path]:
    """Dispatch on the report's ``schema`` field."""
    schema = report.get("schema")
    outdir = Path(outdir)
    if schema == "clt":
        runs = report.get("runs") or []
        if not runs:
            raise EmptyReport("CLT report has no runs")
        out = [clt_histogram(runs[-1], outdir / "histogram.svg")]
        out.append(deviation_plot([{"M": r["M"], "ks": r.get("ks")} for r in runs], outdir / "ks.svg", "ks"))
        return out
    if schema == "variance-fit":
        return [variance_scatter(report.get("fit") or {}, outdir / "variance.svg")]
    if schema in ("residual", "symbols-residual"):
        return [deviation_plot(report.get("runs") or [], outdir / "deviation.svg")]
    if schema == "spectral" and report.get("sweep"):
        return [sweep_plot(report["sweep"], outdir / "sweep.svg", "s", "lambda")]
    if schema in ("spectral", "s0", "key-relation", "noncorrelation", "symbols-extract",
                  "symbols-eval", "symbols-survey", "cosets-word", "cosets-laws"):
        return []
    raise UnknownSchema(f"no plot for schema {schema!r}")

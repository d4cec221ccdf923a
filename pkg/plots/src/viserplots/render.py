"""Three-panel summary figures from benchmark CSV logs.

The input contract is the benchmark CSV schema (header must match
``CSV_HEADER`` exactly).  This package never runs the solver itself; it only
consumes the CSV files the solver toolkit writes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

CSV_HEADER = ["kind", "size_param", "total_entries", "p_v", "p_e",
              "payoff_v", "payoff_e", "analytic_v", "analytic_e",
              "time_victim_s", "time_exploiter_s"]

X_LABELS = {"block": "blocks r", "random": "actions per player n"}


class SchemaError(ValueError):
    """CSV file does not match the benchmark schema."""


@dataclass
class Series:
    """Parsed CSV columns, sorted by size parameter."""
    size: np.ndarray
    entries: np.ndarray
    p_v: np.ndarray
    p_e: np.ndarray
    payoff_v: np.ndarray
    payoff_e: np.ndarray
    analytic_v: np.ndarray  # NaN where the field was empty
    analytic_e: np.ndarray
    time_v: np.ndarray
    time_e: np.ndarray


def read_series(csv_path) -> Series:
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{csv_path}: empty file, expected a header row")
        if header != CSV_HEADER:
            raise SchemaError(f"{csv_path}: header {header!r} does not match "
                              f"the benchmark schema")
        records = list(reader)
    if any(len(rec) != len(CSV_HEADER) for rec in records):
        raise SchemaError(f"{csv_path}: row width does not match the header")

    def column(i, empty_ok=False):
        out = []
        for rec in records:
            if rec[i] == "" and empty_ok:
                out.append(np.nan)
            else:
                try:
                    out.append(float(rec[i]))
                except ValueError:
                    raise SchemaError(
                        f"{csv_path}: non-numeric value {rec[i]!r} "
                        f"in column {CSV_HEADER[i]}")
        return np.array(out, dtype=float)

    order = np.argsort(column(1), kind="stable")
    return Series(*(column(i, empty_ok=i in (7, 8))[order]
                    for i in range(1, len(CSV_HEADER))))


def _payoff_panel(ax, series, x_label, baseline, payoff, analytic, who):
    ax.plot(series.size, baseline, "o-", color="tab:gray", label="baseline")
    ax.plot(series.size, payoff, "s--", color="tab:blue", label="payoff")
    if analytic.size and np.all(np.isfinite(analytic)):
        ax.plot(series.size, analytic, ":", color="tab:red", label="analytic")
    ax.set_xlabel(x_label)
    ax.set_ylabel(f"{who} value")
    ax.set_title(who)
    if series.size.size:
        ax.legend()


def build_figure(series: Series, kind: str):
    x_label = X_LABELS[kind]
    fig, axes = plt.subplots(1, 3, figsize=(12.0, 4.0), layout="constrained")
    _payoff_panel(axes[0], series, x_label, series.p_v, series.payoff_v,
                  series.analytic_v, "victim")
    _payoff_panel(axes[1], series, x_label, series.p_e, series.payoff_e,
                  series.analytic_e, "exploiter")
    order = np.argsort(series.entries, kind="stable")
    axes[2].plot(series.entries[order], series.time_v[order], "o-",
                 color="tab:blue", label="victim")
    axes[2].plot(series.entries[order], series.time_e[order], "s--",
                 color="tab:orange", label="exploiter")
    axes[2].set_xlabel("payoff entries")
    axes[2].set_ylabel("solve time (s)")
    axes[2].set_title("runtime")
    if series.entries.size:
        axes[2].legend()
    return fig


def render(csv_path, out_path, kind: str) -> None:
    if kind not in X_LABELS:
        raise ValueError(f"unknown figure kind {kind!r}")
    series = read_series(csv_path)
    fig = build_figure(series, kind)
    try:
        # Drop the writer's Software tag so identical inputs give
        # byte-identical images.
        fig.savefig(out_path, dpi=150, metadata={"Software": None})
    finally:
        plt.close(fig)

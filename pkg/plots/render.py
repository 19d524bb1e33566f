#!/usr/bin/env python3
"""Render simulation trace CSVs as queue-size time-series figures.

Consumes the simulator's trace schema (slot,S,Q_0,...,Q_{M-1},served_total)
and draws S versus slot for one or more traces on a single axis. With
--running-mean, the cumulative average of S is overlaid as the long-run
mean-queue estimator. This layer never recomputes simulation quantities;
the CSV is the single source of truth.

Usage:
    python3 plots/render.py --trace fig5.csv [--trace fig6.csv] \
        --out fig.png [--running-mean] [--label NAME ...]
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

REQUIRED_COLUMNS = ("slot", "S")


class TraceError(ValueError):
    pass


@dataclass
class FigureJob:
    traces: list[Path]
    out: Path
    labels: list[str] = field(default_factory=list)
    running_mean: bool = False


def load_trace(path: Path) -> tuple[np.ndarray, np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in REQUIRED_COLUMNS:
            if col not in header:
                raise TraceError(f"{path}: missing column {col!r}")
        slots, s_vals = [], []
        for row in reader:
            slots.append(int(row["slot"]))
            s_vals.append(float(row["S"]))
    if not slots:
        raise TraceError(f"{path}: no data rows")
    return np.asarray(slots), np.asarray(s_vals)


def running_mean(values: np.ndarray) -> np.ndarray:
    return np.cumsum(values) / np.arange(1, values.size + 1)


def render(job: FigureJob) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(8, 5))
    labels = list(job.labels)
    while len(labels) < len(job.traces):
        labels.append(Path(job.traces[len(labels)]).stem)
    for path, label in zip(job.traces, labels):
        slots, s_vals = load_trace(Path(path))
        ax.plot(slots, s_vals, label=f"S(n) [{label}]", linewidth=1.0)
        if job.running_mean:
            ax.plot(
                slots,
                running_mean(s_vals),
                label=f"running mean [{label}]",
                linewidth=1.5,
                linestyle="--",
            )
    ax.set_xlabel("time-slot n")
    ax.set_ylabel("average queue size S(n)")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trace", action="append", required=True, help="trace CSV (repeatable)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--label", action="append", default=[], help="legend label per trace")
    parser.add_argument("--running-mean", action="store_true", help="overlay the cumulative mean of S")
    args = parser.parse_args(argv)
    job = FigureJob(
        traces=[Path(t) for t in args.trace],
        out=Path(args.out),
        labels=args.label,
        running_mean=args.running_mean,
    )
    try:
        fig = render(job)
    except TraceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    fig.savefig(job.out, dpi=120)
    plt.close(fig)
    print(f"wrote {job.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""File reports: delimited outcome tables and matplotlib charts.

Used by the CLI's report paths; figures render headlessly (Agg) straight
to files next to the CSV output.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .measure import FrequencyTable, JointDistribution, OutcomeDistribution


def write_counts_csv(table: FrequencyTable, path) -> Path:
    """One row per observed outcome tuple: answers, count, frequency."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"answer_{name}" for name in table.questions]
                        + ["count", "frequency"])
        for values, count in table.counts:
            writer.writerow(
                [f"{v:.12g}" for v in values] + [count, f"{count / table.trials:.8f}"]
            )
    return path


def _outcome_label(values) -> str:
    return ", ".join(f"{round(v, 6) + 0.0:+.3g}" for v in values)


def render_frequency_chart(table: FrequencyTable, path, title: str | None = None) -> Path:
    """Bar chart of joint outcome frequencies."""
    path = Path(path)
    labels = [_outcome_label(values) for values, _ in table.counts]
    freqs = [count / table.trials for _, count in table.counts]
    width = max(6.0, 0.9 * len(labels) + 2.0)
    fig, ax = plt.subplots(figsize=(width, 4.2))
    ax.bar(range(len(freqs)), freqs, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("frequency")
    ax.set_xlabel("outcomes (" + ", ".join(table.questions) + ")")
    ax.set_title(title or f"{table.trials} trials, seed {table.seed}")
    ax.set_ylim(0, 1)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_distribution_chart(
    dist: OutcomeDistribution | JointDistribution, path, title: str | None = None
) -> Path:
    """Bar chart of a single peeked answer distribution."""
    path = Path(path)
    if isinstance(dist, JointDistribution):
        labels = [_outcome_label(o.values) for o in dist.outcomes]
    else:
        labels = [f"{o.eigenvalue:+.4g}" for o in dist.outcomes]
    probs = dist.probabilities()
    fig, ax = plt.subplots(figsize=(max(4.5, 1.1 * len(labels) + 2.0), 4.0))
    ax.bar(range(len(probs)), probs, color="#6a9a58")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, fontsize=9)
    ax.set_ylabel("probability")
    ax.set_xlabel("answer")
    ax.set_ylim(0, 1)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_simulation_report(table: FrequencyTable, directory) -> dict:
    """CSV plus frequency figure in one directory; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = write_counts_csv(table, directory / "outcomes.csv")
    png_path = render_frequency_chart(table, directory / "frequencies.png")
    return {"csv": str(csv_path), "figure": str(png_path)}

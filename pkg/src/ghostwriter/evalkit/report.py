"""Evaluation reports: metrics JSON, per-case CSV, and rendered figures."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _summary_figure(metrics: dict, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    names = [f"hit@{metrics['k']}", "MRR"]
    values = [metrics["hit_at_k"], metrics["mrr"]]
    bars = ax.bar(names, values, color=["#4878a8", "#e1812c"])
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel("score")
    ax.set_title(f"Retrieval metrics over {metrics['cases']} cases")
    for bar, value in zip(bars, values):
        ax.text(bar.get_x() + bar.get_width() / 2, value + 0.02, f"{value:.3f}",
                ha="center", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _per_case_figure(metrics: dict, path: Path) -> None:
    per_case = metrics["per_case"]
    fig, ax = plt.subplots(figsize=(max(4.5, 0.45 * len(per_case)), 3.2))
    positions = range(len(per_case))
    values = [case["reciprocal_rank"] for case in per_case]
    colors = ["#4878a8" if case["hit"] else "#c44e52" for case in per_case]
    ax.bar(positions, values, color=colors)
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("case")
    ax.set_ylabel("reciprocal rank")
    ax.set_title("Per-case reciprocal rank")
    ax.set_xticks(list(positions))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(metrics: dict, out_dir: str | Path) -> list[Path]:
    """Write metrics.json, per_case.csv and two PNG figures; returns the
    paths written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    metrics_path = out_dir / "metrics.json"
    metrics_path.write_text(json.dumps(metrics, indent=1), encoding="utf-8")

    csv_path = out_dir / "per_case.csv"
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["question", "hit", "rank", "reciprocal_rank", "retrieved_sources"])
        for case in metrics["per_case"]:
            writer.writerow(
                [
                    case["question"],
                    int(case["hit"]),
                    case["rank"],
                    f"{case['reciprocal_rank']:.6f}",
                    ";".join(case["retrieved_sources"]),
                ]
            )

    summary_path = out_dir / "metrics.png"
    _summary_figure(metrics, summary_path)
    per_case_path = out_dir / "per_case.png"
    _per_case_figure(metrics, per_case_path)
    return [metrics_path, csv_path, summary_path, per_case_path]

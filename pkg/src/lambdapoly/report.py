"""File renderings of a verification report: delimited text plus a figure.

The CSV carries one row per property with the aggregate verdict counts.
The figure is a stacked horizontal bar chart of the same counts so a run
can be eyeballed without parsing anything.  Both artifacts are derived
purely from the report, so identical runs produce identical CSV bytes.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from lambdapoly.verify import PropertyReport

CSV_NAME = "report.csv"
FIGURE_NAME = "report.png"

_CSV_FIELDS = ("property", "checked", "passed", "failed", "skipped", "counterexamples")


def write_csv(report: PropertyReport, path: Path) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(_CSV_FIELDS)
        for pid in report.properties:
            st = report.stats[pid]
            writer.writerow(
                [pid, st.checked, st.passed, st.failed, st.skipped, len(st.counterexamples)]
            )


def write_figure(report: PropertyReport, path: Path) -> None:
    ids = list(report.properties)
    passed = [report.stats[pid].passed for pid in ids]
    failed = [report.stats[pid].failed for pid in ids]
    skipped = [report.stats[pid].skipped for pid in ids]

    height = max(3.0, 0.35 * len(ids) + 1.5)
    fig, ax = plt.subplots(figsize=(9, height))
    pos = range(len(ids))
    ax.barh(pos, passed, color="#2a9d2a", label="passed")
    ax.barh(pos, failed, left=passed, color="#d62728", label="failed")
    ax.barh(
        pos,
        skipped,
        left=[p + f for p, f in zip(passed, failed)],
        color="#bbbbbb",
        label="inapplicable",
    )
    ax.set_yticks(list(pos), labels=ids)
    ax.invert_yaxis()
    ax.set_xlabel("grid points")
    ax.set_title(f"Property suite over {report.points} points (seed {report.seed})")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report_files(report: PropertyReport, directory: Path | str) -> tuple[Path, Path]:
    """Render both artifacts into directory, creating it if needed."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / CSV_NAME
    figure_path = out / FIGURE_NAME
    write_csv(report, csv_path)
    write_figure(report, figure_path)
    return csv_path, figure_path

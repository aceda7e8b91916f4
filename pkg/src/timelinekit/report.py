"""Report rendering: aligned text tables, machine-readable JSON, delimited
CSV, and matplotlib figures written next to the delimited output."""

from __future__ import annotations

import csv
from pathlib import Path

from .metrics import LABELS, AgreementReport, CorpusStats, EvalReport, round2
from .relgen import RelationLabel


def stats_to_json(stats: CorpusStats) -> dict:
    return {
        "documents": stats.documents,
        "possible_pairs": stats.possible_pairs,
        "non_vague_pairs": stats.non_vague_pairs,
        "non_vague_percentage": round2(stats.non_vague_percentage),
        "non_verb_involved_percentage": round2(stats.non_verb_involved_percentage),
        "average_window": round2(stats.average_window),
        "label_distribution": {
            label.value: round2(stats.label_distribution[label]) for label in LABELS
        },
        "window_histogram": [
            {"window": w, "count": c} for w, c in sorted(stats.window_histogram.items())
        ],
    }


def format_stats(stats: CorpusStats) -> str:
    lines = [
        "Corpus statistics",
        f"  documents                    {stats.documents}",
        f"  possible pairs               {stats.possible_pairs}",
        f"  non-vague pairs              {stats.non_vague_pairs} "
        f"({round2(stats.non_vague_percentage):.2f}%)",
        f"  non-verb involved            {round2(stats.non_verb_involved_percentage):.2f}%",
        f"  average window               {round2(stats.average_window):.2f}",
        "",
        "Label distribution (%)",
    ]
    for label in LABELS:
        lines.append(f"  {label.value:<8} {round2(stats.label_distribution[label]):>8.2f}")
    lines.append("")
    lines.append("Window histogram")
    for window, count in sorted(stats.window_histogram.items()):
        lines.append(f"  {window:>4} {count:>8}")
    return "\n".join(lines) + "\n"


def agreement_to_json(report: AgreementReport) -> dict:
    matrix = report.matrix
    return {
        "event_f1": None if report.event_f1 is None else round2(report.event_f1),
        "relation_micro_f1": round2(report.relation_micro_f1),
        "kappa": round(report.kappa, 4),
        "matrix": {
            "labels": [label.value for label in matrix.labels],
            "counts": [list(row) for row in matrix.counts],
            "row_totals": list(matrix.row_totals),
            "col_totals": list(matrix.col_totals),
            "total": matrix.total,
        },
    }


def format_agreement(report: AgreementReport) -> str:
    lines = ["Inter-annotator agreement"]
    if report.event_f1 is not None:
        lines.append(f"  event F1            {round2(report.event_f1):.2f}")
    lines.append(f"  relation micro F1   {round2(report.relation_micro_f1):.2f}")
    lines.append(f"  Cohen's kappa       {report.kappa:.4f}")
    lines.append("")
    lines.append("Contingency matrix (rows: annotator 1, columns: annotator 2)")
    names = [label.value for label in report.matrix.labels]
    header = "  " + f"{'':<8}" + "".join(f"{n:>8}" for n in names) + f"{'total':>8}"
    lines.append(header)
    for name, row, total in zip(names, report.matrix.counts, report.matrix.row_totals):
        lines.append("  " + f"{name:<8}" + "".join(f"{c:>8}" for c in row) + f"{total:>8}")
    lines.append(
        "  " + f"{'total':<8}"
        + "".join(f"{c:>8}" for c in report.matrix.col_totals)
        + f"{report.matrix.total:>8}"
    )
    return "\n".join(lines) + "\n"


def eval_to_json(report: EvalReport) -> dict:
    return {
        "per_label": {
            label.value: {
                "precision": round2(score.precision),
                "recall": round2(score.recall),
                "f1": round2(score.f1),
                "support": score.support,
            }
            for label, score in report.per_label.items()
        },
        "micro_f1": round2(report.micro_f1),
        "scored_pairs": report.scored_pairs,
    }


def format_eval(report: EvalReport) -> str:
    lines = [
        "Evaluation (vague pairs discarded)",
        f"  {'label':<8}{'P':>8}{'R':>8}{'F1':>8}{'support':>9}",
    ]
    for label, score in report.per_label.items():
        lines.append(
            f"  {label.value:<8}{round2(score.precision):>8.2f}{round2(score.recall):>8.2f}"
            f"{round2(score.f1):>8.2f}{score.support:>9}"
        )
    lines.append(f"  micro F1 {round2(report.micro_f1):.2f} over {report.scored_pairs} pairs")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# file emission (JSON + CSV + figures side by side)


def _figure_axes():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_stats_report(stats: CorpusStats, outdir: str | Path) -> list[Path]:
    """Write stats.json, stats.csv, and the two figures into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    from .corpus_io import dumps_canonical

    written = []
    json_path = outdir / "stats.json"
    json_path.write_text(dumps_canonical(stats_to_json(stats)), encoding="utf-8")
    written.append(json_path)

    csv_path = outdir / "stats.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["metric", "value"])
        writer.writerow(["documents", stats.documents])
        writer.writerow(["possible_pairs", stats.possible_pairs])
        writer.writerow(["non_vague_pairs", stats.non_vague_pairs])
        writer.writerow(["non_vague_percentage", f"{round2(stats.non_vague_percentage):.2f}"])
        writer.writerow([
            "non_verb_involved_percentage",
            f"{round2(stats.non_verb_involved_percentage):.2f}",
        ])
        writer.writerow(["average_window", f"{round2(stats.average_window):.2f}"])
        for label in LABELS:
            writer.writerow([
                f"label_{label.value}", f"{round2(stats.label_distribution[label]):.2f}"
            ])
        for window, count in sorted(stats.window_histogram.items()):
            writer.writerow([f"window_{window}", count])
    written.append(csv_path)

    plt = _figure_axes()
    fig, ax = plt.subplots(figsize=(5, 3.2))
    names = [label.value for label in LABELS]
    values = [round2(stats.label_distribution[label]) for label in LABELS]
    bars = ax.bar(names, values, color="#4878a8")
    ax.bar_label(bars, fmt="%.2f")
    ax.set_ylabel("% of pairs")
    ax.set_title("Label distribution")
    fig.tight_layout()
    dist_path = outdir / "label_distribution.png"
    fig.savefig(dist_path, dpi=150)
    plt.close(fig)
    written.append(dist_path)

    fig, ax = plt.subplots(figsize=(5, 3.2))
    windows = sorted(stats.window_histogram)
    ax.bar(windows, [stats.window_histogram[w] for w in windows], color="#4878a8")
    ax.set_xlabel("relation window (sentences)")
    ax.set_ylabel("pairs")
    ax.set_title("Relation window histogram")
    fig.tight_layout()
    hist_path = outdir / "window_histogram.png"
    fig.savefig(hist_path, dpi=150)
    plt.close(fig)
    written.append(hist_path)
    return written


def save_agreement_report(report: AgreementReport, outdir: str | Path) -> list[Path]:
    """Write agreement.json, contingency.csv, and the matrix heatmap."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    from .corpus_io import dumps_canonical

    written = []
    json_path = outdir / "agreement.json"
    json_path.write_text(dumps_canonical(agreement_to_json(report)), encoding="utf-8")
    written.append(json_path)

    names = [label.value for label in report.matrix.labels]
    csv_path = outdir / "contingency.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow([""] + names + ["total"])
        for name, row, total in zip(names, report.matrix.counts, report.matrix.row_totals):
            writer.writerow([name] + list(row) + [total])
        writer.writerow(["total"] + list(report.matrix.col_totals) + [report.matrix.total])
    written.append(csv_path)

    plt = _figure_axes()
    fig, ax = plt.subplots(figsize=(4.6, 4))
    image = ax.imshow(report.matrix.counts, cmap="Blues")
    ax.set_xticks(range(4), names)
    ax.set_yticks(range(4), names)
    ax.set_xlabel("annotator 2")
    ax.set_ylabel("annotator 1")
    for i in range(4):
        for j in range(4):
            count = report.matrix.counts[i][j]
            ax.text(j, i, str(count), ha="center", va="center",
                    color="white" if count > report.matrix.total / 8 else "black")
    fig.colorbar(image, ax=ax, shrink=0.8)
    ax.set_title(f"kappa = {report.kappa:.4f}")
    fig.tight_layout()
    png_path = outdir / "contingency.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    written.append(png_path)
    return written


def save_eval_report(report: EvalReport, outdir: str | Path) -> list[Path]:
    """Write eval.json, eval.csv, and a per-label F1 bar chart."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    from .corpus_io import dumps_canonical

    written = []
    json_path = outdir / "eval.json"
    json_path.write_text(dumps_canonical(eval_to_json(report)), encoding="utf-8")
    written.append(json_path)

    csv_path = outdir / "eval.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["label", "precision", "recall", "f1", "support"])
        for label, score in report.per_label.items():
            writer.writerow([
                label.value, f"{round2(score.precision):.2f}", f"{round2(score.recall):.2f}",
                f"{round2(score.f1):.2f}", score.support,
            ])
        writer.writerow(["micro", "", "", f"{round2(report.micro_f1):.2f}", report.scored_pairs])
    written.append(csv_path)

    plt = _figure_axes()
    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    names = [label.value for label in report.per_label]
    values = [round2(score.f1) for score in report.per_label.values()]
    bars = ax.bar(names, values, color="#4878a8")
    ax.bar_label(bars, fmt="%.2f")
    ax.set_ylabel("F1")
    ax.set_ylim(0, 105)
    ax.set_title(f"Per-label F1 (micro {round2(report.micro_f1):.2f})")
    fig.tight_layout()
    png_path = outdir / "per_label_f1.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    written.append(png_path)
    return written

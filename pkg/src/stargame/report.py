"""Machine-readable run artifacts.

``write_run_report`` dumps one solver run as JSON (schema in the README);
``write_bench_outputs`` writes the benchmark table as tab-separated text
and renders the exploration counts per instance and algorithm as a PNG
next to it.  Wall-clock numbers stay in their own column/line so golden
comparisons can drop them.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

BENCH_COLUMNS = (
    "instance",
    "algo",
    "winner",
    "vertices_explored",
    "edges_popped",
    "reevaluations",
    "postponements",
    "wall_ms",
)


def write_run_report(path, payload: Mapping) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def bench_table(rows: Sequence[Mapping]) -> str:
    lines = ["\t".join(BENCH_COLUMNS)]
    for row in rows:
        lines.append("\t".join(str(row[c]) for c in BENCH_COLUMNS))
    return "\n".join(lines) + "\n"


def render_bench_figure(rows: Sequence[Mapping], path) -> None:
    """One marker-line per algorithm over the benchmark instances."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    instances: list[str] = []
    for row in rows:
        if row["instance"] not in instances:
            instances.append(row["instance"])
    algos: list[str] = []
    for row in rows:
        if row["algo"] not in algos:
            algos.append(row["algo"])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for algo in algos:
        by_instance = {r["instance"]: r["vertices_explored"]
                       for r in rows if r["algo"] == algo}
        ys = [by_instance.get(inst) for inst in instances]
        ax.plot(range(len(instances)), ys, marker="o", label=algo)
    ax.set_xticks(range(len(instances)))
    ax.set_xticklabels(instances, rotation=30, ha="right")
    ax.set_ylabel("vertices explored")
    ax.set_title("exploration per instance")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_bench_outputs(outdir, rows: Sequence[Mapping]) -> tuple[Path, Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    table_path = outdir / "bench.tsv"
    with open(table_path, "w", encoding="utf-8") as fh:
        fh.write(bench_table(rows))
    figure_path = outdir / "bench.png"
    render_bench_figure(rows, figure_path)
    return table_path, figure_path
